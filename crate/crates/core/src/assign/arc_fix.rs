use crate::network::FlowNetwork;
use crate::residual::{reduced_cost, ResidualState};

/// Flags both arcs of every pair whose residual direction has reduced cost
/// above `2 * size * eps`. Returns the number of newly fixed pairs.
pub fn arc_fix(net: &FlowNetwork, state: &ResidualState, fixed: &mut [bool], eps: i64, size: usize) -> usize {
    let threshold = 2 * size as i64 * eps;
    let mut count = 0;
    for a in 0..net.arc_count() {
        if fixed[a] || state.residual[a] <= 0 || state.residual[a ^ 1] != 0 {
            continue;
        }
        if reduced_cost(net, state, a) > threshold {
            fixed[a] = true;
            fixed[a ^ 1] = true;
            count += 1;
        }
    }
    count
}
