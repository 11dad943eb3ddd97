use super::instance::AssignmentInstance;
use crate::network::{build_network, ArcSpec, FlowNetwork};

/// Min-cost view of an assignment instance.
///
/// X node `x` is network node `x`, Y node `y` is `n + y`. Input arc `i` of the
/// network corresponds to edge `i` of the instance.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub net: FlowNetwork,
    /// +1 on X nodes, -1 on Y nodes.
    pub base_excess: Vec<i64>,
    /// Factor applied to every weight.
    pub scale: i64,
}

impl ReducedInstance {
    pub fn n(&self) -> usize {
        self.net.node_count() / 2
    }

    pub fn is_x(&self, v: usize) -> bool {
        v < self.n()
    }
}

/// Scale factor `2n + 1`: every residual cycle has at most `2n` arcs, so a
/// 1-optimal flow with costs in multiples of `2n + 1` is exactly optimal.
pub fn cost_scale(n: usize) -> i64 {
    2 * n as i64 + 1
}

/// Unit-capacity network with cost `-w * scale` on each `x -> y` arc.
pub fn reduce_to_mincost(inst: &AssignmentInstance) -> ReducedInstance {
    let n = inst.n();
    let scale = cost_scale(n);
    let arcs = inst.edges().iter().map(|e| ArcSpec::with_cost(e.x, n + e.y, 1, -e.weight * scale));
    let net = build_network(arcs, 2 * n, 0, 2 * n - 1).expect("instance indices are validated on construction");
    let base_excess = (0..2 * n).map(|v| if v < n { 1 } else { -1 }).collect();
    ReducedInstance { net, base_excess, scale }
}
