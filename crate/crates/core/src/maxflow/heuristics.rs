use std::collections::VecDeque;

use crate::network::FlowNetwork;
use crate::residual::ResidualState;

/// Backward BFS from the sink through residual arcs. Every reached node gets
/// its BFS level as height; the source keeps `|V|` and is never expanded.
/// Returns the scanned set for [`gap_relabel`].
pub fn global_relabel(net: &FlowNetwork, state: &mut ResidualState) -> Vec<bool> {
    let (s, t) = (net.source(), net.sink());
    let mut scanned = vec![false; net.node_count()];
    let mut queue = VecDeque::new();
    scanned[t] = true;
    state.height[t] = 0;
    queue.push_back(t);

    while let Some(x) = queue.pop_front() {
        let level = state.height[x] + 1;
        // (y, x) is residual iff the mate of an out-arc (x, y) has capacity left.
        for &a in net.out_arcs(x) {
            let y = net.head(a);
            if scanned[y] || y == s || state.residual[a ^ 1] <= 0 {
                continue;
            }
            state.height[y] = level;
            scanned[y] = true;
            queue.push_back(y);
        }
    }
    state.height[s] = net.node_count();
    scanned
}

/// Lifts every node the last BFS missed (except the source) to `|V|`.
pub fn gap_relabel(net: &FlowNetwork, state: &mut ResidualState, scanned: &[bool]) {
    let n = net.node_count();
    for v in (0..n).filter(|&v| !scanned[v] && v != net.source()) {
        state.height[v] = n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxflow::init_preflow;
    use crate::network::build_network;
    use crate::residual::distance_violations;

    #[test]
    fn bfs_levels_from_sink() {
        // a=0 -> t=1 is the only arc; s=2 is isolated.
        let net = build_network([(0, 1, 4)], 3, 2, 1).unwrap();
        let mut st = ResidualState::new(&net);
        let scanned = global_relabel(&net, &mut st);
        assert_eq!(st.height[1], 0);
        assert_eq!(st.height[0], 1);
        assert_eq!(scanned, vec![true, true, false]);
        assert_eq!(st.height[2], 3);
    }

    #[test]
    fn unreachable_node_is_not_scanned_and_gap_lifts_it() {
        // s=0 -> a=1 -> t=2, plus isolated u=3.
        let net = build_network([(0, 1, 3), (1, 2, 2)], 4, 0, 2).unwrap();
        let mut st = ResidualState::new(&net);
        init_preflow(&net, &mut st);
        let scanned = global_relabel(&net, &mut st);
        assert!(!scanned[3]);
        assert_eq!(st.height[1], 1);
        gap_relabel(&net, &mut st, &scanned);
        assert_eq!(st.height[3], 4);
        assert_eq!(st.height[0], 4);
        assert_eq!(distance_violations(&net, &st), 0);
    }

    #[test]
    fn gap_is_a_no_op_when_everything_is_scanned() {
        let net = build_network([(0, 1, 3), (1, 2, 2)], 3, 0, 2).unwrap();
        let mut st = ResidualState::new(&net);
        let scanned = global_relabel(&net, &mut st);
        let before = st.height.clone();
        gap_relabel(&net, &mut st, &scanned);
        assert_eq!(st.height, before);
    }

    #[test]
    fn saturated_arc_blocks_the_search() {
        let net = build_network([(0, 1, 1), (1, 2, 1)], 3, 0, 2).unwrap();
        let mut st = ResidualState::new(&net);
        st.push(&net, 2, 1);
        let scanned = global_relabel(&net, &mut st);
        assert!(!scanned[1]);
    }
}
