//! Mutable per-arc and per-node solver state, plus the reduced-cost algebra
//! shared by the cost-scaling code.

use crate::network::FlowNetwork;

/// Residual capacities, excesses, heights and prices over a [`FlowNetwork`].
///
/// Max-flow solvers use `height`, the assignment solver uses `price`; both
/// vectors are always sized so either mode can be driven from one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualState {
    pub residual: Vec<i64>,
    pub excess: Vec<i64>,
    pub height: Vec<usize>,
    pub price: Vec<i64>,
}

impl ResidualState {
    /// Zero flow: every residual equals its arc capacity.
    pub fn new(net: &FlowNetwork) -> Self {
        Self {
            residual: net.arcs().iter().map(|a| a.capacity).collect(),
            excess: vec![0; net.node_count()],
            height: vec![0; net.node_count()],
            price: vec![0; net.node_count()],
        }
    }

    /// Moves `delta` units across arc `a` and its mate.
    #[inline]
    pub fn push(&mut self, net: &FlowNetwork, a: usize, delta: i64) {
        let arc = net.arc(a);
        self.residual[a] -= delta;
        self.residual[a ^ 1] += delta;
        self.excess[arc.tail] -= delta;
        self.excess[arc.head] += delta;
    }

    /// Flow carried by arc `a` (negative on the mate of a loaded arc).
    #[inline]
    pub fn flow(&self, net: &FlowNetwork, a: usize) -> i64 {
        net.capacity(a) - self.residual[a]
    }

    /// Net flow entering `v`, recomputed from the residual capacities.
    pub fn net_inflow(&self, net: &FlowNetwork, v: usize) -> i64 {
        net.out_arcs(v).iter().map(|&a| -self.flow(net, a)).sum()
    }

    pub fn total_excess(&self) -> i64 {
        self.excess.iter().sum()
    }
}

/// `c(a) + p(tail) - p(head)`.
#[inline]
pub fn reduced_cost(net: &FlowNetwork, state: &ResidualState, a: usize) -> i64 {
    let arc = net.arc(a);
    arc.cost + state.price[arc.tail] - state.price[arc.head]
}

/// `c(a) - p(head)`; adding `p(tail)` gives [`reduced_cost`].
#[inline]
pub fn part_reduced_cost(net: &FlowNetwork, state: &ResidualState, a: usize) -> i64 {
    let arc = net.arc(a);
    arc.cost - state.price[arc.head]
}

/// True iff every residual arc has reduced cost at least `-eps`.
pub fn is_epsilon_optimal(net: &FlowNetwork, state: &ResidualState, eps: i64) -> bool {
    is_epsilon_optimal_where(net, state, eps, |_| true)
}

/// [`is_epsilon_optimal`] restricted to arcs accepted by `include`.
pub fn is_epsilon_optimal_where<F>(net: &FlowNetwork, state: &ResidualState, eps: i64, include: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..net.arc_count())
        .filter(|&a| state.residual[a] > 0 && include(a))
        .all(|a| reduced_cost(net, state, a) >= -eps)
}

/// Number of arc pairs whose residual sum differs from their capacity sum,
/// or whose residual leaves `[0, pair capacity]`.
pub fn pair_sum_violations(net: &FlowNetwork, residual: &[i64]) -> usize {
    (0..net.arc_count())
        .step_by(2)
        .filter(|&a| {
            let total = net.capacity(a) + net.capacity(a + 1);
            let (r, m) = (residual[a], residual[a + 1]);
            r + m != total || r < 0 || m < 0
        })
        .count()
}

/// Residual arcs `(x, y)` with `h(x) > h(y) + 1`.
pub fn distance_violations(net: &FlowNetwork, state: &ResidualState) -> usize {
    (0..net.arc_count())
        .filter(|&a| state.residual[a] > 0)
        .filter(|&a| {
            let arc = net.arc(a);
            state.height[arc.tail] > state.height[arc.head] + 1
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::build_network;

    fn two_node(cost: i64) -> (FlowNetwork, ResidualState) {
        let net = build_network([(0, 1, 1, cost)], 2, 0, 1).unwrap();
        let state = ResidualState::new(&net);
        (net, state)
    }

    #[test]
    fn reduced_cost_examples() {
        let (net, mut st) = two_node(5);
        st.price = vec![2, 4];
        assert_eq!(reduced_cost(&net, &st, 0), 3);

        let (net, mut st) = two_node(0);
        st.price = vec![9, 9];
        assert_eq!(reduced_cost(&net, &st, 0), 0);

        let (net, mut st) = two_node(-7);
        st.price = vec![0, -7];
        assert_eq!(reduced_cost(&net, &st, 0), 0);
    }

    #[test]
    fn part_reduced_cost_examples() {
        let (net, mut st) = two_node(5);
        st.price = vec![0, 4];
        assert_eq!(part_reduced_cost(&net, &st, 0), 1);
        st.price = vec![3, 0];
        assert_eq!(part_reduced_cost(&net, &st, 0), 5);
        for a in 0..2 {
            let tail = net.tail(a);
            assert_eq!(reduced_cost(&net, &st, a), part_reduced_cost(&net, &st, a) + st.price[tail]);
        }
    }

    #[test]
    fn reverse_reduced_cost_is_negated() {
        let (net, mut st) = two_node(11);
        st.price = vec![-3, 8];
        assert_eq!(reduced_cost(&net, &st, 1), -reduced_cost(&net, &st, 0));
    }

    #[test]
    fn epsilon_optimality_boundary() {
        // Single residual arc 0 -> 1 with c_p = -3 once prices are applied.
        let (net, mut st) = two_node(-3);
        assert!(!is_epsilon_optimal(&net, &st, 2));
        assert!(is_epsilon_optimal(&net, &st, 3));
        st.price = vec![3, 0];
        assert!(is_epsilon_optimal(&net, &st, 0));
        // Mate arc is not residual, so its positive-cost twin is ignored.
        assert_eq!(st.residual[1], 0);
    }

    #[test]
    fn push_conserves_pair_sum_and_total_excess() {
        let net = build_network([(0, 1, 5), (1, 2, 3)], 3, 0, 2).unwrap();
        let mut st = ResidualState::new(&net);
        st.excess[0] = 5;
        st.push(&net, 0, 4);
        st.push(&net, 2, 3);
        assert_eq!(pair_sum_violations(&net, &st.residual), 0);
        assert_eq!(st.total_excess(), 5);
        assert_eq!(st.net_inflow(&net, 2), 3);
        assert_eq!(st.flow(&net, 1), -4);
    }
}
