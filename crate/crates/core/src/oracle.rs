//! Brute-force references. Nothing here touches the push-relabel or
//! cost-scaling code paths; the only shared piece is [`FlowNetwork`].

use std::collections::VecDeque;

use thiserror::Error;

use crate::assign::AssignmentInstance;
use crate::network::FlowNetwork;

/// Largest instance [`brute_force_assignment`] accepts (9! permutations).
pub const BRUTE_FORCE_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance size {0} exceeds the brute-force limit of {BRUTE_FORCE_MAX_N}")]
    TooLarge(usize),
    #[error("instance has no perfect matching")]
    Infeasible,
}

/// Maximum flow value by shortest augmenting paths.
pub fn edmonds_karp(net: &FlowNetwork) -> i64 {
    let (s, t) = (net.source(), net.sink());
    let mut residual: Vec<i64> = net.arcs().iter().map(|a| a.capacity).collect();
    let mut parent_arc = vec![usize::MAX; net.node_count()];
    let mut value = 0;

    loop {
        parent_arc.fill(usize::MAX);
        let mut seen = vec![false; net.node_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &a in net.out_arcs(v) {
                let w = net.head(a);
                if residual[a] > 0 && !seen[w] {
                    seen[w] = true;
                    parent_arc[w] = a;
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return value;
        }

        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let a = parent_arc[v];
            bottleneck = bottleneck.min(residual[a]);
            v = net.tail(a);
        }
        let mut v = t;
        while v != s {
            let a = parent_arc[v];
            residual[a] -= bottleneck;
            residual[a ^ 1] += bottleneck;
            v = net.tail(a);
        }
        value += bottleneck;
    }
}

/// Optimal assignment by enumerating every permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceAssignment {
    pub weight: i64,
    /// `matching[x]` is the Y node assigned to `x`.
    pub matching: Vec<usize>,
}

/// Exhaustive maximum-weight perfect matching. Among optimal permutations the
/// lexicographically smallest one is returned.
pub fn brute_force_assignment(inst: &AssignmentInstance) -> Result<BruteForceAssignment, OracleError> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    let mut best_edge: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];
    for e in inst.edges() {
        let slot = &mut best_edge[e.x][e.y];
        *slot = Some(slot.map_or(e.weight, |w| w.max(e.weight)));
    }

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<BruteForceAssignment> = None;
    loop {
        let weight = perm
            .iter()
            .enumerate()
            .try_fold(0i64, |acc, (x, &y)| best_edge[x][y].map(|w| acc + w));
        if let Some(weight) = weight {
            if best.as_ref().is_none_or(|b| weight > b.weight) {
                best = Some(BruteForceAssignment { weight, matching: perm.clone() });
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.ok_or(OracleError::Infeasible)
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&v| v > perm[i]).expect("pivot has a larger successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}
