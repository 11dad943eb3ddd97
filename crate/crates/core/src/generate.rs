//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::assign::AssignmentInstance;
use crate::network::{build_network, ArcSpec, FlowNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("max-flow instance needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("max-flow instance needs at least 1 arc")]
    NoArcs,
    #[error("assignment instance needs n >= 1")]
    EmptyAssignment,
    #[error("degree {degree} outside 1..={n}")]
    BadDegree { degree: usize, n: usize },
    #[error("max value must be {min} or more, got {got}")]
    BadMaxValue { min: i64, got: i64 },
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `nodes` nodes, exactly `arcs` arcs, capacities in `1..=max_capacity`.
/// Node 0 is the source and node `nodes - 1` the sink; a random simple path
/// joins them so the flow is positive.
pub fn generate_maxflow(nodes: usize, arcs: usize, max_capacity: i64, seed: u64) -> Result<FlowNetwork, GenerateError> {
    if nodes < 2 {
        return Err(GenerateError::TooFewNodes(nodes));
    }
    if arcs == 0 {
        return Err(GenerateError::NoArcs);
    }
    if max_capacity < 1 {
        return Err(GenerateError::BadMaxValue { min: 1, got: max_capacity });
    }
    let mut rng = rng(seed);
    let (s, t) = (0, nodes - 1);

    let mut inner: Vec<usize> = (1..t).collect();
    inner.shuffle(&mut rng);
    let hops = rng.gen_range(0..=inner.len().min(arcs - 1));
    let mut path = vec![s];
    path.extend_from_slice(&inner[..hops]);
    path.push(t);

    let mut specs: Vec<ArcSpec> = path
        .windows(2)
        .map(|w| ArcSpec::new(w[0], w[1], rng.gen_range(1..=max_capacity)))
        .collect();
    while specs.len() < arcs {
        let u = rng.gen_range(0..nodes);
        let v = rng.gen_range(0..nodes);
        if u != v {
            specs.push(ArcSpec::new(u, v, rng.gen_range(1..=max_capacity)));
        }
    }
    Ok(build_network(specs, nodes, s, t).expect("generated arcs are in range"))
}

/// Complete `n x n` instance with weights uniform in `0..=max_weight`.
pub fn generate_assignment(n: usize, max_weight: i64, seed: u64) -> Result<AssignmentInstance, GenerateError> {
    if n == 0 {
        return Err(GenerateError::EmptyAssignment);
    }
    if max_weight < 0 {
        return Err(GenerateError::BadMaxValue { min: 0, got: max_weight });
    }
    let mut rng = rng(seed);
    let weights: Vec<Vec<i64>> =
        (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..=max_weight)).collect()).collect();
    Ok(AssignmentInstance::complete(&weights).expect("square matrix"))
}

/// Sparse instance where each X node has `degree` distinct neighbours, one of
/// them taken from a hidden permutation so a perfect matching exists.
pub fn generate_sparse_assignment(
    n: usize,
    degree: usize,
    max_weight: i64,
    seed: u64,
) -> Result<AssignmentInstance, GenerateError> {
    if n == 0 {
        return Err(GenerateError::EmptyAssignment);
    }
    if degree == 0 || degree > n {
        return Err(GenerateError::BadDegree { degree, n });
    }
    if max_weight < 0 {
        return Err(GenerateError::BadMaxValue { min: 0, got: max_weight });
    }
    let mut rng = rng(seed);
    let mut planted: Vec<usize> = (0..n).collect();
    planted.shuffle(&mut rng);

    let mut edges = Vec::with_capacity(n * degree);
    for (x, &y0) in planted.iter().enumerate() {
        let mut others: Vec<usize> = (0..n).filter(|&y| y != y0).collect();
        others.shuffle(&mut rng);
        let mut ys = vec![y0];
        ys.extend_from_slice(&others[..degree - 1]);
        ys.sort_unstable();
        edges.extend(ys.into_iter().map(|y| (x, y, rng.gen_range(0..=max_weight))));
    }
    Ok(AssignmentInstance::new(n, edges).expect("generated edges are in range"))
}
