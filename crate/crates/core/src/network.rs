//! Static flow network in forward-star layout.
//!
//! Arcs are stored in mate pairs: arc `2k` and arc `2k + 1` are reverses of
//! each other, so `reverse_of(a) == a ^ 1` and a push touches two adjacent
//! residual words. Every input arc gets a mate. When the input already
//! contains the antiparallel arc with skew-symmetric cost, the two input arcs
//! share one pair instead of creating a second zero-capacity mate.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

/// One directed arc of a [`FlowNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
    pub cost: i64,
}

/// An input record for [`build_network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSpec {
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
    pub cost: i64,
}

impl ArcSpec {
    pub fn new(tail: usize, head: usize, capacity: i64) -> Self {
        Self { tail, head, capacity, cost: 0 }
    }

    pub fn with_cost(tail: usize, head: usize, capacity: i64, cost: i64) -> Self {
        Self { tail, head, capacity, cost }
    }
}

impl From<(usize, usize, i64)> for ArcSpec {
    fn from((tail, head, capacity): (usize, usize, i64)) -> Self {
        Self::new(tail, head, capacity)
    }
}

impl From<(usize, usize, i64, i64)> for ArcSpec {
    fn from((tail, head, capacity, cost): (usize, usize, i64, i64)) -> Self {
        Self::with_cost(tail, head, capacity, cost)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("network needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("arc {index}: node id {node} out of range for {node_count} nodes")]
    NodeOutOfRange { index: usize, node: usize, node_count: usize },
    #[error("terminal node id {node} out of range for {node_count} nodes")]
    TerminalOutOfRange { node: usize, node_count: usize },
    #[error("arc {index}: negative capacity {capacity}")]
    NegativeCapacity { index: usize, capacity: i64 },
    #[error("source and sink are the same node ({0})")]
    SourceIsSink(usize),
    #[error("arc {index}: self-loop on node {node}")]
    SelfLoop { index: usize, node: usize },
}

/// Immutable directed network with paired reverse arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    /// `first_out[v]..first_out[v + 1]` indexes `out_arcs` for node `v`.
    first_out: Vec<usize>,
    out_arcs: Vec<usize>,
    /// Arc index assigned to each input record, in input order.
    input_arcs: Vec<usize>,
}

/// Builds a network from an edge list.
///
/// Adjacency of every node lists its arcs in increasing arc index, which is
/// the order in which the input introduced them.
pub fn build_network<I, A>(
    edges: I,
    node_count: usize,
    source: usize,
    sink: usize,
) -> Result<FlowNetwork, NetworkError>
where
    I: IntoIterator<Item = A>,
    A: Into<ArcSpec>,
{
    if node_count < 2 {
        return Err(NetworkError::TooFewNodes(node_count));
    }
    for node in [source, sink] {
        if node >= node_count {
            return Err(NetworkError::TerminalOutOfRange { node, node_count });
        }
    }
    if source == sink {
        return Err(NetworkError::SourceIsSink(source));
    }

    let mut arcs: Vec<Arc> = Vec::new();
    let mut input_arcs = Vec::new();
    // Pairs whose mate is still a synthesized zero-capacity arc, keyed by
    // (tail, head, cost) of the supplied side.
    let mut open: HashMap<(usize, usize, i64), VecDeque<usize>> = HashMap::new();

    for (index, spec) in edges.into_iter().map(Into::into).enumerate() {
        for node in [spec.tail, spec.head] {
            if node >= node_count {
                return Err(NetworkError::NodeOutOfRange { index, node, node_count });
            }
        }
        if spec.capacity < 0 {
            return Err(NetworkError::NegativeCapacity { index, capacity: spec.capacity });
        }
        if spec.tail == spec.head {
            return Err(NetworkError::SelfLoop { index, node: spec.tail });
        }

        let mate_key = (spec.head, spec.tail, -spec.cost);
        if let Some(pair) = open.get_mut(&mate_key).and_then(VecDeque::pop_front) {
            let slot = 2 * pair + 1;
            arcs[slot].capacity = spec.capacity;
            input_arcs.push(slot);
            continue;
        }

        let pair = arcs.len() / 2;
        arcs.push(Arc { tail: spec.tail, head: spec.head, capacity: spec.capacity, cost: spec.cost });
        arcs.push(Arc { tail: spec.head, head: spec.tail, capacity: 0, cost: -spec.cost });
        input_arcs.push(2 * pair);
        open.entry((spec.tail, spec.head, spec.cost)).or_default().push_back(pair);
    }

    let mut degree = vec![0usize; node_count + 1];
    for arc in &arcs {
        degree[arc.tail + 1] += 1;
    }
    for v in 0..node_count {
        degree[v + 1] += degree[v];
    }
    let first_out = degree;
    let mut cursor = first_out.clone();
    let mut out_arcs = vec![0usize; arcs.len()];
    for (a, arc) in arcs.iter().enumerate() {
        out_arcs[cursor[arc.tail]] = a;
        cursor[arc.tail] += 1;
    }

    Ok(FlowNetwork { node_count, source, sink, arcs, first_out, out_arcs, input_arcs })
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    #[inline]
    pub fn arc(&self, a: usize) -> &Arc {
        &self.arcs[a]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn tail(&self, a: usize) -> usize {
        self.arcs[a].tail
    }

    #[inline]
    pub fn head(&self, a: usize) -> usize {
        self.arcs[a].head
    }

    #[inline]
    pub fn capacity(&self, a: usize) -> i64 {
        self.arcs[a].capacity
    }

    #[inline]
    pub fn cost(&self, a: usize) -> i64 {
        self.arcs[a].cost
    }

    #[inline]
    pub fn reverse_of(&self, a: usize) -> usize {
        a ^ 1
    }

    /// Outgoing arc indices of `v`, lowest index first.
    #[inline]
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[self.first_out[v]..self.first_out[v + 1]]
    }

    /// Arc index that the `i`-th input record was stored under.
    pub fn input_arc(&self, i: usize) -> usize {
        self.input_arcs[i]
    }

    pub fn input_len(&self) -> usize {
        self.input_arcs.len()
    }

    /// Largest absolute arc cost.
    pub fn max_abs_cost(&self) -> i64 {
        self.arcs.iter().map(|a| a.cost.abs()).max().unwrap_or(0)
    }
}
