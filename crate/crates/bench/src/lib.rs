//! Seeded workloads shared by the criterion benches.

use lockflow::generate::{generate_assignment, generate_maxflow};
use lockflow::{AssignmentInstance, FlowNetwork};

pub const WORKER_COUNTS: [usize; 4] = [1, 2, 4, 8];

/// Max-flow graphs by (nodes, arcs), capacities up to 100.
pub const MAXFLOW_SIZES: [(usize, usize); 3] = [(100, 1000), (500, 5000), (2000, 20000)];

/// Complete assignment sizes, weights up to 100.
pub const ASSIGN_SIZES: [usize; 3] = [10, 30, 60];

pub fn maxflow_workload(nodes: usize, arcs: usize) -> FlowNetwork {
    generate_maxflow(nodes, arcs, 100, 7).expect("valid sizes")
}

pub fn assign_workload(n: usize) -> AssignmentInstance {
    generate_assignment(n, 100, 42).expect("valid size")
}
