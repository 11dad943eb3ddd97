//! Push-relabel maximum flow and cost-scaling assignment, each with a
//! sequential solver and a lock-free multi-worker solver.
//!
//! ```
//! use lockflow::{build_network, solve_maxflow_seq, hybrid_solve, HybridConfig};
//!
//! let net = build_network([(0, 1, 3), (1, 2, 2)], 3, 0, 2).unwrap();
//! assert_eq!(solve_maxflow_seq(&net, 3).report.objective, 2);
//! let par = hybrid_solve(&net, &HybridConfig::with_workers(4)).unwrap();
//! assert_eq!(par.report.objective, 2);
//! ```
//!
//! ```
//! use lockflow::{solve_assignment, AssignmentInstance, ScalingConfig};
//!
//! let inst = AssignmentInstance::complete(&[vec![1, 2], vec![3, 5]]).unwrap();
//! let sol = solve_assignment(&inst, &ScalingConfig::parallel(2)).unwrap();
//! assert_eq!(sol.weight(), 6);
//! ```

pub mod assign;
pub mod dimacs;
pub mod generate;
pub mod maxflow;
pub mod network;
pub mod oracle;
pub mod report;
pub mod residual;
pub mod workers;

pub use assign::{solve_assignment, solve_assignment_audited, AssignError, AssignmentInstance, AssignmentSolution, Mode, ScalingConfig};
pub use dimacs::{parse_dimacs, parse_dimacs_asn, parse_dimacs_max, serialize_asn, serialize_max, DimacsError, InstanceFile};
pub use maxflow::{hybrid_solve, hybrid_solve_audited, solve_maxflow_seq, solve_maxflow_seq_audited, HybridConfig, MaxFlowResult, SolveError};
pub use network::{build_network, Arc, ArcSpec, FlowNetwork, NetworkError};
pub use oracle::{brute_force_assignment, edmonds_karp, BruteForceAssignment, OracleError};
pub use report::{Audit, SolveReport};
pub use residual::ResidualState;
pub use workers::WorkerPanic;
