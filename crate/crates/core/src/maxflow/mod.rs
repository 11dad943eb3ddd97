//! Maximum flow by push-relabel, sequential and lock-free.

mod heuristics;
pub mod par;
pub mod seq;

use thiserror::Error;

use crate::report::SolveReport;
use crate::residual::ResidualState;
use crate::workers::WorkerPanic;

pub use heuristics::{gap_relabel, global_relabel};
pub use par::{cancel_violations, hybrid_init, hybrid_solve, hybrid_solve_audited, HybridConfig, HybridState};
pub use seq::{discharge, init_preflow, solve_maxflow_seq, solve_maxflow_seq_audited, ActiveSet, Discharge};

/// Final counters plus the residual state the solver stopped in.
#[derive(Debug, Clone)]
pub struct MaxFlowResult {
    pub report: SolveReport,
    pub state: ResidualState,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Worker(#[from] WorkerPanic),
    #[error("worker count must be at least 1")]
    NoWorkers,
}
