//! Maximum-weight perfect matching by cost scaling.

mod arc_fix;
mod instance;
pub mod par;
mod price_update;
mod reduce;
pub mod scaling;

pub use arc_fix::arc_fix;
pub use instance::{AssignmentInstance, Edge, InstanceError};
pub use par::{lockfree_refine_round, refine_par};
pub use price_update::{candidate_bucket, price_update};
pub use reduce::{cost_scale, reduce_to_mincost, ReducedInstance};
pub use scaling::{
    extract_matching, min_cost_loop, prepare_refine, refine_seq, solve_assignment, solve_assignment_audited,
    AssignError, AssignmentSolution, Mode, RefineStats, ScalingConfig, ScalingState,
};
