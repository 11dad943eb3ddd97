//! Cost-scaling loop and the sequential refine.

use std::collections::VecDeque;
use std::time::Instant;

use thiserror::Error;

use super::arc_fix::arc_fix;
use super::instance::{AssignmentInstance, InstanceError};
use super::par::refine_par;
use super::price_update::price_update;
use super::reduce::{reduce_to_mincost, ReducedInstance};
use crate::report::{Audit, SolveReport};
use crate::residual::{is_epsilon_optimal_where, pair_sum_violations, part_reduced_cost, ResidualState};
use crate::workers::WorkerPanic;

pub const DEFAULT_ALPHA: i64 = 10;
pub const DEFAULT_REFINE_BUDGET: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("instance has no perfect matching")]
    Infeasible,
    #[error("alpha must be at least 2, got {0}")]
    BadAlpha(i64),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error(transparent)]
    Worker(#[from] WorkerPanic),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel { workers: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingConfig {
    pub mode: Mode,
    pub alpha: i64,
    /// Push/relabel operations per round (per worker in parallel mode).
    pub cycle_budget: usize,
    pub price_update: bool,
    pub arc_fixing: bool,
    /// Re-run the heuristics every `k` rounds instead of only after the first.
    pub heuristic_every: Option<usize>,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Sequential,
            alpha: DEFAULT_ALPHA,
            cycle_budget: DEFAULT_REFINE_BUDGET,
            price_update: true,
            arc_fixing: true,
            heuristic_every: None,
        }
    }
}

impl ScalingConfig {
    pub fn parallel(workers: usize) -> Self {
        Self { mode: Mode::Parallel { workers }, ..Self::default() }
    }

    pub fn without_heuristics(self) -> Self {
        Self { price_update: false, arc_fixing: false, ..self }
    }

    /// Whether the heuristics run after round `round` (1-based).
    pub(crate) fn heuristics_due(&self, round: u64) -> bool {
        match self.heuristic_every {
            Some(k) if k > 0 => round.is_multiple_of(k as u64),
            _ => round == 1,
        }
    }
}

/// Pseudoflow, prices and scaling parameter carried across refines.
#[derive(Debug, Clone)]
pub struct ScalingState {
    pub epsilon: i64,
    pub alpha: i64,
    /// Largest scaled `|cost|`.
    pub max_cost: i64,
    pub flow: ResidualState,
    /// Pairs removed from all residual scans.
    pub fixed: Vec<bool>,
    /// Prices right after the last X-price reset.
    pub refine_start_price: Vec<i64>,
}

impl ScalingState {
    pub fn new(red: &ReducedInstance, alpha: i64) -> Self {
        let mut flow = ResidualState::new(&red.net);
        flow.excess.clone_from(&red.base_excess);
        let max_cost = red.net.max_abs_cost();
        Self {
            epsilon: max_cost.max(1),
            alpha,
            max_cost,
            refine_start_price: flow.price.clone(),
            fixed: vec![false; red.net.arc_count()],
            flow,
        }
    }

    pub fn is_epsilon_optimal(&self, red: &ReducedInstance) -> bool {
        is_epsilon_optimal_where(&red.net, &self.flow, self.epsilon, |a| !self.fixed[a])
    }

    pub fn has_active(&self) -> bool {
        self.flow.excess.iter().any(|&e| e > 0)
    }

    /// Prices fall by less than `(2 alpha + 1)|V| eps` in one refine on a
    /// feasible instance. The guard adds one more `|V| eps` of slack; a drop
    /// past it means no perfect matching exists.
    pub(crate) fn price_drop_exceeded(&self, v: usize) -> bool {
        let bound = (2 * self.alpha + 2) * self.flow.price.len() as i64 * self.epsilon;
        self.refine_start_price[v] - self.flow.price[v] > bound
    }
}

/// Counters accumulated over refines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RefineStats {
    pub pushes: u64,
    pub relabels: u64,
    pub rounds: u64,
}

impl RefineStats {
    pub(crate) fn add(&mut self, other: RefineStats) {
        self.pushes += other.pushes;
        self.relabels += other.relabels;
        self.rounds += other.rounds;
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// Shrinks epsilon, clears the flow on unfixed pairs and resets X prices so
/// the zero flow is epsilon-optimal.
pub fn prepare_refine(red: &ReducedInstance, st: &mut ScalingState) {
    let net = &red.net;
    st.epsilon = ceil_div(st.epsilon, st.alpha).max(1);
    for a in (0..net.arc_count()).step_by(2) {
        if !st.fixed[a] {
            st.flow.residual[a] = net.capacity(a);
            st.flow.residual[a + 1] = net.capacity(a + 1);
        }
    }
    for v in 0..net.node_count() {
        st.flow.excess[v] = red.base_excess[v] + st.flow.net_inflow(net, v);
    }
    for x in 0..red.n() {
        let lowest = net
            .out_arcs(x)
            .iter()
            .filter(|&&a| !st.fixed[a] && st.flow.residual[a] > 0)
            .map(|&a| part_reduced_cost(net, &st.flow, a))
            .min();
        if let Some(m) = lowest {
            st.flow.price[x] = -(m + st.epsilon);
        }
    }
    st.refine_start_price.clone_from(&st.flow.price);
}

/// Lowest part-reduced cost over unfixed residual out-arcs, first index on ties.
pub(crate) fn cheapest_arc(red: &ReducedInstance, st: &ScalingState, x: usize) -> Option<(usize, i64)> {
    let mut best: Option<(usize, i64)> = None;
    for &a in red.net.out_arcs(x) {
        if st.fixed[a] || st.flow.residual[a] <= 0 {
            continue;
        }
        let c = part_reduced_cost(&red.net, &st.flow, a);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((a, c));
        }
    }
    best
}

/// Quiescent-point heuristics: arc fixing, then the price update.
///
/// The fixing threshold only holds for a flow, so while any node is active
/// fixing is skipped and `true` is returned; call [`finish_refine`] with it.
pub(crate) fn run_heuristics(
    red: &ReducedInstance,
    st: &mut ScalingState,
    config: &ScalingConfig,
    audit: Option<&mut Audit>,
) -> bool {
    let mut deferred = false;
    if config.arc_fixing {
        if st.has_active() {
            deferred = true;
        } else {
            arc_fix(&red.net, &st.flow, &mut st.fixed, st.epsilon, red.net.node_count());
        }
    }
    if config.price_update {
        let before = audit.is_some().then(|| st.flow.price.clone());
        price_update(&red.net, &mut st.flow, &st.fixed, st.epsilon, st.max_cost);
        if let (Some(audit), Some(before)) = (audit, before) {
            audit.price_increase += before.iter().zip(&st.flow.price).filter(|(b, a)| a > b).count() as u64;
        }
    }
    deferred
}

/// Runs arc fixing skipped by [`run_heuristics`] once the refine left a flow.
pub(crate) fn finish_refine(red: &ReducedInstance, st: &mut ScalingState, fix_deferred: bool) {
    if fix_deferred {
        arc_fix(&red.net, &st.flow, &mut st.fixed, st.epsilon, red.net.node_count());
    }
}

/// Conservation counters at a quiescent point.
pub(crate) fn observe_conservation(red: &ReducedInstance, st: &ScalingState, audit: &mut Audit) {
    audit.observations += 1;
    audit.pair_sum += pair_sum_violations(&red.net, &st.flow.residual) as u64;
    audit.excess_sum += u64::from(st.flow.total_excess() != 0);
}

/// Push/relabel until no node holds positive excess.
pub fn refine_seq(
    red: &ReducedInstance,
    st: &mut ScalingState,
    config: &ScalingConfig,
    mut audit: Option<&mut Audit>,
) -> Result<RefineStats, AssignError> {
    let net = &red.net;
    let budget = config.cycle_budget.max(1);
    let mut stats = RefineStats::default();
    let mut queue: VecDeque<usize> = (0..net.node_count()).filter(|&v| st.flow.excess[v] > 0).collect();
    if queue.is_empty() {
        return Ok(stats);
    }
    let mut ops = 0;
    let mut fix_deferred = false;

    loop {
        let Some(x) = queue.pop_front() else {
            // The heuristic pass still happens when the queue empties inside the first round.
            if stats.rounds == 0 {
                stats.rounds = 1;
                if let Some(audit) = audit.as_deref_mut() {
                    observe_conservation(red, st, audit);
                }
                fix_deferred |= run_heuristics(red, st, config, audit.as_deref_mut());
                queue.extend((0..net.node_count()).filter(|&v| st.flow.excess[v] > 0));
                if !queue.is_empty() {
                    continue;
                }
            }
            finish_refine(red, st, fix_deferred);
            return Ok(stats);
        };

        while st.flow.excess[x] > 0 {
            let Some((a, m)) = cheapest_arc(red, st, x) else {
                return Err(AssignError::Infeasible);
            };
            if m + st.flow.price[x] < 0 {
                let y = net.head(a);
                st.flow.push(net, a, 1);
                stats.pushes += 1;
                if st.flow.excess[y] == 1 {
                    queue.push_back(y);
                }
            } else {
                let new_price = -(m + st.epsilon);
                if let Some(audit) = audit.as_deref_mut() {
                    audit.price_increase += u64::from(new_price > st.flow.price[x]);
                }
                st.flow.price[x] = new_price;
                stats.relabels += 1;
                if st.price_drop_exceeded(x) {
                    return Err(AssignError::Infeasible);
                }
            }

            ops += 1;
            if ops == budget {
                ops = 0;
                stats.rounds += 1;
                if let Some(audit) = audit.as_deref_mut() {
                    observe_conservation(red, st, audit);
                }
                if config.heuristics_due(stats.rounds) {
                    fix_deferred |= run_heuristics(red, st, config, audit.as_deref_mut());
                    queue.clear();
                    queue.extend((0..net.node_count()).filter(|&v| v != x && st.flow.excess[v] > 0));
                }
            }
        }
    }
}

/// Refines until the one executed at `epsilon = 1` completes.
pub fn min_cost_loop(
    red: &ReducedInstance,
    st: &mut ScalingState,
    config: &ScalingConfig,
    mut audit: Option<&mut Audit>,
) -> Result<RefineStats, AssignError> {
    let mut stats = RefineStats::default();
    loop {
        prepare_refine(red, st);
        let refined = match config.mode {
            Mode::Sequential => refine_seq(red, st, config, audit.as_deref_mut())?,
            Mode::Parallel { workers } => refine_par(red, st, workers, config, audit.as_deref_mut())?,
        };
        stats.add(refined);
        if let Some(audit) = audit.as_deref_mut() {
            observe_conservation(red, st, audit);
            audit.epsilon += u64::from(!st.is_epsilon_optimal(red));
        }
        if st.epsilon == 1 {
            return Ok(stats);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentSolution {
    pub report: SolveReport,
    /// `matching[x]` is the Y node assigned to `x`.
    pub matching: Vec<usize>,
}

impl AssignmentSolution {
    pub fn weight(&self) -> i64 {
        self.report.objective
    }
}

pub fn solve_assignment(inst: &AssignmentInstance, config: &ScalingConfig) -> Result<AssignmentSolution, AssignError> {
    solve(inst, config, None)
}

/// [`solve_assignment`] that records invariant checks into `audit`.
pub fn solve_assignment_audited(
    inst: &AssignmentInstance,
    config: &ScalingConfig,
    audit: &mut Audit,
) -> Result<AssignmentSolution, AssignError> {
    solve(inst, config, Some(audit))
}

fn solve(inst: &AssignmentInstance, config: &ScalingConfig, audit: Option<&mut Audit>) -> Result<AssignmentSolution, AssignError> {
    let started = Instant::now();
    if config.alpha < 2 {
        return Err(AssignError::BadAlpha(config.alpha));
    }
    if config.mode == (Mode::Parallel { workers: 0 }) {
        return Err(AssignError::NoWorkers);
    }
    if !inst.has_perfect_matching() {
        return Err(AssignError::Infeasible);
    }
    let red = reduce_to_mincost(inst);
    let mut st = ScalingState::new(&red, config.alpha);
    let stats = min_cost_loop(&red, &mut st, config, audit)?;
    let (matching, weight) = extract_matching(inst, &red, &st.flow).ok_or(AssignError::Infeasible)?;
    let report = SolveReport {
        objective: weight,
        pushes: stats.pushes,
        relabels: stats.relabels,
        rounds: stats.rounds,
        elapsed: started.elapsed(),
    };
    Ok(AssignmentSolution { report, matching })
}

/// Reads the matching off saturated forward arcs; `None` unless perfect.
pub fn extract_matching(inst: &AssignmentInstance, red: &ReducedInstance, flow: &ResidualState) -> Option<(Vec<usize>, i64)> {
    let n = inst.n();
    let mut matching = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    let mut weight = 0;
    for (i, e) in inst.edges().iter().enumerate() {
        if flow.residual[red.net.input_arc(i)] != 0 {
            continue;
        }
        if matching[e.x] != usize::MAX || taken[e.y] {
            return None;
        }
        matching[e.x] = e.y;
        taken[e.y] = true;
        weight += e.weight;
    }
    taken.iter().all(|&t| t).then_some((matching, weight))
}
