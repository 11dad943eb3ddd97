//! Lock-free refine on striped workers.
//!
//! Workers push single units with atomic updates and relabel only the nodes
//! they own. Epsilon-optimality may be broken for a moment inside a round, so
//! it is only ever checked at coordinator passes.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::thread;

use super::reduce::ReducedInstance;
use super::scaling::{finish_refine, observe_conservation, run_heuristics, AssignError, RefineStats, ScalingConfig, ScalingState};
use crate::report::Audit;
use crate::workers::{owned_nodes, run_rounds, AtomicResidual, Step};

/// Round-shared view of a refine.
pub struct RefineShared<'a> {
    red: &'a ReducedInstance,
    atoms: AtomicResidual,
    fixed: Vec<AtomicBool>,
    epsilon: i64,
    workers: usize,
    cycle_budget: usize,
    done: AtomicBool,
    stalled: AtomicBool,
    pushes: AtomicU64,
    relabels: AtomicU64,
    price_increase: AtomicU64,
    /// `worker + 1` of the first writer of each price, when auditing.
    writer: Option<Vec<AtomicUsize>>,
    foreign_writes: AtomicU64,
}

impl<'a> RefineShared<'a> {
    pub fn new(red: &'a ReducedInstance, st: &ScalingState, workers: usize, cycle_budget: usize, track_writers: bool) -> Self {
        let nodes = red.net.node_count();
        Self {
            red,
            atoms: AtomicResidual::from_state(&st.flow),
            fixed: st.fixed.iter().map(|&f| AtomicBool::new(f)).collect(),
            epsilon: st.epsilon,
            workers,
            cycle_budget: cycle_budget.max(1),
            done: AtomicBool::new(false),
            stalled: AtomicBool::new(false),
            pushes: AtomicU64::new(0),
            relabels: AtomicU64::new(0),
            price_increase: AtomicU64::new(0),
            writer: track_writers.then(|| (0..nodes).map(|_| AtomicUsize::new(0)).collect()),
            foreign_writes: AtomicU64::new(0),
        }
    }

    fn sync_fixed(&self, fixed: &[bool]) {
        for (dst, &src) in self.fixed.iter().zip(fixed) {
            dst.store(src, Relaxed);
        }
    }

    fn any_active(&self) -> bool {
        self.atoms.excess.iter().any(|e| e.load(Relaxed) > 0)
    }

    fn write_price(&self, worker: usize, x: usize, price: i64) {
        if let Some(writer) = &self.writer {
            let me = worker + 1;
            if let Err(prev) = writer[x].compare_exchange(0, me, Relaxed, Relaxed) {
                if prev != me {
                    self.foreign_writes.fetch_add(1, Relaxed);
                }
            }
        }
        self.atoms.price[x].store(price, Relaxed);
    }
}

/// What one worker did to one active node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineStep {
    Push { arc: usize },
    Relabel { price: i64 },
    Stall,
}

/// Push one unit out of `x` if its cheapest residual arc is admissible,
/// otherwise lower its price.
pub fn refine_step(shared: &RefineShared<'_>, worker: usize, x: usize) -> RefineStep {
    let net = &shared.red.net;
    let atoms = &shared.atoms;
    let mut best: Option<(usize, i64)> = None;
    for &a in net.out_arcs(x) {
        if shared.fixed[a].load(Relaxed) || atoms.residual[a].load(Relaxed) <= 0 {
            continue;
        }
        let c = net.cost(a) - atoms.price[net.head(a)].load(Relaxed);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((a, c));
        }
    }
    let Some((a, min_c)) = best else {
        return RefineStep::Stall;
    };
    let px = atoms.price[x].load(Relaxed);
    if min_c < -px {
        atoms.push(a, x, net.head(a), 1);
        shared.pushes.fetch_add(1, Relaxed);
        RefineStep::Push { arc: a }
    } else {
        let price = -(min_c + shared.epsilon);
        if price > px {
            shared.price_increase.fetch_add(1, Relaxed);
        }
        shared.write_price(worker, x, price);
        shared.relabels.fetch_add(1, Relaxed);
        RefineStep::Relabel { price }
    }
}

/// One worker's round: `cycle_budget` sweeps over its owned active nodes.
pub fn lockfree_refine_round(shared: &RefineShared<'_>, worker: usize) {
    let nodes = shared.red.net.node_count();
    for _ in 0..shared.cycle_budget {
        if shared.done.load(Relaxed) {
            return;
        }
        let mut worked = false;
        for x in owned_nodes(worker, shared.workers, nodes) {
            if shared.atoms.excess[x].load(Relaxed) <= 0 {
                continue;
            }
            worked = true;
            if refine_step(shared, worker, x) == RefineStep::Stall {
                shared.stalled.store(true, Relaxed);
                shared.done.store(true, Relaxed);
                return;
            }
        }
        if !worked {
            if !shared.any_active() {
                shared.done.store(true, Relaxed);
                return;
            }
            thread::yield_now();
        }
    }
}

/// Parallel refine. Expects [`super::prepare_refine`] to have run.
pub fn refine_par(
    red: &ReducedInstance,
    st: &mut ScalingState,
    workers: usize,
    config: &ScalingConfig,
    mut audit: Option<&mut Audit>,
) -> Result<RefineStats, AssignError> {
    if workers == 0 {
        return Err(AssignError::NoWorkers);
    }
    let shared = RefineShared::new(red, st, workers, config.cycle_budget, audit.is_some());
    let mut rounds = 0u64;
    let mut first = true;
    let mut failure = None;
    let mut fix_deferred = false;

    run_rounds(workers, &shared, |worker, sh| lockfree_refine_round(sh, worker), |sh| {
        if !first {
            rounds += 1;
            sh.atoms.load_into(&mut st.flow);
            if let Some(audit) = audit.as_deref_mut() {
                observe_conservation(red, st, audit);
            }
            if sh.stalled.load(Relaxed) || (0..st.flow.price.len()).any(|v| st.price_drop_exceeded(v)) {
                failure = Some(AssignError::Infeasible);
                return Step::Stop;
            }
            if config.heuristics_due(rounds) {
                fix_deferred |= run_heuristics(red, st, config, audit.as_deref_mut());
                sh.sync_fixed(&st.fixed);
            }
        }
        first = false;
        if !st.has_active() {
            return Step::Stop;
        }
        sh.atoms.store_from(&st.flow);
        sh.done.store(false, Relaxed);
        Step::Run
    })?;

    if let Some(audit) = audit {
        audit.price_increase += shared.price_increase.load(Relaxed);
        audit.foreign_price_write += shared.foreign_writes.load(Relaxed);
    }
    if let Some(err) = failure {
        return Err(err);
    }
    finish_refine(red, st, fix_deferred);
    Ok(RefineStats { pushes: shared.pushes.load(Relaxed), relabels: shared.relabels.load(Relaxed), rounds })
}
