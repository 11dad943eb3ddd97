//! Lock-free push-relabel driven in bounded rounds.
//!
//! Workers own nodes by striping and only ever relabel their own nodes or
//! push out of them. Between rounds the coordinator repairs heights with a
//! global BFS and drops excess that can no longer reach the sink from the
//! running `excess_total`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering::Relaxed};
use std::thread;
use std::time::Instant;

use super::heuristics::{gap_relabel, global_relabel};
use super::seq::init_preflow;
use super::{MaxFlowResult, SolveError};
use crate::network::FlowNetwork;
use crate::report::{Audit, SolveReport};
use crate::residual::{distance_violations, pair_sum_violations, ResidualState};
use crate::workers::{owned_nodes, run_rounds, AtomicResidual, Step};

pub const DEFAULT_CYCLE_BUDGET: usize = 7000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridConfig {
    pub workers: usize,
    /// Iterations each worker runs before handing control back.
    pub cycle_budget: usize,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self { workers: 1, cycle_budget: DEFAULT_CYCLE_BUDGET }
    }
}

impl HybridConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self { workers, ..Self::default() }
    }
}

/// Coordinator view between rounds.
#[derive(Debug, Clone)]
pub struct HybridState {
    pub state: ResidualState,
    /// Excess still expected to reach `s` or `t`: the sum over unmarked nodes.
    pub excess_total: i64,
    /// Nodes whose excess was written off as unable to reach the sink.
    pub marked: Vec<bool>,
}

impl HybridState {
    pub fn is_finished(&self, net: &FlowNetwork) -> bool {
        let (s, t) = (net.source(), net.sink());
        self.state.excess[s] + self.state.excess[t] >= self.excess_total
    }

    /// BFS from the sink, then moves unreachable nodes in or out of the
    /// marked set, keeping `excess_total` equal to the unmarked excess.
    pub fn relabel_and_mark(&mut self, net: &FlowNetwork) {
        let scanned = global_relabel(net, &mut self.state);
        gap_relabel(net, &mut self.state, &scanned);
        let s = net.source();
        for v in (0..net.node_count()).filter(|&v| v != s) {
            match (scanned[v], self.marked[v]) {
                (false, false) => {
                    self.marked[v] = true;
                    self.excess_total -= self.state.excess[v];
                }
                (true, true) => {
                    self.marked[v] = false;
                    self.excess_total += self.state.excess[v];
                }
                _ => {}
            }
        }
    }

    fn unmarked_excess(&self) -> i64 {
        self.state.excess.iter().zip(&self.marked).filter(|(_, &m)| !m).map(|(&e, _)| e).sum()
    }
}

/// Preflow with `e(s) = 0` and `excess_total` set to the injected amount.
pub fn hybrid_init(net: &FlowNetwork) -> HybridState {
    let mut state = ResidualState::new(net);
    init_preflow(net, &mut state);
    let excess_total = state.total_excess();
    HybridState { state, excess_total, marked: vec![false; net.node_count()] }
}

/// Pushes across every residual arc whose tail sits more than one level above
/// its head, limited by the tail's excess. Returns the number of pushes.
pub fn cancel_violations(net: &FlowNetwork, state: &mut ResidualState) -> usize {
    let mut pushes = 0;
    for a in 0..net.arc_count() {
        let (x, y) = (net.tail(a), net.head(a));
        if state.residual[a] <= 0 || state.height[x] <= state.height[y] + 1 || state.excess[x] <= 0 {
            continue;
        }
        let delta = state.residual[a].min(state.excess[x]);
        state.push(net, a, delta);
        pushes += 1;
    }
    pushes
}

/// Operation counts from one worker's round.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundCounts {
    pub pushes: u64,
    pub relabels: u64,
}

/// One worker's share of a round: `cycle_budget` sweeps over its owned nodes.
///
/// Sets `done` and returns early once no node anywhere is active.
pub fn lockfree_round(
    net: &FlowNetwork,
    shared: &AtomicResidual,
    worker: usize,
    workers: usize,
    cycle_budget: usize,
    done: &AtomicBool,
) -> RoundCounts {
    let n = net.node_count();
    let (s, t) = (net.source(), net.sink());
    let mut counts = RoundCounts::default();

    for _ in 0..cycle_budget {
        if done.load(Relaxed) {
            break;
        }
        let mut worked = false;
        for x in owned_nodes(worker, workers, n) {
            if x == s || x == t {
                continue;
            }
            let e = shared.excess[x].load(Relaxed);
            let hx = shared.height[x].load(Relaxed);
            if e <= 0 || hx >= n {
                continue;
            }
            worked = true;

            let mut lowest: Option<(usize, usize)> = None;
            for &a in net.out_arcs(x) {
                if shared.residual[a].load(Relaxed) > 0 {
                    let h = shared.height[net.head(a)].load(Relaxed);
                    if lowest.is_none_or(|(_, best)| h < best) {
                        lowest = Some((a, h));
                    }
                }
            }
            match lowest {
                Some((a, h)) if hx > h => {
                    // Only this worker lowers u_f(x, y) or e(x), so both stay >= what we read.
                    let delta = e.min(shared.residual[a].load(Relaxed));
                    shared.push(a, x, net.head(a), delta);
                    counts.pushes += 1;
                }
                Some((_, h)) => {
                    shared.height[x].store(h + 1, Relaxed);
                    counts.relabels += 1;
                }
                None => {
                    shared.height[x].store(2 * n, Relaxed);
                    counts.relabels += 1;
                }
            }
        }
        if !worked {
            if !any_active(net, shared) {
                done.store(true, Relaxed);
                break;
            }
            thread::yield_now();
        }
    }
    counts
}

fn any_active(net: &FlowNetwork, shared: &AtomicResidual) -> bool {
    let n = net.node_count();
    (0..n).any(|v| {
        v != net.source()
            && v != net.sink()
            && shared.excess[v].load(Relaxed) > 0
            && shared.height[v].load(Relaxed) < n
    })
}

struct Shared<'a> {
    net: &'a FlowNetwork,
    atoms: AtomicResidual,
    done: AtomicBool,
    pushes: AtomicU64,
    relabels: AtomicU64,
    cycle_budget: usize,
    workers: usize,
}

pub fn hybrid_solve(net: &FlowNetwork, config: &HybridConfig) -> Result<MaxFlowResult, SolveError> {
    run(net, config, None)
}

/// [`hybrid_solve`] that checks conservation, the `excess_total` bookkeeping
/// and the distance labeling at every coordinator pass.
pub fn hybrid_solve_audited(
    net: &FlowNetwork,
    config: &HybridConfig,
    audit: &mut Audit,
) -> Result<MaxFlowResult, SolveError> {
    run(net, config, Some(audit))
}

fn run(net: &FlowNetwork, config: &HybridConfig, mut audit: Option<&mut Audit>) -> Result<MaxFlowResult, SolveError> {
    if config.workers == 0 {
        return Err(SolveError::NoWorkers);
    }
    let started = Instant::now();
    let mut hybrid = hybrid_init(net);
    let injected = hybrid.excess_total;
    let shared = Shared {
        net,
        atoms: AtomicResidual::from_state(&hybrid.state),
        done: AtomicBool::new(false),
        pushes: AtomicU64::new(0),
        relabels: AtomicU64::new(0),
        cycle_budget: config.cycle_budget.max(1),
        workers: config.workers,
    };

    let mut rounds = 0u64;
    let mut first = true;
    run_rounds(
        config.workers,
        &shared,
        |worker, sh| {
            let c = lockfree_round(sh.net, &sh.atoms, worker, sh.workers, sh.cycle_budget, &sh.done);
            sh.pushes.fetch_add(c.pushes, Relaxed);
            sh.relabels.fetch_add(c.relabels, Relaxed);
        },
        |sh| {
            if !first {
                rounds += 1;
                sh.atoms.load_into(&mut hybrid.state);
                cancel_violations(net, &mut hybrid.state);
                hybrid.relabel_and_mark(net);
                if let Some(audit) = audit.as_deref_mut() {
                    observe(net, &hybrid, injected, audit);
                }
            }
            first = false;
            if hybrid.is_finished(net) {
                return Step::Stop;
            }
            sh.atoms.store_from(&hybrid.state);
            sh.done.store(false, Relaxed);
            Step::Run
        },
    )?;

    let report = SolveReport {
        objective: hybrid.state.excess[net.sink()],
        pushes: shared.pushes.load(Relaxed),
        relabels: shared.relabels.load(Relaxed),
        rounds,
        elapsed: started.elapsed(),
    };
    Ok(MaxFlowResult { report, state: hybrid.state })
}

fn observe(net: &FlowNetwork, hybrid: &HybridState, injected: i64, audit: &mut Audit) {
    let st = &hybrid.state;
    let ends = st.excess[net.source()] + st.excess[net.sink()];
    audit.observations += 1;
    audit.pair_sum += pair_sum_violations(net, &st.residual) as u64;
    audit.excess_sum += u64::from(st.total_excess() != injected);
    audit.excess_total +=
        u64::from(hybrid.unmarked_excess() != hybrid.excess_total || ends < 0 || ends > hybrid.excess_total);
    audit.distance += distance_violations(net, st) as u64;
    audit.negative_excess += st.excess.iter().filter(|&&e| e < 0).count() as u64;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxflow::solve_maxflow_seq;
    use crate::network::{build_network, ArcSpec};

    #[test]
    fn init_examples() {
        let net = build_network([(0, 1, 2), (0, 2, 3), (1, 3, 1), (2, 3, 1)], 4, 0, 3).unwrap();
        let h = hybrid_init(&net);
        assert_eq!(h.excess_total, 5);
        assert_eq!(h.state.excess[0], 0);

        let none = build_network([(1, 2, 4)], 3, 0, 2).unwrap();
        assert_eq!(hybrid_init(&none).excess_total, 0);
        let out = hybrid_solve(&none, &HybridConfig::with_workers(2)).unwrap();
        assert_eq!(out.report.objective, 0);
        assert_eq!(out.report.rounds, 0);
    }

    #[test]
    fn antiparallel_source_arc_keeps_both_capacities() {
        let net = build_network([(0, 1, 4), (1, 0, 1), (1, 2, 9)], 3, 0, 2).unwrap();
        let h = hybrid_init(&net);
        let back = net.out_arcs(1).iter().copied().find(|&a| net.head(a) == 0).unwrap();
        assert_eq!(h.state.residual[back], 5);
    }

    #[test]
    fn cancel_examples() {
        // x=1, y=2; s=0, t=3.
        let net = build_network([(1, 2, 4)], 4, 0, 3).unwrap();
        let mut st = ResidualState::new(&net);
        st.excess[1] = 6;
        st.height[1] = 5;
        st.height[2] = 1;
        assert_eq!(cancel_violations(&net, &mut st), 1);
        assert_eq!((st.excess[1], st.excess[2], st.residual[0]), (2, 4, 0));

        let mut st = ResidualState::new(&net);
        st.excess[1] = 6;
        st.height[1] = 2;
        st.height[2] = 1;
        let before = st.clone();
        assert_eq!(cancel_violations(&net, &mut st), 0);
        assert_eq!(st, before);
    }

    #[test]
    fn cancel_never_overdraws_excess() {
        let net = build_network([(1, 2, 4)], 4, 0, 3).unwrap();
        let mut st = ResidualState::new(&net);
        st.excess[1] = 1;
        st.height[1] = 5;
        cancel_violations(&net, &mut st);
        assert_eq!((st.excess[1], st.excess[2], st.residual[0]), (0, 1, 3));
    }

    #[test]
    fn path_for_any_worker_count() {
        let net = build_network([(0, 1, 3), (1, 2, 2)], 3, 0, 2).unwrap();
        for workers in [1, 2, 4, 8] {
            let out = hybrid_solve(&net, &HybridConfig::with_workers(workers)).unwrap();
            assert_eq!(out.report.objective, 2, "workers={workers}");
        }
    }

    #[test]
    fn trapped_branch_is_written_off() {
        // s=0 -> a=1 -> t=2 cap 1, s -> b=3 cap 5 with b a dead end.
        let net = build_network([(0, 1, 1), (1, 2, 1), (0, 3, 5)], 4, 0, 2).unwrap();
        for workers in [1, 3] {
            let mut audit = Audit::default();
            let out = hybrid_solve_audited(&net, &HybridConfig::with_workers(workers), &mut audit).unwrap();
            assert_eq!(out.report.objective, 1);
            assert!(audit.observations > 0);
            assert!(audit.is_clean(), "{audit:?}");
        }
    }

    #[test]
    fn excess_total_tracks_marks() {
        let net = build_network([(0, 1, 1), (1, 2, 1), (0, 3, 5)], 4, 0, 2).unwrap();
        let mut h = hybrid_init(&net);
        h.relabel_and_mark(&net);
        assert!(h.marked[3]);
        assert_eq!(h.excess_total, 1);
        assert_eq!(h.unmarked_excess(), h.excess_total);
    }

    #[test]
    fn small_cycle_budget_matches_sequential() {
        let net = build_network(
            [(0, 1, 10), (0, 2, 10), (1, 2, 2), (1, 3, 4), (1, 4, 8), (2, 4, 9), (4, 3, 6), (3, 5, 10), (4, 5, 10)],
            6,
            0,
            5,
        )
        .unwrap();
        let want = solve_maxflow_seq(&net, 6).report.objective;
        for workers in [1, 2, 4] {
            for cycle_budget in [1, 3, 7000] {
                let cfg = HybridConfig { workers, cycle_budget };
                assert_eq!(hybrid_solve(&net, &cfg).unwrap().report.objective, want);
            }
        }
    }

    #[test]
    fn zero_workers_is_an_error() {
        let net = build_network(Vec::<ArcSpec>::new(), 2, 0, 1).unwrap();
        let cfg = HybridConfig { workers: 0, cycle_budget: 1 };
        assert_eq!(hybrid_solve(&net, &cfg).unwrap_err(), SolveError::NoWorkers);
    }
}
