//! FIFO push-relabel with periodic global and gap relabeling.
//!
//! Nodes at height `|V|` or above cannot reach the sink, so they never enter
//! the active set; their excess stays trapped and the sink excess is the
//! maximum flow value once the set empties.

use std::collections::VecDeque;
use std::time::Instant;

use super::heuristics::{gap_relabel, global_relabel};
use super::MaxFlowResult;
use crate::network::FlowNetwork;
use crate::report::{Audit, SolveReport};
use crate::residual::{distance_violations, pair_sum_violations, ResidualState};

/// Saturates every source arc. The source itself keeps zero excess, so the
/// total excess afterwards equals the preflow injected.
pub fn init_preflow(net: &FlowNetwork, state: &mut ResidualState) {
    let s = net.source();
    state.height.fill(0);
    state.excess.fill(0);
    state.height[s] = net.node_count();
    for &a in net.out_arcs(s) {
        let delta = state.residual[a];
        if delta > 0 {
            state.residual[a] = 0;
            state.residual[a ^ 1] += delta;
            state.excess[net.head(a)] += delta;
        }
    }
}

/// Result of a single [`discharge`] step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discharge {
    Pushed { arc: usize, delta: i64 },
    Relabeled(usize),
    /// Active node without residual out-arcs; lifted to `2|V|`.
    Stranded,
    Inactive,
}

/// One push or one relabel on `x`.
pub fn discharge(net: &FlowNetwork, state: &mut ResidualState, x: usize) -> Discharge {
    debug_assert!(x != net.source() && x != net.sink());
    if state.excess[x] <= 0 {
        return Discharge::Inactive;
    }
    let hx = state.height[x];
    let admissible = net
        .out_arcs(x)
        .iter()
        .copied()
        .find(|&a| state.residual[a] > 0 && hx == state.height[net.head(a)] + 1);
    if let Some(arc) = admissible {
        let delta = state.residual[arc].min(state.excess[x]);
        state.push(net, arc, delta);
        return Discharge::Pushed { arc, delta };
    }

    let lowest = net
        .out_arcs(x)
        .iter()
        .filter(|&&a| state.residual[a] > 0)
        .map(|&a| state.height[net.head(a)])
        .min();
    match lowest {
        Some(h) => {
            state.height[x] = h + 1;
            Discharge::Relabeled(h + 1)
        }
        None => {
            state.height[x] = 2 * net.node_count();
            Discharge::Stranded
        }
    }
}

/// FIFO worklist of nodes with positive excess below height `|V|`.
#[derive(Debug, Clone)]
pub struct ActiveSet {
    queue: VecDeque<usize>,
    member: Vec<bool>,
}

impl ActiveSet {
    pub fn new(node_count: usize) -> Self {
        Self { queue: VecDeque::new(), member: vec![false; node_count] }
    }

    pub fn is_eligible(net: &FlowNetwork, state: &ResidualState, v: usize) -> bool {
        v != net.source() && v != net.sink() && state.excess[v] > 0 && state.height[v] < net.node_count()
    }

    /// Enqueues `v` if it is eligible and not already queued.
    pub fn offer(&mut self, net: &FlowNetwork, state: &ResidualState, v: usize) {
        if !self.member[v] && Self::is_eligible(net, state, v) {
            self.member[v] = true;
            self.queue.push_back(v);
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        let v = self.queue.pop_front()?;
        self.member[v] = false;
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    /// Drops members that stopped being eligible and appends newly eligible
    /// nodes in id order.
    fn refresh(&mut self, net: &FlowNetwork, state: &ResidualState) {
        let member = &mut self.member;
        self.queue.retain(|&v| {
            let keep = Self::is_eligible(net, state, v);
            member[v] = keep;
            keep
        });
        for v in 0..net.node_count() {
            self.offer(net, state, v);
        }
    }
}

/// Default heuristic period: one global relabel per `|V|` relabels.
pub fn default_heuristic_period(net: &FlowNetwork) -> usize {
    net.node_count()
}

/// Sequential max-flow. `heuristic_period == 0` disables global relabeling.
pub fn solve_maxflow_seq(net: &FlowNetwork, heuristic_period: usize) -> MaxFlowResult {
    run(net, heuristic_period, None)
}

/// [`solve_maxflow_seq`] that also checks conservation and the distance
/// labeling at every heuristic pass.
pub fn solve_maxflow_seq_audited(net: &FlowNetwork, heuristic_period: usize, audit: &mut Audit) -> MaxFlowResult {
    run(net, heuristic_period, Some(audit))
}

fn run(net: &FlowNetwork, heuristic_period: usize, mut audit: Option<&mut Audit>) -> MaxFlowResult {
    let started = Instant::now();
    let mut state = ResidualState::new(net);
    init_preflow(net, &mut state);
    let injected = state.total_excess();

    let mut report = SolveReport::default();
    let mut active = ActiveSet::new(net.node_count());
    for v in 0..net.node_count() {
        active.offer(net, &state, v);
    }

    let mut since_global = 0;
    while let Some(x) = active.pop() {
        match discharge(net, &mut state, x) {
            Discharge::Pushed { arc, .. } => {
                report.pushes += 1;
                active.offer(net, &state, net.head(arc));
            }
            Discharge::Relabeled(_) | Discharge::Stranded => {
                report.relabels += 1;
                since_global += 1;
            }
            Discharge::Inactive => {}
        }
        active.offer(net, &state, x);

        if heuristic_period > 0 && since_global >= heuristic_period {
            since_global = 0;
            report.rounds += 1;
            let scanned = global_relabel(net, &mut state);
            gap_relabel(net, &mut state, &scanned);
            active.refresh(net, &state);
            if let Some(audit) = audit.as_deref_mut() {
                observe(net, &state, injected, audit);
            }
        }
    }

    if let Some(audit) = audit {
        observe(net, &state, injected, audit);
    }
    report.objective = state.excess[net.sink()];
    report.elapsed = started.elapsed();
    MaxFlowResult { report, state }
}

fn observe(net: &FlowNetwork, state: &ResidualState, injected: i64, audit: &mut Audit) {
    audit.observations += 1;
    audit.pair_sum += pair_sum_violations(net, &state.residual) as u64;
    audit.excess_sum += u64::from(state.total_excess() != injected);
    audit.distance += distance_violations(net, state) as u64;
    audit.negative_excess += state.excess.iter().filter(|&&e| e < 0).count() as u64;
}
