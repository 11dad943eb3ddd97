//! Acceptance criteria, one line per criterion. Exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lockflow::generate::{generate_assignment, generate_maxflow, rng};
use lockflow::{
    brute_force_assignment, edmonds_karp, hybrid_solve, hybrid_solve_audited, solve_assignment,
    solve_assignment_audited, solve_maxflow_seq, solve_maxflow_seq_audited, Audit, AssignmentInstance, FlowNetwork,
    HybridConfig, ScalingConfig,
};
use rand::Rng;

const WORKER_COUNTS: [usize; 4] = [1, 2, 4, 8];

const MAXFLOW_GRAPHS: u64 = 200;
const MAXFLOW_MAX_NODES: usize = 100;
const MAXFLOW_MAX_ARCS: usize = 1000;
const MAXFLOW_MAX_CAPACITY: i64 = 100;
const MAXFLOW_BUDGET: Duration = Duration::from_secs(120);

const ASSIGN_INSTANCES: u64 = 200;
const ASSIGN_MAX_N: usize = 8;
const ASSIGN_MAX_WEIGHT: i64 = 100;
const ASSIGN_BUDGET: Duration = Duration::from_secs(120);

const EPSILON_INSTANCES: u64 = 50;
const INVARIANT_INSTANCES: u64 = 50;
/// Small round budgets force many coordinator passes per solve.
const TIGHT_MAXFLOW_CYCLES: usize = 4;
const TIGHT_REFINE_CYCLES: usize = 3;

const REPEATS: usize = 1000;
const REPEAT_WORKERS: usize = 8;
const REPEAT_ASSIGN_SEED: u64 = 0xA55;
const REPEAT_MAXFLOW_SEED: u64 = 0xF10;

const LARGE_N: usize = 30;
const LARGE_INSTANCES: u64 = 5;
const LARGE_WORKERS: usize = 8;
const LARGE_BUDGET: Duration = Duration::from_secs(1);

const ARC_FIX_INSTANCES: u64 = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn first(mismatches: &[String]) -> String {
    mismatches.first().map(|m| format!(", first: {m}")).unwrap_or_default()
}

fn maxflow_case(seed: u64) -> FlowNetwork {
    let mut r = rng(seed ^ 0x5EED);
    let nodes = r.gen_range(2..=MAXFLOW_MAX_NODES);
    let arcs = r.gen_range(1..=MAXFLOW_MAX_ARCS);
    generate_maxflow(nodes, arcs, MAXFLOW_MAX_CAPACITY, seed).unwrap()
}

fn assign_case(seed: u64) -> AssignmentInstance {
    let n = rng(seed ^ 0xA551).gen_range(1..=ASSIGN_MAX_N);
    generate_assignment(n, ASSIGN_MAX_WEIGHT, seed).unwrap()
}

fn maxflow_parity() -> Outcome {
    let started = Instant::now();
    let mut mismatches = Vec::new();
    for seed in 0..MAXFLOW_GRAPHS {
        let net = maxflow_case(seed);
        let want = edmonds_karp(&net);
        let seq = solve_maxflow_seq(&net, net.node_count()).report.objective;
        if seq != want {
            mismatches.push(format!("seed {seed}: seq {seq} vs {want}"));
        }
        for workers in WORKER_COUNTS {
            let got = hybrid_solve(&net, &HybridConfig::with_workers(workers)).unwrap().report.objective;
            if got != want {
                mismatches.push(format!("seed {seed} workers {workers}: {got} vs {want}"));
            }
        }
    }
    let elapsed = started.elapsed();
    check(
        mismatches.is_empty() && elapsed < MAXFLOW_BUDGET,
        format!("{MAXFLOW_GRAPHS} graphs, {} mismatches, {:.1}s{}", mismatches.len(), elapsed.as_secs_f64(), first(&mismatches)),
    )
}

fn assignment_parity() -> Outcome {
    let started = Instant::now();
    let mut mismatches = Vec::new();
    for seed in 0..ASSIGN_INSTANCES {
        let inst = assign_case(seed);
        let want = brute_force_assignment(&inst).unwrap().weight;
        let seq = solve_assignment(&inst, &ScalingConfig::default()).unwrap().weight();
        if seq != want {
            mismatches.push(format!("seed {seed}: seq {seq} vs {want}"));
        }
        for workers in WORKER_COUNTS {
            let got = solve_assignment(&inst, &ScalingConfig::parallel(workers)).unwrap().weight();
            if got != want {
                mismatches.push(format!("seed {seed} workers {workers}: {got} vs {want}"));
            }
        }
    }
    let elapsed = started.elapsed();
    check(
        mismatches.is_empty() && elapsed < ASSIGN_BUDGET,
        format!("{ASSIGN_INSTANCES} instances, {} mismatches, {:.1}s{}", mismatches.len(), elapsed.as_secs_f64(), first(&mismatches)),
    )
}

fn assignment_configs() -> Vec<ScalingConfig> {
    vec![
        ScalingConfig::default(),
        ScalingConfig { cycle_budget: TIGHT_REFINE_CYCLES, ..ScalingConfig::default() },
        ScalingConfig::parallel(4),
        ScalingConfig { cycle_budget: TIGHT_REFINE_CYCLES, ..ScalingConfig::parallel(3) },
    ]
}

fn audit_assignments(instances: u64) -> Audit {
    let mut total = Audit::default();
    for seed in 0..instances {
        let inst = assign_case(1000 + seed);
        for cfg in assignment_configs() {
            solve_assignment_audited(&inst, &cfg, &mut total).unwrap();
        }
    }
    total
}

fn epsilon_optimality() -> Outcome {
    let audit = audit_assignments(EPSILON_INSTANCES);
    check(
        audit.epsilon == 0 && audit.observations > 0,
        format!("{EPSILON_INSTANCES} instances x 4 configs, {} violations", audit.epsilon),
    )
}

fn conservation() -> Outcome {
    let mut mf = Audit::default();
    for seed in 0..INVARIANT_INSTANCES {
        let net = maxflow_case(2000 + seed);
        for workers in WORKER_COUNTS {
            let cfg = HybridConfig { workers, cycle_budget: TIGHT_MAXFLOW_CYCLES };
            hybrid_solve_audited(&net, &cfg, &mut mf).unwrap();
        }
    }
    let asn = audit_assignments(INVARIANT_INSTANCES);
    let bad = mf.pair_sum + mf.excess_sum + mf.excess_total + mf.negative_excess + asn.pair_sum + asn.excess_sum;
    check(
        bad == 0 && mf.observations > 0 && asn.observations > 0,
        format!("{} max-flow + {} assignment coordinator points, {bad} violations", mf.observations, asn.observations),
    )
}

fn distance_labels() -> Outcome {
    let mut audit = Audit::default();
    for seed in 0..INVARIANT_INSTANCES {
        let net = maxflow_case(3000 + seed);
        solve_maxflow_seq_audited(&net, 1, &mut audit);
        for workers in WORKER_COUNTS {
            let cfg = HybridConfig { workers, cycle_budget: TIGHT_MAXFLOW_CYCLES };
            hybrid_solve_audited(&net, &cfg, &mut audit).unwrap();
        }
    }
    check(
        audit.distance == 0 && audit.observations > 0,
        format!("{} global relabels, {} violations", audit.observations, audit.distance),
    )
}

fn price_monotonicity() -> Outcome {
    let audit = audit_assignments(INVARIANT_INSTANCES);
    let bad = audit.price_increase + audit.foreign_price_write;
    check(bad == 0, format!("{INVARIANT_INSTANCES} instances x 4 configs, {bad} increases or foreign writes"))
}

fn repeat_stability() -> Outcome {
    let inst = generate_assignment(8, ASSIGN_MAX_WEIGHT, REPEAT_ASSIGN_SEED).unwrap();
    let want_w = brute_force_assignment(&inst).unwrap().weight;
    let net = generate_maxflow(MAXFLOW_MAX_NODES, MAXFLOW_MAX_ARCS, MAXFLOW_MAX_CAPACITY, REPEAT_MAXFLOW_SEED).unwrap();
    let want_f = edmonds_karp(&net);
    let acfg = ScalingConfig::parallel(REPEAT_WORKERS);
    let mcfg = HybridConfig::with_workers(REPEAT_WORKERS);
    let mut bad = 0;
    for _ in 0..REPEATS {
        bad += usize::from(solve_assignment(&inst, &acfg).unwrap().weight() != want_w);
        bad += usize::from(hybrid_solve(&net, &mcfg).unwrap().report.objective != want_f);
    }
    check(bad == 0, format!("{REPEATS} runs each at {REPEAT_WORKERS} workers, {bad} deviations"))
}

fn large_assignment() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut mismatches = 0;
    for seed in 0..LARGE_INSTANCES {
        let inst = generate_assignment(LARGE_N, ASSIGN_MAX_WEIGHT, 42 + seed).unwrap();
        let started = Instant::now();
        let par = solve_assignment(&inst, &ScalingConfig::parallel(LARGE_WORKERS)).unwrap();
        slowest = slowest.max(started.elapsed());
        let seq = solve_assignment(&inst, &ScalingConfig::default()).unwrap();
        mismatches += usize::from(par.weight() != seq.weight());
    }
    check(
        slowest < LARGE_BUDGET && mismatches == 0,
        format!("n={LARGE_N} x {LARGE_INSTANCES}, slowest {:.1} ms, {mismatches} seq mismatches", slowest.as_secs_f64() * 1e3),
    )
}

fn arc_fixing_ab() -> Outcome {
    let mut mismatches = Vec::new();
    for seed in 0..ARC_FIX_INSTANCES {
        let inst = assign_case(4000 + seed);
        let want = brute_force_assignment(&inst).unwrap().weight;
        for base in assignment_configs() {
            let on = solve_assignment(&inst, &ScalingConfig { arc_fixing: true, ..base }).unwrap().weight();
            let off = solve_assignment(&inst, &ScalingConfig { arc_fixing: false, ..base }).unwrap().weight();
            if on != off || on != want {
                mismatches.push(format!("seed {seed} {:?}: on {on} off {off} oracle {want}", base.mode));
            }
        }
    }
    check(
        mismatches.is_empty(),
        format!("{ARC_FIX_INSTANCES} instances x 4 configs, {} mismatches{}", mismatches.len(), first(&mismatches)),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("max-flow oracle parity", maxflow_parity),
        ("assignment oracle parity", assignment_parity),
        ("epsilon-optimality after every refine", epsilon_optimality),
        ("pair-sum and excess conservation", conservation),
        ("distance labels after global relabel", distance_labels),
        ("price monotonicity within refine", price_monotonicity),
        ("repeat-run stability", repeat_stability),
        ("n=30 parallel assignment budget", large_assignment),
        ("arc fixing A/B", arc_fixing_ab),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {name}: {} ({:.2}s)", i + 1, out.detail, started.elapsed().as_secs_f64());
        failed += usize::from(!out.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
