use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lockflow::maxflow::seq::default_heuristic_period;
use lockflow::{hybrid_solve, solve_assignment, solve_maxflow_seq, HybridConfig, ScalingConfig};
use lockflow_bench::{assign_workload, maxflow_workload, ASSIGN_SIZES, MAXFLOW_SIZES, WORKER_COUNTS};

fn maxflow(c: &mut Criterion) {
    let mut group = c.benchmark_group("maxflow");
    group.sample_size(20);
    for (nodes, arcs) in MAXFLOW_SIZES {
        let net = maxflow_workload(nodes, arcs);
        let size = format!("{nodes}x{arcs}");
        group.bench_with_input(BenchmarkId::new("seq", &size), &net, |b, net| {
            b.iter(|| solve_maxflow_seq(black_box(net), default_heuristic_period(net)))
        });
        for workers in WORKER_COUNTS {
            let cfg = HybridConfig::with_workers(workers);
            group.bench_with_input(BenchmarkId::new(format!("hybrid/{workers}"), &size), &net, |b, net| {
                b.iter(|| hybrid_solve(black_box(net), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn assignment(c: &mut Criterion) {
    let mut group = c.benchmark_group("assignment");
    group.sample_size(20);
    for n in ASSIGN_SIZES {
        let inst = assign_workload(n);
        let mut configs = vec![
            ("seq".to_string(), ScalingConfig::default()),
            ("seq-plain".to_string(), ScalingConfig::default().without_heuristics()),
        ];
        configs.extend(WORKER_COUNTS.map(|w| (format!("par/{w}"), ScalingConfig::parallel(w))));
        for (name, cfg) in configs {
            group.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| solve_assignment(black_box(inst), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha");
    let inst = assign_workload(30);
    for alpha in [2, 4, 10, 16, 32] {
        let cfg = ScalingConfig { alpha, ..ScalingConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &inst, |b, inst| {
            b.iter(|| solve_assignment(black_box(inst), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, maxflow, assignment, alpha);
criterion_main!(benches);
