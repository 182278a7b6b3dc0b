use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kdom_core::constructions::{self, cycle};
use kdom_core::fuzz::{random_connected_graph, trial_rng};
use kdom_core::graph::Graph;
use kdom_core::solver::{self, Budget};

fn random_graphs(n: usize, count: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| random_connected_graph(&mut trial_rng(7, i), n, 0.3))
        .collect()
}

fn exact_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_k");
    for n in [10, 14] {
        let graphs = random_graphs(n, 8);
        for k in [1, 2] {
            group.bench_with_input(
                BenchmarkId::new(format!("exact/k{k}"), n),
                &graphs,
                |b, gs| {
                    b.iter(|| {
                        for g in gs {
                            black_box(solver::gamma_k_exact(g, k, Budget::default()));
                        }
                    })
                },
            );
            group.bench_with_input(
                BenchmarkId::new(format!("oracle/k{k}"), n),
                &graphs,
                |b, gs| {
                    b.iter(|| {
                        for g in gs {
                            black_box(solver::gamma_k_oracle(g, k, 16).unwrap());
                        }
                    })
                },
            );
        }
    }
    let big = random_graphs(40, 4);
    group.bench_function("exact/k1/40", |b| {
        b.iter(|| {
            for g in &big {
                black_box(solver::gamma_k_exact(g, 1, Budget::default()));
            }
        })
    });
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let graphs = random_graphs(64, 4);
    c.bench_function("metrics/64", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(g.metrics());
            }
        })
    });
}

fn product(c: &mut Criterion) {
    let a = cycle(5).unwrap();
    let b = constructions::petersen();
    c.bench_function("direct_product/C5xPetersen", |bch| {
        bch.iter(|| black_box(constructions::direct_product(&a, &b).unwrap()))
    });
    let p = constructions::direct_product(&a, &b).unwrap();
    c.bench_function("gamma_k/C5xPetersen/k2", |bch| {
        bch.iter(|| black_box(solver::gamma_k_exact(&p.graph, 2, Budget::default())))
    });
}

criterion_group!(benches, exact_vs_oracle, metrics, product);
criterion_main!(benches);
