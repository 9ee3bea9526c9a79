use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lzsm_core::{evolve_1q, evolve_2q, u_period, DriveParams, TwoQubitDriveParams};
use std::hint::black_box;

fn propagators(c: &mut Criterion) {
    let p = DriveParams::normalized(2.87, 2.07).unwrap();
    let mut g = c.benchmark_group("evolve_1q");
    for steps in [256, 1024, 4096] {
        g.bench_with_input(BenchmarkId::from_parameter(steps), &steps, |b, &n| {
            b.iter(|| evolve_1q(black_box(&p), 0.0, p.period(), n).unwrap())
        });
    }
    g.finish();

    let q = TwoQubitDriveParams::new(1.0, 1.05, 5.74, 4.14).unwrap();
    c.bench_function("evolve_2q/4096", |b| {
        b.iter(|| evolve_2q(black_box(&q), 0.0, q.period(), 4096).unwrap())
    });
    c.bench_function("chrw_u_period", |b| b.iter(|| u_period(black_box(&p)).unwrap()));
}

criterion_group!(benches, propagators);
criterion_main!(benches);
