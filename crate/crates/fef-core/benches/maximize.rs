use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fef_core::numeric::{
    fef_maximize, fef_maximize_seq, fef_oracle_grid_d2, fef_oracle_grid_d2_seq, OptimizerConfig,
};
use fef_core::states::{isotropic, random_density, werner};

fn bench_maximize(c: &mut Criterion) {
    let config = OptimizerConfig::default();
    let cases = [
        ("isotropic_d4", isotropic(4, 0.3).unwrap()),
        ("werner_d5", werner(5, -0.7).unwrap()),
        ("random_d3_rank4", random_density(3, 4, 99).unwrap()),
    ];
    let mut group = c.benchmark_group("maximize");
    group.sample_size(10);
    for (name, rho) in &cases {
        #[cfg(feature = "parallel")]
        group.bench_function(format!("{name}/parallel"), |b| {
            b.iter(|| fef_maximize(black_box(rho), black_box(&config)))
        });
        group.bench_function(format!("{name}/sequential"), |b| {
            b.iter(|| fef_maximize_seq(black_box(rho), black_box(&config)))
        });
    }
    group.finish();
}

fn bench_grid_oracle(c: &mut Criterion) {
    let rho = random_density(2, 4, 7).unwrap();
    let mut group = c.benchmark_group("grid_oracle");
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    group.bench_function("resolution_60/parallel", |b| {
        b.iter(|| fef_oracle_grid_d2(black_box(&rho), black_box(60)).unwrap())
    });
    group.bench_function("resolution_60/sequential", |b| {
        b.iter(|| fef_oracle_grid_d2_seq(black_box(&rho), black_box(60)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_maximize, bench_grid_oracle);
criterion_main!(benches);
