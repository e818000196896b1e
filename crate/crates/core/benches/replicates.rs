use banach_coupling::coupling::{plan_blocks, run_block_coupling, stream_coupling_time, Refinement};
use banach_coupling::parallel::{map_replicates, map_replicates_sequential};
use banach_coupling::simulation::{RngPolicy, TimeGrid};
use banach_coupling::wiener_space::{h_divergent_geometric, AmbientNorm, HVector};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const REPLICATES: u64 = 64;

fn coupling_times(c: &mut Criterion) {
    let x = HVector::new(vec![2.0]).unwrap();
    let grid = TimeGrid::with_step(16.0, 1e-3).unwrap();
    let policy = RngPolicy::new(1);
    let one = |r| stream_coupling_time(&x, &grid, policy, r, Refinement::Bridge).unwrap();

    let mut group = c.benchmark_group("coupling-time");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", REPLICATES), |b| {
        b.iter(|| map_replicates(REPLICATES, one))
    });
    group.bench_function(BenchmarkId::new("sequential", REPLICATES), |b| {
        b.iter(|| map_replicates_sequential(REPLICATES, one))
    });
    group.finish();
}

fn block_coupling(c: &mut Criterion) {
    let (model, x) = h_divergent_geometric(0.5, 20, AmbientNorm::L2).unwrap();
    let plan = plan_blocks(&model, &x).unwrap();
    let grid = TimeGrid::with_step(16.0, 1.0 / 64.0).unwrap();
    let policy = RngPolicy::new(2);
    let one = |r| {
        run_block_coupling(&model, &x, &plan, &grid, policy, r, Refinement::Bridge)
            .unwrap()
            .coupled
    };

    let mut group = c.benchmark_group("block-coupling");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", REPLICATES), |b| {
        b.iter(|| map_replicates(REPLICATES, one))
    });
    group.bench_function(BenchmarkId::new("sequential", REPLICATES), |b| {
        b.iter(|| map_replicates_sequential(REPLICATES, one))
    });
    group.finish();
}

criterion_group!(benches, coupling_times, block_coupling);
criterion_main!(benches);
