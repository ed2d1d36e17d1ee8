use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ohmgraph_core::gen::{random_minimal_network, random_planar_network};
use ohmgraph_core::grassmann::{build_omega_resistance, plucker};
use ohmgraph_core::metrics::{find_circular_order, is_electrical_via_dual, split_weights};
use ohmgraph_core::netcore::{resistance_matrix, resistance_oracle, response_matrix};
use ohmgraph_core::reconstruct::reconstruct;
use ohmgraph_core::CircularOrder;

fn networks(c: &mut Criterion) {
    let mut group = c.benchmark_group("network");
    for n in [4, 6, 8] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let g = random_planar_network(&mut rng, n, 2 * n + 4);
        group.bench_with_input(BenchmarkId::new("response", n), &g, |b, g| {
            b.iter(|| response_matrix(g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("resistance", n), &g, |b, g| {
            b.iter(|| resistance_matrix(g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle_pair", n), &g, |b, g| {
            b.iter(|| resistance_oracle(g, 0, n / 2).unwrap())
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("metric");
    for n in [4, 6, 8] {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        let d = resistance_matrix(&random_planar_network(&mut rng, n, 2 * n + 4)).unwrap();
        let order = CircularOrder::identity(n);
        group.bench_with_input(BenchmarkId::new("split_weights", n), &d, |b, d| {
            b.iter(|| split_weights(d, &order).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dual_detector", n), &d, |b, d| {
            b.iter(|| is_electrical_via_dual(d, &order).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("find_order", n), &d, |b, d| {
            b.iter(|| find_circular_order(d).unwrap())
        });
    }
    group.finish();
}

fn grassmann(c: &mut Criterion) {
    let mut group = c.benchmark_group("grassmann");
    group.sample_size(10);
    for n in [4, 5, 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + n as u64);
        let d = resistance_matrix(&random_planar_network(&mut rng, n, 2 * n + 4)).unwrap();
        let omega = build_omega_resistance(&d, &CircularOrder::identity(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("plucker", n), &omega, |b, o| {
            b.iter(|| plucker(o).unwrap())
        });
    }
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruct");
    group.sample_size(10);
    for n in [3, 4, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
        let (_, g) = random_minimal_network(&mut rng, n);
        let d = resistance_matrix(&g).unwrap();
        let order = CircularOrder::identity(n);
        group.bench_with_input(BenchmarkId::new("minimal", n), &d, |b, d| {
            b.iter(|| reconstruct(d, &order).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, networks, metrics, grassmann, reconstruction);
criterion_main!(benches);
