//! Throughput comparisons: the data-parallel margin matrix against the
//! always-available sequential path, the merge-count margin against the
//! quadratic oracle, and the end-to-end builders.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use intransitive_dice::construct::{construct_model, group_game_partition, ConstructionPlan};
use intransitive_dice::partition::{q_value, RegularPartition};
use intransitive_dice::tournament::Tournament;
use intransitive_dice::verify::{oracle_q, oracle_q_matrix};

fn random_partition(rng: &mut impl Rng, n: usize, block_size: usize) -> RegularPartition {
    let mut vals: Vec<u64> = (1..=(n * block_size) as u64).collect();
    for i in (1..vals.len()).rev() {
        vals.swap(i, rng.gen_range(0..=i));
    }
    RegularPartition::new(vals.chunks(block_size).map(|c| c.to_vec()).collect()).unwrap()
}

fn bench_q_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_matrix");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for &(n, bs) in &[(8usize, 729usize), (16, 243), (64, 27)] {
        let p = random_partition(&mut rng, n, bs);
        group.bench_with_input(
            BenchmarkId::new("default", format!("{n}x{bs}")),
            &p,
            |b, p| b.iter(|| p.q_matrix()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("{n}x{bs}")),
            &p,
            |b, p| b.iter(|| p.q_matrix_sequential()),
        );
    }
    group.finish();
}

fn bench_pair_margin(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_margin");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for &size in &[100usize, 1000] {
        let p = random_partition(&mut rng, 2, size);
        let (a, b) = (p.block(0).to_vec(), p.block(1).to_vec());
        group.bench_with_input(BenchmarkId::new("merge_count", size), &size, |bench, _| {
            bench.iter(|| q_value(&a, &b).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", size), &size, |bench, _| {
            bench.iter(|| oracle_q(&a, &b).unwrap())
        });
    }
    group.finish();
}

fn bench_builders(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = Tournament::from_orientation(7, |_, _| rng.gen_bool(0.5));
    c.bench_function("construct_model_n7", |b| {
        b.iter(|| construct_model(&t, &ConstructionPlan::default()).unwrap())
    });
    c.bench_function("group_game_partition_n40", |b| {
        b.iter(|| group_game_partition(40).unwrap())
    });
    let p = group_game_partition(40).unwrap();
    c.bench_function("oracle_q_matrix_81x3", |b| b.iter(|| oracle_q_matrix(&p)));
}

criterion_group!(benches, bench_q_matrix, bench_pair_margin, bench_builders);
criterion_main!(benches);
