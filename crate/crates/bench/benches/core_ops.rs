use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use permfam::bijection::{compose, decompose};
use permfam::counting::eulerian;
use permfam::decimal::{decode, encode};
use permfam::primitive::count_primitive;
use permfam::Permutation;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    Permutation::new(values).unwrap()
}

fn bench_bijection(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    for n in [8usize, 64, 256] {
        c.bench_function(&format!("decompose n={}", n), |b| {
            b.iter_batched(
                || random_perm(&mut rng, n),
                |p| decompose(&p),
                BatchSize::SmallInput,
            )
        });
        c.bench_function(&format!("compose n={}", n), |b| {
            b.iter_batched(
                || decompose(&random_perm(&mut rng, n)),
                |r| compose(&r, n).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn bench_decimal(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(2);
    for n in [8usize, 64, 256] {
        c.bench_function(&format!("decimal encode n={}", n), |b| {
            b.iter_batched(
                || random_perm(&mut rng, n),
                |p| encode(&p),
                BatchSize::SmallInput,
            )
        });
        c.bench_function(&format!("decimal decode n={}", n), |b| {
            b.iter_batched(
                || encode(&random_perm(&mut rng, n)),
                |code| decode(&code).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn bench_counting(c: &mut Criterion) {
    c.bench_function("eulerian 20,20", |b| b.iter(|| eulerian(20, 20)));
    c.bench_function("count_primitive 6,10", |b| {
        b.iter(|| count_primitive(6, 10))
    });
}

criterion_group!(benches, bench_bijection, bench_decimal, bench_counting);
criterion_main!(benches);
