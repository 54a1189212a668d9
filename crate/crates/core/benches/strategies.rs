use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use menon::arithfn::{
    klee_phi, klee_phi_oracle, sieve_build, SieveKind, DEFAULT_ENUMERATION_BOUND, DEFAULT_SIEVE_MEMORY_BYTES,
};
use menon::factorint::factorize_u64;
use menon::identities::shifted_gcd_sum;
use menon::identities::VerifyConfig;
use menon::par::Exec;
use menon::sweep::{self, IdentityKind, Span, SweepSpec};
use menon::SParam;

fn klee_strategies(c: &mut Criterion) {
    let s = SParam::new(2).unwrap();
    let mut group = c.benchmark_group("klee_phi");
    for limit in [1_000u64, 10_000] {
        group.bench_with_input(BenchmarkId::new("closed_form", limit), &limit, |b, &limit| {
            b.iter(|| {
                (1..=limit).map(|n| klee_phi(&factorize_u64(n).unwrap(), s).unwrap().get()).sum::<u128>()
            })
        });
        group.bench_with_input(BenchmarkId::new("sieve", limit), &limit, |b, &limit| {
            b.iter(|| {
                sieve_build(black_box(limit), s, SieveKind::KleePhi, DEFAULT_SIEVE_MEMORY_BYTES).unwrap()
            })
        });
    }
    group.bench_function(BenchmarkId::new("oracle", 300), |b| {
        b.iter(|| {
            (1..=300u64)
                .map(|n| klee_phi_oracle(n, s, DEFAULT_ENUMERATION_BOUND).unwrap().get())
                .sum::<u128>()
        })
    });
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("shifted_gcd_sum");
    group.sample_size(20);
    let s = SParam::new(2).unwrap();
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(BenchmarkId::new(name, "N=144 k=2 r=1"), |b| {
            b.iter(|| shifted_gcd_sum(black_box(144), s, &[1, 5], 1, u128::MAX, exec).unwrap())
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let mut spec = SweepSpec::new(IdentityKind::Main, Span::new(1, 64));
    spec.s = Span::new(1, 3);
    spec.k = Span::new(1, 2);
    spec.r = Span::new(0, 1);
    spec.max_modulus = Some(64);
    let inst = sweep::instances(&spec).unwrap();
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).max(2);
    for (name, w) in [("one_worker", 1), ("pool", workers)] {
        group.bench_function(name, |b| b.iter(|| sweep::run(&inst, &VerifyConfig::default(), w).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, klee_strategies, enumeration, sweeps);
criterion_main!(benches);
