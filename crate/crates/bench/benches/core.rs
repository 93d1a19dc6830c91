use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pauli_forge::clifford::{bfs_closure, generators, GeneratorSet, DEFAULT_MAX_ORDER};
use pauli_forge::passes::{builtin, derive_amy_toffoli, derive_full_adder};
use pauli_forge::rules::{check_soundness, enumerate_moves};
use pauli_forge::semantics::equivalent;
use pauli_forge::{Axis, RuleId};

fn equivalence(c: &mut Criterion) {
    let a = builtin("amy-toffoli").unwrap();
    let b = builtin("barenco-toffoli").unwrap();
    c.bench_function("equivalent/amy_vs_barenco", |bench| {
        bench.iter(|| equivalent(black_box(&a), black_box(&b)).unwrap())
    });
}

fn moves(c: &mut Criterion) {
    let adder = builtin("full-adder-final").unwrap();
    c.bench_function("enumerate_moves/full_adder", |bench| {
        bench.iter(|| enumerate_moves(black_box(&adder)).unwrap())
    });
}

fn derivations(c: &mut Criterion) {
    let amy = derive_amy_toffoli().unwrap();
    let adder = derive_full_adder().unwrap();
    let mut g = c.benchmark_group("derive");
    g.sample_size(10);
    g.bench_function("amy_toffoli", |bench| bench.iter(|| amy.execute().unwrap()));
    g.bench_function("full_adder", |bench| bench.iter(|| adder.execute().unwrap()));
    g.finish();
}

fn closures(c: &mut Criterion) {
    let one = generators(GeneratorSet::Rooted, 1, Axis::X, Axis::Z).unwrap();
    let two = generators(GeneratorSet::Standard, 2, Axis::X, Axis::Z).unwrap();
    let mut g = c.benchmark_group("clifford_closure");
    g.sample_size(10);
    g.bench_function("one_qubit", |bench| bench.iter(|| bfs_closure(&one, DEFAULT_MAX_ORDER).unwrap()));
    g.bench_function("two_qubit", |bench| bench.iter(|| bfs_closure(&two, DEFAULT_MAX_ORDER).unwrap()));
    g.finish();
}

fn soundness(c: &mut Criterion) {
    let mut g = c.benchmark_group("soundness");
    g.sample_size(10);
    g.bench_function("thm2_50_trials", |bench| {
        bench.iter(|| check_soundness(RuleId::Thm2BarencoExtended, 50, 0))
    });
    g.finish();
}

criterion_group!(benches, equivalence, moves, derivations, closures, soundness);
criterion_main!(benches);
