use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use guillotine_bench::{instance, spec};
use guillotine_core::oracle::{bounded_guillotine_search, certify_instance, min_segment_cover, SearchOptions};
use guillotine_core::reduction::audit;
use guillotine_core::{
    build_instance, corpus, guillotine_witness, sat_solve, verify_guillotine_sequence, verify_segment_cover,
    BuildOptions,
};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for name in ["two-nested-positive", "unsat-six", "four-var-six"] {
        let s = spec(name);
        group.bench_function(name, |b| b.iter(|| build_instance(black_box(&s), &BuildOptions::default()).unwrap()));
    }
    group.finish();
}

fn audit_scan(c: &mut Criterion) {
    let inst = instance("unsat-six");
    c.bench_function("audit/unsat-six", |b| b.iter(|| audit(black_box(&inst))));
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let inst = instance("unsat-six");
    group.bench_function("certify/unsat-six", |b| {
        b.iter(|| certify_instance(&inst, &SearchOptions::default()).unwrap())
    });
    let points = corpus::nine_point_gap();
    group.bench_function("segments/nine-point-gap", |b| {
        b.iter(|| min_segment_cover(black_box(&points), 4, &SearchOptions::default()).unwrap())
    });
    group.bench_function("guillotine/nine-point-gap", |b| {
        b.iter(|| bounded_guillotine_search(black_box(&points), 4).unwrap())
    });
    group.finish();
}

fn verify(c: &mut Criterion) {
    let inst = instance("four-var-six");
    let assignment = sat_solve(&inst.formula).expect("satisfiable");
    let witness = guillotine_witness(&inst, &assignment).unwrap();
    let points = inst.coordinates();
    c.bench_function("verify/cover/four-var-six", |b| {
        b.iter(|| verify_segment_cover(black_box(&points), &witness.cover, inst.budget))
    });
    c.bench_function("verify/cuts/four-var-six", |b| {
        b.iter(|| verify_guillotine_sequence(black_box(&points), &witness.cuts, inst.budget))
    });
}

criterion_group!(benches, build, audit_scan, oracle, verify);
criterion_main!(benches);
