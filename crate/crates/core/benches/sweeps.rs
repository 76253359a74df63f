//! Sequential vs parallel execution of the heavier sweeps.
//!
//! Without the `parallel` feature both arms run sequentially.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use emologic::axioms::{soundness_sweep_with, AxiomSchema, SweepLimits};
use emologic::fixtures;
use emologic::par::Exec;
use emologic::search::{check_pair_equivalence, enumerate_models, find_separating_pair, SearchBounds};
use emologic::semantics::duality_sweep;
use emologic::syntax::parse_formula;
use emologic::Fragment;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn duality(c: &mut Criterion) {
    let gift = fixtures::preference("gift").unwrap();
    let mut g = c.benchmark_group("duality gift depth 3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| duality_sweep(black_box(&gift), 3, exec).unwrap())
        });
    }
    g.finish();
}

fn soundness(c: &mut Criterion) {
    let battle = fixtures::preference("battle").unwrap();
    let schemas = AxiomSchema::all();
    let mut g = c.benchmark_group("soundness battle depth 1");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| soundness_sweep_with(&battle, "battle", &schemas, 1, SweepLimits::default(), exec).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let l = fixtures::preference("undef-left").unwrap();
    let r = fixtures::preference("undef-right").unwrap();
    let target = parse_formula("S[a] p").unwrap();
    let bounds = SearchBounds { max_formula_depth: 2, ..SearchBounds::worlds(3) };
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("equivalence depth 4", name), &exec, |b, &exec| {
            b.iter(|| check_pair_equivalence(&l, &r, Fragment::NoSad, 4, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("models up to 4 worlds", name), &exec, |b, &exec| {
            b.iter(|| enumerate_models(&SearchBounds::worlds(4), exec).unwrap().len())
        });
        g.bench_with_input(BenchmarkId::new("separating pair", name), &exec, |b, &exec| {
            b.iter(|| find_separating_pair(Fragment::NoSad, &target, &bounds, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, duality, soundness, search);
criterion_main!(benches);
