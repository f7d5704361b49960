use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nfactorial::analytic::{bertrand_failures, li};
use nfactorial::field::parse_field;
use nfactorial::solver::{search_general_m, search_m3, search_trivial_m3_heads};
use nfactorial::{IdealCountSieve, PiTable, SearchMode};

fn table(spec: &str, x: u64) -> PiTable {
    PiTable::new(Arc::new(IdealCountSieve::build(&parse_field(spec).unwrap(), x).unwrap()))
}

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    for spec in ["quadratic:-3", "poly:-1,-1,0,1"] {
        let field = parse_field(spec).unwrap();
        g.bench_function(format!("{spec} X=1e6"), |b| {
            b.iter(|| IdealCountSieve::build(black_box(&field), 1_000_000).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let t = table("quadratic:-3", 10_000);
    g.bench_function("m3 all X=3000", |b| b.iter(|| search_m3(&t, black_box(3000), SearchMode::All).unwrap()));
    g.bench_function("m3 trivial X=1e4", |b| b.iter(|| search_m3(&t, black_box(10_000), SearchMode::Trivial).unwrap()));
    g.bench_function("m4 all X=300", |b| b.iter(|| search_general_m(&t, black_box(300), 4, SearchMode::All, 5).unwrap()));
    g.bench_function("trivial heads to 1e4", |b| b.iter(|| search_trivial_m3_heads(&t, 2, black_box(10_000)).unwrap()));
    g.finish();
}

fn analytic(c: &mut Criterion) {
    let field = parse_field("quadratic:-3").unwrap();
    c.bench_function("bertrand A=3 x<=1e5", |b| b.iter(|| bertrand_failures(&field, 3.0, black_box(100_000)).unwrap()));
    c.bench_function("li(2, 1e12)", |b| b.iter(|| li(2.0, black_box(1e12)).unwrap()));
}

criterion_group!(benches, sieve, search, analytic);
criterion_main!(benches);
