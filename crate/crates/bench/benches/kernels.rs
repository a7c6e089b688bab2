use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use achord::analyticity::is_analytic;
use achord::curves::{brute_force_rooted_curves, Passport};
use achord::enumeration::{count_analytic_linear, Budget};
use achord::graph::{check_bush, split_decomposition, BushMethod};
use achord::series::{solve_a, solve_c};
use achord::{canonical_cyclic, parse_diagram, SimpleGraph};

fn enumeration(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("count_analytic_linear");
    g.sample_size(10);
    for n in [5, 6, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| count_analytic_linear(n, &budget).unwrap())
        });
    }
    g.finish();
}

fn diagrams(c: &mut Criterion) {
    let d = parse_diagram("abacdecbdfefghgijihkjlkl").unwrap();
    c.bench_function("is_analytic/12 chords", |b| b.iter(|| is_analytic(black_box(&d))));
    c.bench_function("canonical_cyclic/12 chords", |b| b.iter(|| canonical_cyclic(black_box(&d))));
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    for order in [20, 40] {
        g.bench_with_input(BenchmarkId::new("solve_a", order), &order, |b, &n| b.iter(|| solve_a(n).unwrap()));
        g.bench_with_input(BenchmarkId::new("solve_c", order), &order, |b, &n| b.iter(|| solve_c(n).unwrap()));
    }
    g.finish();
}

fn graphs(c: &mut Criterion) {
    // a connected cograph-like bush and a prime cycle
    let mut bush = SimpleGraph::new(10);
    for (a, b) in [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7), (7, 8), (7, 9), (8, 9)] {
        bush.add_edge(a, b);
    }
    let cycle = SimpleGraph::cycle(10);
    c.bench_function("split_decomposition/bush 10", |b| b.iter(|| split_decomposition(black_box(&bush))));
    c.bench_function("split_decomposition/C10", |b| b.iter(|| split_decomposition(black_box(&cycle))));
    for m in BushMethod::ALL {
        c.bench_function(&format!("check_bush/{m:?}"), |b| b.iter(|| check_bush(black_box(&bush), m)));
    }
}

fn curves(c: &mut Criterion) {
    let budget = Budget::default();
    let k: Passport = "2,1".parse().unwrap();
    let mut g = c.benchmark_group("curves");
    g.sample_size(10);
    g.bench_function("brute_force_rooted/(2,1)", |b| b.iter(|| brute_force_rooted_curves(&k, &budget).unwrap()));
    g.finish();
}

criterion_group!(benches, enumeration, diagrams, series, graphs, curves);
criterion_main!(benches);
