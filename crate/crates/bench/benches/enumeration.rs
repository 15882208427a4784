use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stratifold::{
    all_graphs, brute_force_census, constructive_census, enum_rooted, is_simply_connected,
    DEFAULT_LIMIT,
};

fn rooted(c: &mut Criterion) {
    let mut group = c.benchmark_group("enum_rooted");
    for n in [8, 10, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enum_rooted(n).unwrap())
        });
    }
    group.finish();
}

fn census_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for n in [6, 7] {
        group.bench_with_input(BenchmarkId::new("brute", n), &n, |b, &n| {
            b.iter(|| brute_force_census(n, DEFAULT_LIMIT).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("constructive", n), &n, |b, &n| {
            b.iter(|| {
                (0..=3)
                    .map(|k| constructive_census(n, k).unwrap().len())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let graphs: Vec<_> = all_graphs(7, DEFAULT_LIMIT)
        .unwrap()
        .into_values()
        .collect();
    c.bench_function("is_simply_connected/n7", |b| {
        b.iter(|| {
            graphs
                .iter()
                .filter(|g| is_simply_connected(black_box(g)).accepted)
                .count()
        })
    });
}

criterion_group!(benches, rooted, census_engines, classification);
criterion_main!(benches);
