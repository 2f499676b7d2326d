use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ribbonpoly::brauer::gram_det;
use ribbonpoly::classical::{s_polynomial, Engine};
use ribbonpoly::fixtures;
use ribbonpoly::ribbon::enumerate::cubic_multigraphs;
use ribbonpoly::spatial::{yamada, SpatialDiagram, YamadaVariant};

fn s_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_polynomial");
    for (name, map) in [("k4", fixtures::k4()), ("k33", fixtures::k33_std())] {
        for engine in [Engine::StateSum, Engine::Recursive, Engine::Brauer] {
            group.bench_with_input(BenchmarkId::new(engine.name(), name), &map, |b, m| {
                b.iter(|| s_polynomial(black_box(m), engine).unwrap())
            });
        }
    }
    group.finish();
}

fn gramian(c: &mut Criterion) {
    c.bench_function("gram_det_4", |b| b.iter(|| gram_det(black_box(4), false).unwrap()));
}

fn spatial(c: &mut Criterion) {
    let diagram = SpatialDiagram::from_document(&fixtures::document(fixtures::K4_SQUARE)).unwrap();
    c.bench_function("yamada_k4_square", |b| b.iter(|| yamada(black_box(&diagram), YamadaVariant::S).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("cubic_multigraphs");
    group.sample_size(10);
    for n in [6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| cubic_multigraphs(n)));
    }
    group.finish();
}

criterion_group!(benches, s_engines, gramian, spatial, enumeration);
criterion_main!(benches);
