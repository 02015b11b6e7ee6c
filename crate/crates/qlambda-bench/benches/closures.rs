use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex;
use qlambda::shapes::polygon_vertices_in;
use qlambda::{
    closure_rank, enumerate_radius, lambda_n_element, make_context, membership, planar_closure, shapes::cyclotomic_context,
    IntPolynomial, ModelSetSpec, PointSet, Rat, SearchBudget,
};

fn golden() -> qlambda::Context {
    make_context(&IntPolynomial::from_i64(&[1, -3, 1]), Complex::new(2.6, 0.0)).unwrap()
}

fn rank(c: &mut Criterion) {
    let ctx = golden();
    let seed = PointSet::from_coords(&ctx, &[&[0, 0], &[1, 0]]).unwrap();
    c.bench_function("closure_rank golden level 3", |b| b.iter(|| closure_rank(black_box(&seed), 3).unwrap()));
}

fn model_set(c: &mut Criterion) {
    let spec = ModelSetSpec::unit(&golden()).unwrap();
    let r = Rat::from_integer(200.into());
    c.bench_function("enumerate_radius golden r=200", |b| b.iter(|| enumerate_radius(black_box(&spec), &r).unwrap()));
}

fn groupoid(c: &mut Criterion) {
    // (x^2 - x + 1)^3
    let f = IntPolynomial::from_i64(&[1, -3, 6, -7, 6, -3, 1]);
    c.bench_function("membership degree 6", |b| b.iter(|| membership(black_box(&f))));
}

fn planar(c: &mut Criterion) {
    let cyc = cyclotomic_context(5).unwrap();
    let lam = lambda_n_element(5, &cyc).unwrap();
    let seed = polygon_vertices_in(&cyc, 5).unwrap();
    let r = Rat::from_integer(8.into());
    let budget = SearchBudget::new(50_000, 10_000, 64);
    let mut g = c.benchmark_group("planar");
    g.sample_size(10);
    g.bench_function("pentagon closure r=8", |b| b.iter(|| planar_closure(black_box(&seed), &lam, &r, &budget).unwrap()));
    g.finish();
}

criterion_group!(benches, rank, model_set, groupoid, planar);
criterion_main!(benches);
