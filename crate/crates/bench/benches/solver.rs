use criterion::{black_box, criterion_group, criterion_main, Criterion};
use orthophase::construct::{ConstructionConfig, EquivariantMap};
use orthophase::funcspace::{PiecewiseFn, Problem};
use orthophase::quadrature::{integrate, psi_eval, FunctionalSpec, QuadConfig, SpecMode};
use orthophase::smoothstep::default_step;
use orthophase::solver::{solve_complex, solve_hobby_rice, SolveConfig};
use orthophase::sphere::SpherePoint;
use orthophase::PhaseTree;

use orthophase::zerofind::{find_zero, OddMap, ZeroFindConfig};
use orthophase::Complex64;

fn num(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bench_tau(c: &mut Criterion) {
    let step = default_step();
    c.bench_function("tau", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for k in 0..64 {
                acc += step.tau(black_box(-1.2 + k as f64 * 0.0375));
            }
            acc
        })
    });
}

fn sample_tree() -> PhaseTree {
    let inner = PhaseTree::blend(PhaseTree::constant(0.0), PhaseTree::constant(3.0), 0.4, 0.2)
        .unwrap();
    PhaseTree::blend(inner.clone(), inner.shift(1), 0.6, 0.3).unwrap()
}

fn bench_eval_g(c: &mut Criterion) {
    let tree = sample_tree();
    c.bench_function("eval_g nested blend", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for k in 0..64 {
                acc += tree.eval_g(black_box(k as f64 / 63.0));
            }
            acc
        })
    });
}

fn bench_integrate(c: &mut Criterion) {
    let f = PiecewiseFn::constant(num(1.0, 0.0));
    let tree = sample_tree();
    let cfg = QuadConfig::default();
    c.bench_function("integrate blend tree", |b| {
        b.iter(|| integrate(black_box(&f), black_box(&tree), &cfg).unwrap())
    });
}

fn bench_alpha(c: &mut Criterion) {
    let map = EquivariantMap::new(4, ConstructionConfig::standard()).unwrap();
    let x = SpherePoint::from_unnormalized(vec![0.3, -0.5, 0.2, 0.4, 0.68]).unwrap();
    c.bench_function("alpha on S^4", |b| b.iter(|| map.alpha(black_box(&x)).unwrap()));
}

fn bench_psi(c: &mut Criterion) {
    let fns = vec![
        PiecewiseFn::constant(num(1.0, 0.0)),
        PiecewiseFn::constant_cells(vec![0.0, 0.4, 1.0], vec![num(0.5, -0.3), num(-1.0, 0.2)])
            .unwrap(),
    ];
    let spec = FunctionalSpec::new(fns, SpecMode::Complex, vec![]).unwrap();
    let map = EquivariantMap::new(4, ConstructionConfig::standard()).unwrap();
    let x = SpherePoint::from_unnormalized(vec![0.3, -0.5, 0.2, 0.4, 0.68]).unwrap();
    let tree = map.alpha(&x).unwrap();
    let cfg = QuadConfig::default();
    c.bench_function("psi_eval m=4", |b| {
        b.iter(|| psi_eval(black_box(&spec), black_box(&tree), &cfg).unwrap())
    });
}

fn bench_find_zero(c: &mut Criterion) {
    c.bench_function("find_zero coordinates on S^2", |b| {
        b.iter(|| {
            let f = |x: &SpherePoint| vec![x.coords()[0], x.coords()[1]];
            let map = OddMap::new(2, &f);
            find_zero(&map, &ZeroFindConfig { abs_tol: 1e-9, ..Default::default() }).unwrap()
        })
    });
}

fn bench_solves(c: &mut Criterion) {
    let one = Problem::new(vec![PiecewiseFn::constant(num(1.0, 0.0))], true).unwrap();
    let cfg = SolveConfig::default();
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    group.bench_function("complex n=1", |b| b.iter(|| solve_complex(&one, &cfg).unwrap()));
    group.bench_function("hobby-rice n=1", |b| b.iter(|| solve_hobby_rice(&one, &cfg).unwrap()));
    group.finish();
}

criterion_group!(
    benches,
    bench_tau,
    bench_eval_g,
    bench_integrate,
    bench_alpha,
    bench_psi,
    bench_find_zero,
    bench_solves
);
criterion_main!(benches);
