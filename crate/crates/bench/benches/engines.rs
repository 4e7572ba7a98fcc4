use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fourier_pde::bessel::{bessel_j_zeros, bessel_jprime_zeros};
use fourier_pde::{
    fourier_coeff, parse_expr, solve_heat_mixed, solve_wave_disk, BoundaryRecord, Expr,
    FourierKind, IbvpSpec, Source, Truncation,
};

fn coefficients(c: &mut Criterion) {
    let f = Source::Expr(parse_expr("3*x^2*cos(7*x)").unwrap());
    let l = Expr::pi();
    c.bench_function("trig coefficients of 3x^2 cos 7x", |b| {
        b.iter(|| fourier_coeff(black_box(&f), "x", &l, FourierKind::Trig).unwrap())
    });
    let sq = Source::Expr(parse_expr("cos(x)^2").unwrap());
    c.bench_function("cosine coefficients of cos^2", |b| {
        b.iter(|| fourier_coeff(black_box(&sq), "x", &l, FourierKind::Cosine).unwrap())
    });
}

fn heat(c: &mut Criterion) {
    let spec = IbvpSpec::heat(
        Expr::one(),
        Expr::one(),
        parse_expr("x^2*(1-x)").unwrap(),
        BoundaryRecord::dirichlet(Expr::zero()),
        BoundaryRecord::dirichlet(Expr::zero()),
    );
    c.bench_function("heat solve, cubic data", |b| {
        b.iter(|| solve_heat_mixed(black_box(&spec), Truncation::Infinite).unwrap())
    });
}

fn bessel(c: &mut Criterion) {
    c.bench_function("first 10 zeros of J_3", |b| {
        b.iter(|| bessel_j_zeros(black_box(3.0), 10).unwrap())
    });
    c.bench_function("first 10 zeros of J_3'", |b| {
        b.iter(|| bessel_jprime_zeros(black_box(3.0), 10).unwrap())
    });
}

fn membrane(c: &mut Criterion) {
    let f = |r: f64, _: f64| 1.0 - r.powi(4);
    let g = |_: f64, _: f64| 0.0;
    c.bench_function("membrane modes k=2 l=2", |b| {
        b.iter(|| solve_wave_disk(1.0, 1.0, &f, &g, black_box(2), 2).unwrap())
    });
}

criterion_group!(benches, coefficients, heat, bessel, membrane);
criterion_main!(benches);
