use fourier_pde::bessel::{bessel_j, bessel_j_zeros, bessel_jprime_zeros};
use fourier_pde::{
    differentiate, eigenpairs, eval_numeric, fourier_coeff, fourier_series, integrate_definite, parse_expr,
    solve_heat_mixed, Bindings, BoundaryRecord, EigenSystem, Expr, FourierKind, IbvpSpec, OpaqueImpls,
    PiecewiseExpr, Scalar, Source, Truncation,
};
use proptest::prelude::*;

/// Fragment expression with its own float evaluator, independent of the kernel.
#[derive(Clone, Debug)]
enum Frag {
    Const(i64),
    X,
    Sin(i64, i64),
    Cos(i64, i64),
    Exp(i64),
    Add(Box<Frag>, Box<Frag>),
    Mul(Box<Frag>, Box<Frag>),
    Pow(Box<Frag>, u32),
}

impl Frag {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Frag::Const(c) => *c as f64,
            Frag::X => x,
            Frag::Sin(k, m) => (*k as f64 * x + *m as f64 * std::f64::consts::PI / 4.0).sin(),
            Frag::Cos(k, m) => (*k as f64 * x + *m as f64 * std::f64::consts::PI / 4.0).cos(),
            Frag::Exp(k) => (*k as f64 * x / 3.0).exp(),
            Frag::Add(a, b) => a.eval(x) + b.eval(x),
            Frag::Mul(a, b) => a.eval(x) * b.eval(x),
            Frag::Pow(a, k) => a.eval(x).powi(*k as i32),
        }
    }

    fn render(&self) -> String {
        match self {
            Frag::Const(c) => format!("({})", c),
            Frag::X => "x".into(),
            Frag::Sin(k, m) => format!("sin({}*x+{}*pi/4)", k, m),
            Frag::Cos(k, m) => format!("cos({}*x+{}*pi/4)", k, m),
            Frag::Exp(k) => format!("exp({}*x/3)", k),
            Frag::Add(a, b) => format!("({} + {})", a.render(), b.render()),
            Frag::Mul(a, b) => format!("({})*({})", a.render(), b.render()),
            Frag::Pow(a, k) => format!("({})^{}", a.render(), k),
        }
    }
}

fn frag() -> impl Strategy<Value = Frag> {
    let leaf = prop_oneof![
        (-5i64..=5).prop_map(Frag::Const),
        Just(Frag::X),
        (-4i64..=4, -3i64..=3).prop_map(|(k, m)| Frag::Sin(k, m)),
        (-4i64..=4, -3i64..=3).prop_map(|(k, m)| Frag::Cos(k, m)),
        (-3i64..=3).prop_map(Frag::Exp),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Frag::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Frag::Mul(Box::new(a), Box::new(b))),
            (inner, 2u32..=3).prop_map(|(a, k)| Frag::Pow(Box::new(a), k)),
        ]
    })
}

/// Polynomial-trig fragment suitable as a Fourier source.
fn source() -> impl Strategy<Value = String> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0usize..3, 1i64..=6), 1..=3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, p, kind, k)| {
                let trig = ["1", "sin", "cos"][kind];
                if kind == 0 {
                    format!("({})*x^{}", c, p)
                } else {
                    format!("({})*x^{}*{}({}*x)", c, p, trig, k)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn at(e: &Expr, vars: &[(&str, f64)]) -> f64 {
    let b: Bindings = vars.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    eval_numeric(e, &b, &OpaqueImpls::new()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, 0u32..=2, any::<bool>()).prop_map(|(n, d, pk, im)| {
        let base = &Scalar::from_ratio(n, d) * &Scalar::pi().pow(pk as i32);
        if im {
            &base * &Scalar::i()
        } else {
            base
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_value_preserving_and_idempotent(f in frag(), xs in prop::collection::vec(-1.5f64..1.5, 20)) {
        let e = parse_expr(&f.render()).unwrap();
        for x in xs {
            let want = f.eval(x);
            prop_assert!(close(at(&e, &[("x", x)]), want, 1e-10), "{} at {}", f.render(), x);
        }
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn derivative_of_integral_recovers_integrand(f in frag(), x in -1.0f64..1.0) {
        let e = parse_expr(&f.render()).unwrap();
        let Ok(big) = integrate_definite(&e, "x", &Expr::zero(), &Expr::sym("u")) else { return Ok(()); };
        if big.contains_opaque() {
            return Ok(());
        }
        let d = differentiate(&big, "u").unwrap().subst("u", &Expr::sym("x"));
        prop_assert!(close(at(&d, &[("x", x)]), at(&e, &[("x", x)]), 1e-9), "{}", e);
    }

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn piecewise_integral_is_additive(body in source(), m in 1i64..9) {
        let pw = PiecewiseExpr::from_json(
            "x",
            &format!(r#"[{{"interval": ["-1", "0"], "expr": "x^2"}}, {{"interval": ["0", "2"], "expr": "{}"}}]"#, body),
        ).unwrap();
        let (a, b, mid) = (Scalar::from_int(-1), Scalar::from_int(2), Scalar::from_ratio(m, 3) - Scalar::from_int(1));
        let whole = pw.integrate(&a, &b).unwrap();
        let split = &pw.integrate(&a, &mid).unwrap() + &pw.integrate(&mid, &b).unwrap();
        prop_assert!(whole.equivalent(&split));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coefficients_are_linear(f in source(), g in source()) {
        let sum = format!("{} + {}", f, g);
        let co = |s: &str| fourier_coeff(&Source::Expr(parse_expr(s).unwrap()), "x", &Expr::pi(), FourierKind::Trig).unwrap();
        let (cf, cg, cs) = (co(&f), co(&g), co(&sum));
        let union: std::collections::BTreeSet<u64> = cf.singular_indices().into_iter().chain(cg.singular_indices()).collect();
        prop_assert!(cs.singular_indices().iter().all(|j| union.contains(j)));
        for n in 0..=12i64 {
            prop_assert!(cs.a_at(n).equivalent(&(&cf.a_at(n) + &cg.a_at(n))), "a{}", n);
            prop_assert!(cs.b_at(n).equivalent(&(&cf.b_at(n) + &cg.b_at(n))), "b{}", n);
        }
    }

    #[test]
    fn parity_zeroes_the_other_family(f in source()) {
        let even = format!("({}) + ({})", f, f.replace('x', "(-x)"));
        let odd = format!("({}) - ({})", f, f.replace('x', "(-x)"));
        let co = |s: &str| fourier_coeff(&Source::Expr(parse_expr(s).unwrap()), "x", &Expr::pi(), FourierKind::Trig).unwrap();
        let (ce, co_) = (co(&even), co(&odd));
        for n in 1..=12i64 {
            prop_assert!(ce.b_at(n).is_zero());
            prop_assert!(co_.a_at(n).is_zero());
        }
        prop_assert!(co_.a0.is_zero());
    }

    #[test]
    fn singular_indices_are_exactly_the_denominator_roots(f in source()) {
        let c = fourier_coeff(&Source::Expr(parse_expr(&f).unwrap()), "x", &Expr::pi(), FourierKind::Trig).unwrap();
        let singular = c.singular_indices();
        let bound = 10 * singular.iter().copied().max().unwrap_or(1).max(8);
        for general in [&c.an, &c.bn] {
            let den = general.denominator();
            for n in 1..=bound {
                let vanishes = den.at_index(n as i64).is_zero();
                prop_assert!(!vanishes || singular.contains(&n), "denominator of {} vanishes at {}", general, n);
            }
        }
    }

    #[test]
    fn expansion_matches_instantiated_series(f in source(), n in 1u64..10) {
        let src = Source::Expr(parse_expr(&f).unwrap());
        let inf = fourier_series(&src, "x", &Expr::pi(), Truncation::Infinite, FourierKind::Trig).unwrap();
        let fin = fourier_series(&src, "x", &Expr::pi(), Truncation::Finite(n), FourierKind::Trig).unwrap();
        prop_assert_eq!(fin.closed, inf.truncate(n));
    }

    #[test]
    fn homogeneous_boundaries_hold_for_every_truncation(f in source(), n in 1u64..12) {
        let dirichlet = BoundaryRecord::dirichlet(Expr::zero());
        let spec = IbvpSpec::heat(Expr::one(), Expr::one(), parse_expr(&f).unwrap(), dirichlet.clone(), dirichlet);
        let u = solve_heat_mixed(&spec, Truncation::Finite(n)).unwrap().closed;
        prop_assert!(u.subst("x", &Expr::zero()).is_zero());
        prop_assert!(u.subst("x", &Expr::one()).is_zero());
    }

    #[test]
    fn robin_spectrum_is_ordered_and_nonnegative(a1 in 0.1f64..4.0, b1 in 0.1f64..4.0, a2 in 0.1f64..4.0, b2 in 0.1f64..4.0, l in 0.5f64..3.0) {
        // outward-normal orientation: a1 u(0) - b1 u'(0) = 0, a2 u(L) + b2 u'(L) = 0
        let s = |v: f64| Expr::scalar(Scalar::from_f64_exact(v).unwrap());
        let left = BoundaryRecord::new(s(a1), s(-b1), Expr::zero());
        let right = BoundaryRecord::new(s(a2), s(b2), Expr::zero());
        let EigenSystem::Numeric(modes) = eigenpairs(&left, &right, &s(l), 6).unwrap() else {
            panic!("Robin data gave closed-form modes");
        };
        prop_assert!(modes.windows(2).all(|w| w[0].lambda < w[1].lambda));
        prop_assert!(modes[0].lambda >= 0.0, "lambda0 = {}", modes[0].lambda);
    }
}

#[test]
fn bessel_zeros_interlace_and_vanish() {
    for nu in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let a = bessel_j_zeros(nu, 11).unwrap();
        let b = bessel_j_zeros(nu + 1.0, 10).unwrap();
        for k in 0..10 {
            assert!(a[k] < b[k] && b[k] < a[k + 1], "nu = {}, k = {}", nu, k);
            assert!(bessel_j(nu, a[k]).unwrap().abs() <= 1e-11);
        }
        if nu > 0.0 {
            let d = bessel_jprime_zeros(nu, 11).unwrap();
            for k in 0..10 {
                assert!(d[k] < a[k] && a[k] < d[k + 1], "nu = {}, k = {}", nu, k);
            }
        }
    }
}

#[test]
fn zero_requests_are_deterministic() {
    let a = bessel_j_zeros(3.5, 20).unwrap();
    let b = bessel_j_zeros(3.5, 20).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
}
