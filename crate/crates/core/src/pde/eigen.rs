use super::{BoundaryRecord, EndKind};
use crate::error::{Error, Result};
use crate::expr::{Expr, INDEX};
use crate::quadrature::gauss_legendre_integrate;
use crate::scalar::Scalar;

/// Symbolic spectrum `λ_n = k_n²` with eigenfunctions `φ_n(x)` for `n ≥ 1`,
/// plus an optional constant mode with `λ_0 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedModes {
    pub eigenvalue: Expr,
    pub wavenumber: Expr,
    pub eigenfunction: Expr,
    pub norm: Expr,
    pub zero: Option<(Expr, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericMode {
    pub lambda: f64,
    pub eigenfunction: Expr,
    /// `∫₀ᴸ φ² dx`.
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EigenSystem {
    ClosedForm(ClosedModes),
    Numeric(Vec<NumericMode>),
}

/// Eigenpairs of `-φ'' = λφ` on `[0, L]` with the homogeneous versions of
/// `left` and `right`. Pure Dirichlet/Neumann combinations are symbolic;
/// anything involving a Robin end yields the first `count` modes numerically.
pub fn eigenpairs(
    left: &BoundaryRecord,
    right: &BoundaryRecord,
    l: &Expr,
    count: usize,
) -> Result<EigenSystem> {
    left.validate()?;
    right.validate()?;
    let n = Expr::sym(INDEX);
    let x = Expr::sym(super::X);
    let pi_over_l = &Expr::pi() / l;
    let half = &(&(&Expr::int(2) * &n) - &Expr::one()) * &(&pi_over_l / &Expr::int(2));
    let (k, is_sin, zero) = match (left.kind(), right.kind()) {
        (EndKind::Dirichlet, EndKind::Dirichlet) => (&n * &pi_over_l, true, None),
        (EndKind::Neumann, EndKind::Neumann) => {
            (&n * &pi_over_l, false, Some((Expr::one(), l.clone())))
        }
        (EndKind::Dirichlet, EndKind::Neumann) => (half, true, None),
        (EndKind::Neumann, EndKind::Dirichlet) => (half, false, None),
        _ => return robin(left, right, l, count).map(EigenSystem::Numeric),
    };
    let arg = &k * &x;
    Ok(EigenSystem::ClosedForm(ClosedModes {
        eigenvalue: &k * &k,
        eigenfunction: if is_sin {
            Expr::sin(&arg)
        } else {
            Expr::cos(&arg)
        },
        wavenumber: k,
        norm: l / &Expr::int(2),
        zero,
    }))
}

fn real(name: &str, e: &Expr) -> Result<f64> {
    e.as_scalar()
        .filter(|s| s.is_real())
        .map(|s| s.to_f64())
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "Robin eigenvalues need a numeric {}, got {}",
                name, e
            ))
        })
}

pub(crate) fn float(v: f64) -> Expr {
    Expr::scalar(Scalar::from_f64_decimal(v).unwrap_or_else(Scalar::zero))
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..300 {
        let m = 0.5 * (a + b);
        if b - a <= 1e-13 * m.abs().max(f64::MIN_POSITIVE) || m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sign changes of `f` on a uniform grid of `(lo, hi]`, refined by bisection.
fn roots_on_grid(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut prev = (lo, f(lo));
    for i in 1..=steps {
        let x = lo + h * i as f64;
        let fx = f(x);
        if fx == 0.0 {
            out.push(x);
        } else if prev.1 != 0.0 && (prev.1 < 0.0) != (fx < 0.0) {
            out.push(bisect(f, prev.0, x));
        }
        prev = (x, fx);
    }
    out
}

fn robin(
    left: &BoundaryRecord,
    right: &BoundaryRecord,
    l: &Expr,
    count: usize,
) -> Result<Vec<NumericMode>> {
    if count == 0 {
        return Err(Error::invalid("Robin spectrum needs a positive mode count"));
    }
    let (a1, b1) = (real("α₁", &left.alpha)?, real("β₁", &left.beta)?);
    let (a2, b2) = (real("α₂", &right.alpha)?, real("β₂", &right.beta)?);
    let len = real("L", l)?;
    let cross = a2 * b1 - a1 * b2;
    let det0 = cross - a1 * a2 * len;
    let scale = [a1, b1, a2, b2].iter().fold(0f64, |m, v| m.max(v.abs()));

    // φ = β₁μ cos μx − α₁ sin μx satisfies the left condition; the right
    // condition divided by μ gives the characteristic function
    let trig =
        |mu: f64| cross * (mu * len).cos() - (a1 * a2 / mu + b1 * b2 * mu) * (mu * len).sin();
    let hyper = |k: f64| cross - (a1 * a2 / k - b1 * b2 * k) * (k * len).tanh();

    let mut modes: Vec<(f64, Box<dyn Fn(f64) -> f64>, Expr)> = Vec::new();
    let x = Expr::sym(super::X);

    let reach = if b1 * b2 != 0.0 {
        (cross.abs() + (a1 * a2).abs()) / (b1 * b2).abs()
    } else if cross != 0.0 {
        (a1 * a2).abs() / cross.abs()
    } else {
        0.0
    };
    let kmax = 2.0 + 2.0 * reach + 10.0 / len;
    let mut ks = roots_on_grid(&hyper, kmax * 1e-7, kmax, 8000);
    ks.sort_by(|p, q| q.partial_cmp(p).unwrap());
    for k in ks {
        let f = move |s: f64| b1 * k * (k * s).cosh() - a1 * (k * s).sinh();
        let e = &(&float(b1 * k) * &Expr::cosh(&(&float(k) * &x)))
            - &(&float(a1) * &Expr::sinh(&(&float(k) * &x)));
        modes.push((-k * k, Box::new(f), e));
    }
    if det0.abs() <= 1e-13 * scale.max(1.0) * (1.0 + len) {
        let f = move |s: f64| b1 - a1 * s;
        modes.push((0.0, Box::new(f), &float(b1) - &(&float(a1) * &x)));
    }
    let step = std::f64::consts::PI / len;
    let mut hi = step;
    let mut lo = step * 1e-7;
    while modes.len() < count {
        for mu in roots_on_grid(&trig, lo, hi, 64) {
            let f = move |s: f64| b1 * mu * (mu * s).cos() - a1 * (mu * s).sin();
            let arg = &float(mu) * &x;
            let e = &(&float(b1 * mu) * &Expr::cos(&arg)) - &(&float(a1) * &Expr::sin(&arg));
            modes.push((mu * mu, Box::new(f), e));
        }
        lo = hi;
        hi += step;
        if hi > step * (count as f64 + 50.0) + kmax {
            return Err(Error::Numeric(
                "Robin eigenvalue search did not find enough roots".into(),
            ));
        }
    }
    modes.truncate(count);
    Ok(modes
        .into_iter()
        .enumerate()
        .map(|(i, (lambda, f, eigenfunction))| {
            let nodes = 64 + 8 * i;
            let norm = gauss_legendre_integrate(|s| f(s) * f(s), 0.0, len, nodes);
            NumericMode {
                lambda,
                eigenfunction,
                norm,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn closed(left: BoundaryRecord, right: BoundaryRecord) -> ClosedModes {
        match eigenpairs(&left, &right, &Expr::int(2), 0).unwrap() {
            EigenSystem::ClosedForm(c) => c,
            _ => panic!("expected closed form"),
        }
    }

    #[test]
    fn classical_spectra() {
        let d = || BoundaryRecord::dirichlet(Expr::zero());
        let nm = || BoundaryRecord::neumann(Expr::zero());
        let dd = closed(d(), d());
        assert!(dd.eigenvalue.equivalent(&parse_expr("(n*pi/2)^2").unwrap()));
        assert!(dd
            .eigenfunction
            .equivalent(&parse_expr("sin(n*pi*x/2)").unwrap()));
        assert_eq!(dd.norm, Expr::one());
        let nn = closed(nm(), nm());
        assert_eq!(nn.zero, Some((Expr::one(), Expr::int(2))));
        let dn = closed(d(), nm());
        assert!(dn
            .eigenfunction
            .equivalent(&parse_expr("sin((2*n-1)*pi*x/4)").unwrap()));
    }

    #[test]
    fn robin_roots_solve_characteristic_equation() {
        let r = || BoundaryRecord::new(Expr::one(), Expr::one(), Expr::zero());
        let EigenSystem::Numeric(m) = eigenpairs(&r(), &r(), &Expr::one(), 4).unwrap() else {
            panic!("expected numeric modes");
        };
        // φ = e^{-x} is an eigenfunction with λ = -1 for this orientation
        assert!((m[0].lambda + 1.0).abs() < 1e-12, "{}", m[0].lambda);
        for w in m.windows(2) {
            assert!(w[0].lambda < w[1].lambda);
        }
        // cross term vanishes, so the remaining roots are μ = kπ
        let pi2 = std::f64::consts::PI.powi(2);
        for (k, mode) in m[1..].iter().enumerate() {
            let want = pi2 * ((k + 1) * (k + 1)) as f64;
            assert!(
                (mode.lambda - want).abs() < 1e-10 * want,
                "{} {}",
                mode.lambda,
                want
            );
        }
    }
}
