use std::collections::BTreeSet;

use num_complex::Complex64;

use super::eigen::{eigenpairs, float, EigenSystem};
use super::{boundary_lift, fresh_symbol, BoundaryRecord, Equation, IbvpSpec, T, X};
use crate::error::{Error, Result};
use crate::expr::{differentiate, eval_complex, integrate_definite, Bindings, Expr, OpaqueImpls};
use crate::fourier::{denominator_roots, mode_resonances};
use crate::quadrature::adaptive;
use crate::series::{SeriesSolution, Truncation};

/// `∫₀ᵗ e^{-rate(t-s)} q(s) ds`.
pub(crate) fn duhamel_first_order(q: &Expr, rate: &Expr) -> Result<Expr> {
    if q.is_zero() {
        return Ok(Expr::zero());
    }
    let s = fresh_symbol(&[q, rate]);
    let sv = Expr::sym(&s);
    let kernel = Expr::exp(&-(rate * &(&Expr::sym(T) - &sv)));
    integrate_definite(
        &(&kernel * &q.subst(T, &sv)),
        &s,
        &Expr::zero(),
        &Expr::sym(T),
    )
}

/// Data of the homogeneous problem left after subtracting the lift.
struct Reduced {
    lift: Expr,
    q: Expr,
    f: Expr,
    left: BoundaryRecord,
    right: BoundaryRecord,
}

fn homogenize(spec: &IbvpSpec) -> Result<Reduced> {
    let w = boundary_lift(&spec.left, &spec.right, &spec.l)?;
    let wt = differentiate(&w, T)?;
    let wxx = differentiate(&differentiate(&w, X)?, X)?;
    Ok(Reduced {
        q: &(&spec.q - &wt) + &(&spec.kappa * &wxx),
        f: &spec.f - &w.subst(T, &Expr::zero()),
        lift: w,
        left: spec.left.homogeneous(),
        right: spec.right.homogeneous(),
    })
}

/// `∫₀ᴸ g φ dx` by quadrature; `g` may involve only `x`.
fn numeric_inner(g: &Expr, phi: &Expr, l: f64) -> Result<f64> {
    let prod = g * phi;
    let none = OpaqueImpls::new();
    let mut b = Bindings::new();
    let mut err = None;
    let v = adaptive(
        |s| {
            b.insert(X.to_string(), s);
            eval_complex(&prod, &b, &none).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            })
        },
        0.0,
        l,
        1e-12,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v.re),
    }
}

/// Solves `u_t = κu_xx + Q` with mixed boundary data by eigenfunction expansion.
pub fn solve_heat_mixed(spec: &IbvpSpec, order: Truncation) -> Result<SeriesSolution> {
    spec.validate()?;
    if spec.equation != Equation::Heat {
        return Err(Error::invalid("solve_heat_mixed expects a heat problem"));
    }
    let red = homogenize(spec)?;
    let count = match order {
        Truncation::Finite(n) => n as usize,
        Truncation::Infinite => 0,
    };
    let system = eigenpairs(&red.left, &red.right, &spec.l, count)?;
    let kappa = &spec.kappa;

    let modal = |phi: &Expr, lambda: &Expr, scale: &Expr| -> Result<Expr> {
        let fn_ = scale * &integrate_definite(&(&red.f * phi), X, &Expr::zero(), &spec.l)?;
        let qn = scale * &integrate_definite(&(&red.q * phi), X, &Expr::zero(), &spec.l)?;
        let rate = kappa * lambda;
        let decay = Expr::exp(&-(&rate * &Expr::sym(T)));
        let time = &(&decay * &fn_) + &duhamel_first_order(&qn, &rate)?;
        Ok(&time * phi)
    };

    match system {
        EigenSystem::ClosedForm(m) => {
            let scale = m.norm.inv();
            let summand = modal(&m.eigenfunction, &m.eigenvalue, &scale)?;
            let mut indices = BTreeSet::new();
            mode_resonances(&red.f, X, &m.wavenumber, &mut indices);
            mode_resonances(&red.q, X, &m.wavenumber, &mut indices);
            let bound = 10 * indices.iter().max().copied().unwrap_or(1).max(8);
            denominator_roots(&summand, bound, &mut indices);

            let mut closed = red.lift.clone();
            if let Some((phi0, norm0)) = &m.zero {
                closed = &closed + &modal(phi0, &Expr::zero(), &norm0.inv())?;
            }
            let mut singular_terms = Vec::new();
            for j in indices {
                let at = |e: &Expr| e.at_index(j as i64);
                let term = modal(&at(&m.eigenfunction), &at(&m.eigenvalue), &at(&scale))?;
                closed = &closed + &term;
                singular_terms.push((j as i64, term));
            }
            let sol = SeriesSolution {
                closed,
                excluded: singular_terms.iter().map(|(j, _)| *j).collect(),
                singular_terms,
                summand,
                start: 1,
                symmetric: false,
                truncation: Truncation::Infinite,
            };
            Ok(match order {
                Truncation::Infinite => sol,
                Truncation::Finite(n) => SeriesSolution::closed_only(sol.truncate(n), order),
            })
        }
        EigenSystem::Numeric(modes) => {
            let l = spec.l.as_scalar().map(|s| s.to_f64()).unwrap_or(f64::NAN);
            let mut total = red.lift.clone();
            for mode in &modes {
                let fn_ = float(numeric_inner(&red.f, &mode.eigenfunction, l)? / mode.norm);
                let qn = &integrate_definite(
                    &(&red.q * &mode.eigenfunction),
                    X,
                    &Expr::zero(),
                    &spec.l,
                )? * &float(1.0 / mode.norm);
                let rate = kappa * &float(mode.lambda);
                let decay = Expr::exp(&-(&rate * &Expr::sym(T)));
                let time = &(&decay * &fn_) + &duhamel_first_order(&qn, &rate)?;
                total = &total + &(&time * &mode.eigenfunction);
            }
            Ok(SeriesSolution::closed_only(total, order))
        }
    }
}

/// `ρ(x,t) = (c − v²/4κ)t − (v/2κ)x`.
fn rho(spec: &IbvpSpec) -> Expr {
    let four_kappa = &Expr::int(4) * &spec.kappa;
    let two_kappa = &Expr::int(2) * &spec.kappa;
    let rate = &spec.c - &(&(&spec.v * &spec.v) / &four_kappa);
    &(&rate * &Expr::sym(T)) - &(&(&spec.v / &two_kappa) * &Expr::sym(X))
}

/// Maps `u_t = κu_xx + vu_x + cu + Q` to a heat problem for `w = e^{-ρ}u`.
pub fn reduce_parabolic(spec: &IbvpSpec) -> Result<IbvpSpec> {
    if spec.equation == Equation::Wave {
        return Err(Error::invalid(
            "reduce_parabolic expects a parabolic problem",
        ));
    }
    spec.validate()?;
    let r = rho(spec);
    let rx = -(&spec.v / &(&Expr::int(2) * &spec.kappa));
    let damp = Expr::exp(&-r.clone());
    let end = |b: &BoundaryRecord, at: &Expr| BoundaryRecord {
        alpha: &b.alpha + &(&b.beta * &rx),
        beta: b.beta.clone(),
        h: &damp.subst(X, at) * &b.h,
    };
    Ok(IbvpSpec {
        equation: Equation::Heat,
        v: Expr::zero(),
        c: Expr::zero(),
        q: &damp * &spec.q,
        f: &damp.subst(T, &Expr::zero()) * &spec.f,
        left: end(&spec.left, &Expr::zero()),
        right: end(&spec.right, &spec.l),
        ..spec.clone()
    })
}

/// Solves the parabolic problem through its heat reduction, `u = e^ρ w`.
pub fn solve_parabolic_mixed(spec: &IbvpSpec, order: Truncation) -> Result<SeriesSolution> {
    let heat = reduce_parabolic(spec)?;
    let sol = solve_heat_mixed(&heat, order)?;
    let grow = Expr::exp(&rho(spec));
    Ok(SeriesSolution {
        closed: &grow * &sol.closed,
        singular_terms: sol
            .singular_terms
            .iter()
            .map(|(j, t)| (*j, &grow * t))
            .collect(),
        summand: &grow * &sol.summand,
        ..sol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn dirichlet() -> BoundaryRecord {
        BoundaryRecord::dirichlet(Expr::zero())
    }

    #[test]
    fn cubic_initial_profile() {
        let spec = IbvpSpec::heat(
            Expr::one(),
            Expr::one(),
            p("x^2*(1-x)"),
            dirichlet(),
            dirichlet(),
        );
        let s = solve_heat_mixed(&spec, Truncation::Infinite).unwrap();
        assert!(s.closed.is_zero());
        let want = p("-4*(2*(-1)^n+1)*exp(-pi^2*n^2*t)*sin(n*pi*x)/(pi^3*n^3)");
        assert!(s.summand.equivalent(&want), "{}", s.summand);
    }

    #[test]
    fn single_mode_and_zero_data() {
        let spec = IbvpSpec::heat(
            Expr::int(2),
            Expr::int(3),
            p("sin(pi*x/2)"),
            dirichlet(),
            dirichlet(),
        );
        let s = solve_heat_mixed(&spec, Truncation::Infinite).unwrap();
        assert!(s.summand.is_zero());
        assert!(
            s.closed.equivalent(&p("exp(-3*pi^2*t/4)*sin(pi*x/2)")),
            "{}",
            s.closed
        );
        let zero = IbvpSpec::heat(
            Expr::one(),
            Expr::one(),
            Expr::zero(),
            dirichlet(),
            dirichlet(),
        );
        let s = solve_heat_mixed(&zero, Truncation::Finite(8)).unwrap();
        assert!(s.closed.is_zero());
    }

    #[test]
    fn parabolic_with_drift() {
        let mut spec = IbvpSpec::heat(
            Expr::one(),
            Expr::one(),
            p("exp(4.5*x)*(5*sin(pi*x)+9*sin(2*pi*x)+2*sin(3*pi*x))"),
            dirichlet(),
            dirichlet(),
        );
        spec.equation = Equation::Parabolic;
        spec.v = Expr::int(-9);
        let s = solve_parabolic_mixed(&spec, Truncation::Infinite).unwrap();
        let want = p("exp(9*x/2-81*t/4)*(2*exp(-9*pi^2*t)*sin(3*pi*x)+9*exp(-4*pi^2*t)*sin(2*pi*x)+5*exp(-pi^2*t)*sin(pi*x))");
        assert!(s.summand.is_zero(), "{}", s.summand);
        assert!(s.closed.equivalent(&want), "{}", s.closed);
    }

    #[test]
    fn reaction_term_single_mode() {
        let mut spec = IbvpSpec::heat(
            Expr::one(),
            Expr::int(2),
            p("sin(pi*x)"),
            dirichlet(),
            dirichlet(),
        );
        spec.equation = Equation::Parabolic;
        spec.c = p("c0");
        let s = solve_parabolic_mixed(&spec, Truncation::Infinite).unwrap();
        assert!(
            s.closed.equivalent(&p("exp((c0-2*pi^2)*t)*sin(pi*x)")),
            "{}",
            s.closed
        );
    }

    #[test]
    fn lifted_neumann_problem_meets_boundary_data() {
        let spec = IbvpSpec::heat(
            Expr::one(),
            Expr::one(),
            Expr::zero(),
            BoundaryRecord::neumann(Expr::zero()),
            BoundaryRecord::neumann(p("t")),
        );
        let s = solve_heat_mixed(&spec, Truncation::Finite(6)).unwrap();
        let ux = differentiate(&s.closed, X).unwrap();
        assert!(ux.subst(X, &Expr::zero()).is_zero());
        assert!(ux.subst(X, &Expr::one()).equivalent(&p("t")));
    }
}
