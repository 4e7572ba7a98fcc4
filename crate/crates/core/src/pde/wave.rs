use std::collections::BTreeSet;

use super::{boundary_lift, fresh_symbol, positive, EndKind, Equation, IbvpSpec, T, X};
use crate::error::{Error, Result};
use crate::expr::{differentiate, integrate_definite, Expr, INDEX};
use crate::fourier::{denominator_roots, mode_resonances};
use crate::series::{SeriesSolution, Truncation};

/// `(1/ω)∫₀ᵗ sin(ω(t-s)) q(s) ds`.
fn duhamel_second_order(q: &Expr, omega: &Expr) -> Result<Expr> {
    if q.is_zero() {
        return Ok(Expr::zero());
    }
    let s = fresh_symbol(&[q, omega]);
    let sv = Expr::sym(&s);
    let kernel = Expr::sin(&(omega * &(&Expr::sym(T) - &sv)));
    Ok(&integrate_definite(
        &(&kernel * &q.subst(T, &sv)),
        &s,
        &Expr::zero(),
        &Expr::sym(T),
    )? / omega)
}

/// Solves `u_tt = c²u_xx + Q` with Dirichlet data at both ends. Without a
/// resonance assumption the result is the generic (non-resonant) branch.
pub fn solve_wave_dirichlet(spec: &IbvpSpec, order: Truncation) -> Result<SeriesSolution> {
    if spec.equation != Equation::Wave {
        return Err(Error::invalid(
            "solve_wave_dirichlet expects a wave problem",
        ));
    }
    spec.validate()?;
    positive("c", &spec.c)?;
    if spec.left.kind() != EndKind::Dirichlet || spec.right.kind() != EndKind::Dirichlet {
        return Err(Error::Unsupported(
            "the wave solver handles Dirichlet conditions only".into(),
        ));
    }
    let mut spec = spec.clone();
    if let Some((sym, m)) = &spec.resonance {
        let omega = &(&(&spec.c * &Expr::int(*m as i64)) * &Expr::pi()) / &spec.l;
        spec.q = spec.q.subst(sym, &omega);
        spec.f = spec.f.subst(sym, &omega);
        spec.g = spec.g.subst(sym, &omega);
    }
    let (c, l) = (&spec.c, &spec.l);
    let w = boundary_lift(&spec.left, &spec.right, l)?;
    let wt = differentiate(&w, T)?;
    let q = &(&spec.q - &differentiate(&wt, T)?)
        + &(&(c * c) * &differentiate(&differentiate(&w, X)?, X)?);
    let f = &spec.f - &w.subst(T, &Expr::zero());
    let g = &spec.g - &wt.subst(T, &Expr::zero());

    let n = Expr::sym(INDEX);
    let k = &(&n * &Expr::pi()) / l;
    let scale = &Expr::int(2) / l;
    let modal = |k: &Expr| -> Result<Expr> {
        let phi = Expr::sin(&(k * &Expr::sym(X)));
        let omega = c * k;
        let proj = |h: &Expr| -> Result<Expr> {
            Ok(&scale * &integrate_definite(&(h * &phi), X, &Expr::zero(), l)?)
        };
        let wt = &omega * &Expr::sym(T);
        let time = &(&(&proj(&f)? * &Expr::cos(&wt)) + &(&(&proj(&g)? / &omega) * &Expr::sin(&wt)))
            + &duhamel_second_order(&proj(&q)?, &omega)?;
        Ok(&time * &phi)
    };

    let summand = modal(&k)?;
    let mut indices = BTreeSet::new();
    for h in [&f, &g, &q] {
        mode_resonances(h, X, &k, &mut indices);
    }
    let bound = 10 * indices.iter().max().copied().unwrap_or(1).max(8);
    denominator_roots(&summand, bound, &mut indices);

    let mut closed = w;
    let mut singular_terms = Vec::new();
    for j in indices {
        let term = modal(&k.at_index(j as i64))?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn standing_modes() {
        let spec = IbvpSpec::wave(Expr::int(2), Expr::int(3), p("sin(pi*x/2)"), Expr::zero());
        let s = solve_wave_dirichlet(&spec, Truncation::Infinite).unwrap();
        assert!(
            s.closed.equivalent(&p("cos(3*pi*t/2)*sin(pi*x/2)")),
            "{}",
            s.closed
        );
        let spec = IbvpSpec::wave(Expr::int(2), Expr::int(3), Expr::zero(), p("sin(pi*x/2)"));
        let s = solve_wave_dirichlet(&spec, Truncation::Infinite).unwrap();
        assert!(
            s.closed
                .equivalent(&p("2/(3*pi)*sin(3*pi*t/2)*sin(pi*x/2)")),
            "{}",
            s.closed
        );
    }

    #[test]
    fn resonant_forcing_grows_linearly() {
        let spec = IbvpSpec::wave(Expr::one(), Expr::one(), Expr::zero(), Expr::zero())
            .with_source(p("cos(w*t)*sin(pi*x)"));
        let mut res = spec.clone();
        res.resonance = Some(("w".into(), 1));
        let s = solve_wave_dirichlet(&res, Truncation::Infinite).unwrap();
        assert!(s.summand.is_zero());
        assert!(
            s.closed.equivalent(&p("t*sin(pi*t)*sin(pi*x)/(2*pi)")),
            "{}",
            s.closed
        );
        let generic = solve_wave_dirichlet(&spec, Truncation::Infinite).unwrap();
        assert!(
            generic
                .closed
                .equivalent(&p("(cos(w*t)-cos(pi*t))*sin(pi*x)/(pi^2-w^2)")),
            "{}",
            generic.closed
        );
    }

    #[test]
    fn rejects_neumann_ends() {
        let mut spec = IbvpSpec::wave(Expr::one(), Expr::one(), Expr::zero(), Expr::zero());
        spec.left = super::super::BoundaryRecord::neumann(Expr::zero());
        assert!(matches!(
            solve_wave_dirichlet(&spec, Truncation::Infinite),
            Err(Error::Unsupported(_))
        ));
    }
}
