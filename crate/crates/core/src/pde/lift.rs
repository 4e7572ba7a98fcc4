use super::{BoundaryRecord, X};
use crate::error::{Error, Result};
use crate::expr::Expr;

/// `w = p·b₁(x) + q·b₂(x)` meeting both boundary conditions, trying the bases
/// `(1, x)`, `(1, x²)` and `(x, x²)` in turn.
pub fn boundary_lift(left: &BoundaryRecord, right: &BoundaryRecord, l: &Expr) -> Result<Expr> {
    left.validate()?;
    right.validate()?;
    if left.h.is_zero() && right.h.is_zero() {
        return Ok(Expr::zero());
    }
    let x = Expr::sym(X);
    let bases = [
        (Expr::one(), x.clone()),
        (Expr::one(), x.powi(2)),
        (x.clone(), x.powi(2)),
    ];
    for (u, v) in &bases {
        // rows: condition applied to each basis function
        let apply = |b: &BoundaryRecord, at: &Expr, f: &Expr| -> Result<Expr> {
            let df = crate::expr::differentiate(f, X)?;
            Ok(&(&b.alpha * &f.subst(X, at)) + &(&b.beta * &df.subst(X, at)))
        };
        let zero = Expr::zero();
        let (m11, m12) = (apply(left, &zero, u)?, apply(left, &zero, v)?);
        let (m21, m22) = (apply(right, l, u)?, apply(right, l, v)?);
        let det = &(&m11 * &m22) - &(&m12 * &m21);
        if det.is_zero() {
            continue;
        }
        let p = &(&(&left.h * &m22) - &(&m12 * &right.h)) / &det;
        let q = &(&(&m11 * &right.h) - &(&m21 * &left.h)) / &det;
        return Ok(&(&p * u) + &(&q * v));
    }
    Err(Error::invalid(
        "boundary conditions admit no polynomial lift",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn linear_and_quadratic_lifts() {
        let w = boundary_lift(
            &BoundaryRecord::dirichlet(Expr::one()),
            &BoundaryRecord::dirichlet(Expr::int(2)),
            &Expr::one(),
        )
        .unwrap();
        assert!(w.equivalent(&parse_expr("1 + x").unwrap()));
        let t = parse_expr("t").unwrap();
        let w = boundary_lift(
            &BoundaryRecord::neumann(Expr::zero()),
            &BoundaryRecord::neumann(t),
            &Expr::int(3),
        )
        .unwrap();
        assert!(w.equivalent(&parse_expr("t*x^2/6").unwrap()));
        let zero = boundary_lift(
            &BoundaryRecord::dirichlet(Expr::zero()),
            &BoundaryRecord::dirichlet(Expr::zero()),
            &Expr::one(),
        )
        .unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn robin_lift_meets_conditions() {
        let left = BoundaryRecord::new(Expr::int(2), Expr::int(-1), parse_expr("sin(t)").unwrap());
        let right = BoundaryRecord::new(Expr::one(), Expr::int(3), parse_expr("t^2").unwrap());
        let l = Expr::int(2);
        let w = boundary_lift(&left, &right, &l).unwrap();
        let dw = crate::expr::differentiate(&w, X).unwrap();
        let at = |e: &Expr, v: &Expr| e.subst(X, v);
        let lhs = &(&Expr::int(2) * &at(&w, &Expr::zero())) - &at(&dw, &Expr::zero());
        assert!(lhs.equivalent(&left.h));
        let rhs = &at(&w, &l) + &(&Expr::int(3) * &at(&dw, &l));
        assert!(rhs.equivalent(&right.h));
    }
}
