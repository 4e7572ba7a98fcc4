use std::f64::consts::PI;

use super::eigen::float;
use super::laplace::{R, THETA};
use super::T;
use crate::bessel::{bessel_j, bessel_j_zeros};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::quadrature::gauss_legendre;

/// Initial data `(r, θ) ↦ value`.
pub type RadialFn<'a> = &'a dyn Fn(f64, f64) -> f64;

const ANGULAR_NODES: usize = 256;

/// Quadrature in `r` for the modal projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialRule {
    GaussLegendre(usize),
    /// Composite Simpson on an even number of subintervals.
    Simpson(usize),
}

impl Default for RadialRule {
    fn default() -> Self {
        RadialRule::GaussLegendre(64)
    }
}

impl RadialRule {
    /// Nodes and weights on `[0, R]`, weights including the factor `r`.
    fn nodes(self, radius: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        match self {
            RadialRule::GaussLegendre(n) if n >= 2 => {
                let (xs, ws) = gauss_legendre(n);
                let rs: Vec<f64> = xs.iter().map(|x| 0.5 * radius * (x + 1.0)).collect();
                let wr = ws
                    .iter()
                    .zip(&rs)
                    .map(|(w, r)| 0.5 * radius * w * r)
                    .collect();
                Ok((rs, wr))
            }
            RadialRule::Simpson(n) if n >= 2 && n % 2 == 0 => {
                let h = radius / n as f64;
                let rs: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
                let wr = rs
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let w = if i == 0 || i == n {
                            1.0
                        } else if i % 2 == 1 {
                            4.0
                        } else {
                            2.0
                        };
                        w * h / 3.0 * r
                    })
                    .collect();
                Ok((rs, wr))
            }
            other => Err(Error::invalid(format!("unusable radial rule {:?}", other))),
        }
    }
}

/// Mode `J_m(z r/R)[(a cos mθ + b sin mθ)cos(czt/R) + (a_dot cos mθ + b_dot sin mθ)sin(czt/R)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModalTerm {
    pub m: usize,
    pub j: usize,
    pub zero: f64,
    pub a: f64,
    pub b: f64,
    pub a_dot: f64,
    pub b_dot: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericModalSolution {
    pub c: f64,
    pub radius: f64,
    pub terms: Vec<ModalTerm>,
}

impl NumericModalSolution {
    /// The double sum as an expression in `r`, `theta`, `t` with float coefficients.
    pub fn to_expr(&self) -> Expr {
        let (r, th, t) = (Expr::sym(R), Expr::sym(THETA), Expr::sym(T));
        let mut out = Expr::zero();
        for term in &self.terms {
            let k = term.zero / self.radius;
            let bessel = Expr::func("bessel_j", vec![Expr::int(term.m as i64), &float(k) * &r]);
            let omega_t = &float(self.c * k) * &t;
            let angle = &Expr::int(term.m as i64) * &th;
            let (cm, sm) = (Expr::cos(&angle), Expr::sin(&angle));
            let part = |a: f64, b: f64| -> Expr { &(&float(a) * &cm) + &(&float(b) * &sm) };
            let time = &(&part(term.a, term.b) * &Expr::cos(&omega_t))
                + &(&part(term.a_dot, term.b_dot) * &Expr::sin(&omega_t));
            out = &out + &(&bessel * &time);
        }
        out
    }

    /// `to_expr` without terms whose coefficient is below `10^-exponent`.
    pub fn chopped(&self, exponent: u32) -> Expr {
        self.to_expr().chop(exponent)
    }

    pub fn eval(&self, r: f64, theta: f64, t: f64) -> Result<f64> {
        let mut sum = 0.0;
        for term in &self.terms {
            let k = term.zero / self.radius;
            let m = term.m as f64;
            let (c, s) = ((m * theta).cos(), (m * theta).sin());
            let w = self.c * k * t;
            let time =
                (term.a * c + term.b * s) * w.cos() + (term.a_dot * c + term.b_dot * s) * w.sin();
            sum += bessel_j(m, k * r)? * time;
        }
        Ok(sum)
    }
}

/// Vibrating clamped membrane of radius `R` and speed `c`: modal coefficients
/// for Bessel orders `0..=k` and the first `l` zeros of each.
pub fn solve_wave_disk(
    c: f64,
    radius: f64,
    f: RadialFn<'_>,
    g: RadialFn<'_>,
    k: usize,
    l: usize,
) -> Result<NumericModalSolution> {
    solve_wave_disk_with(c, radius, f, g, k, l, RadialRule::default())
}

pub fn solve_wave_disk_with(
    c: f64,
    radius: f64,
    f: RadialFn<'_>,
    g: RadialFn<'_>,
    k: usize,
    l: usize,
    rule: RadialRule,
) -> Result<NumericModalSolution> {
    if !(c > 0.0 && c.is_finite()) || !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid("wave speed and radius must be positive"));
    }
    if l == 0 || l > 2000 || k > 2000 {
        return Err(Error::invalid(format!(
            "mode counts out of range: k = {}, l = {}",
            k, l
        )));
    }
    let (rs, wr) = rule.nodes(radius)?;
    let h = 2.0 * PI / ANGULAR_NODES as f64;
    let thetas: Vec<f64> = (0..ANGULAR_NODES).map(|i| i as f64 * h).collect();
    let grid = |u: RadialFn<'_>| -> Vec<Vec<f64>> {
        rs.iter()
            .map(|&r| thetas.iter().map(|&th| u(r, th)).collect())
            .collect()
    };
    let (fv, gv) = (grid(f), grid(g));
    if fv.iter().chain(&gv).flatten().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(
            "initial data is not finite on the quadrature grid".into(),
        ));
    }

    let mut terms = Vec::new();
    for m in 0..=k {
        let mf = m as f64;
        // angular moments per radial node
        let moments = |vals: &Vec<Vec<f64>>| -> Vec<(f64, f64)> {
            vals.iter()
                .map(|row| {
                    row.iter().zip(&thetas).fold((0.0, 0.0), |(a, b), (v, th)| {
                        (a + v * (mf * th).cos() * h, b + v * (mf * th).sin() * h)
                    })
                })
                .collect()
        };
        let (fm, gm) = (moments(&fv), moments(&gv));
        let angular_norm = if m == 0 { 2.0 * PI } else { PI };
        for (j, z) in bessel_j_zeros(mf, l)?.into_iter().enumerate() {
            let kz = z / radius;
            let radial_norm = 0.5 * radius * radius * bessel_j(mf + 1.0, z)?.powi(2);
            let norm = radial_norm * angular_norm;
            let basis: Vec<f64> = rs
                .iter()
                .map(|&r| bessel_j(mf, kz * r))
                .collect::<Result<_>>()?;
            let project = |mom: &[(f64, f64)]| -> (f64, f64) {
                let (mut a, mut b) = (0.0, 0.0);
                for ((w, jb), (ca, sb)) in wr.iter().zip(&basis).zip(mom) {
                    a += w * jb * ca;
                    b += w * jb * sb;
                }
                (a / norm, b / norm)
            };
            let (a, b) = project(&fm);
            let (ga, gb) = project(&gm);
            let omega = c * kz;
            terms.push(ModalTerm {
                m,
                j: j + 1,
                zero: z,
                a,
                b,
                a_dot: ga / omega,
                b_dot: gb / omega,
            });
        }
    }
    Ok(NumericModalSolution { c, radius, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_profile_coefficients() {
        let f = |r: f64, _: f64| 1.0 - r.powi(4);
        let s = solve_wave_disk(1.0, 1.0, &f, &|_, _| 0.0, 2, 2).unwrap();
        assert!(
            (s.terms[0].a - 1.3665891122967596).abs() < 1e-12,
            "{}",
            s.terms[0].a
        );
        assert!(
            (s.terms[1].a + 0.4857149626117437).abs() < 1e-12,
            "{}",
            s.terms[1].a
        );
        let e = s.chopped(12);
        assert_eq!(e.terms().len(), 2, "{}", e);
        let coarse =
            solve_wave_disk_with(1.0, 1.0, &f, &|_, _| 0.0, 2, 2, RadialRule::Simpson(14)).unwrap();
        assert!(
            (coarse.terms[0].a - 1.366663216985716).abs() < 1e-9,
            "{}",
            coarse.terms[0].a
        );
        assert!(
            (coarse.terms[1].a + 0.4858370155994775).abs() < 1e-9,
            "{}",
            coarse.terms[1].a
        );
        assert!(solve_wave_disk_with(1.0, 1.0, &f, &f, 1, 1, RadialRule::Simpson(7)).is_err());
    }

    #[test]
    fn single_bessel_mode() {
        let z = bessel_j_zeros(1.0, 1).unwrap()[0];
        let s = solve_wave_disk(
            2.0,
            1.0,
            &|r, th| bessel_j(1.0, z * r).unwrap() * th.cos(),
            &|_, _| 0.0,
            2,
            2,
        )
        .unwrap();
        for t in &s.terms {
            let want = if (t.m, t.j) == (1, 1) { 1.0 } else { 0.0 };
            assert!((t.a - want).abs() < 1e-9, "{:?}", t);
            assert!(t.b.abs() < 1e-9 && t.a_dot.abs() < 1e-9 && t.b_dot.abs() < 1e-9);
        }
        let zero = solve_wave_disk(1.0, 1.0, &|_, _| 0.0, &|_, _| 0.0, 1, 1).unwrap();
        assert!(zero.chopped(12).is_zero());
    }
}
