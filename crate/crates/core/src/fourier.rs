//! Fourier coefficients with singular-index separation, and their expansion
//! into truncated or symbolic series.
//!
//! Trigonometric and complex series live on `[-L, L]`, cosine and sine
//! series on `[0, L]`. General terms are expressions in the index `n`; any
//! positive index where such a term breaks down is computed separately by
//! direct integration and reported in `singular`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::{classify_term, integrate_definite, Expr, Poly, INDEX};
use crate::piecewise::{Parity, PiecewiseExpr};
use crate::scalar::Scalar;
use crate::series::{SeriesSolution, Truncation};

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Expr(Expr),
    Piecewise(PiecewiseExpr),
}

impl Source {
    fn bodies(&self) -> Vec<&Expr> {
        match self {
            Source::Expr(e) => vec![e],
            Source::Piecewise(p) => p.branches().iter().map(|b| &b.body).collect(),
        }
    }
}

impl From<Expr> for Source {
    fn from(e: Expr) -> Self {
        Source::Expr(e)
    }
}

impl From<PiecewiseExpr> for Source {
    fn from(p: PiecewiseExpr) -> Self {
        Source::Piecewise(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourierKind {
    Trig,
    Complex,
    Cosine,
    Sine,
}

impl FourierKind {
    pub fn name(self) -> &'static str {
        match self {
            FourierKind::Trig => "trig",
            FourierKind::Complex => "complex",
            FourierKind::Cosine => "cos",
            FourierKind::Sine => "sin",
        }
    }

    fn symmetric_interval(self) -> bool {
        matches!(self, FourierKind::Trig | FourierKind::Complex)
    }
}

impl fmt::Display for FourierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FourierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trig" => Ok(FourierKind::Trig),
            "complex" => Ok(FourierKind::Complex),
            "cos" | "cosine" => Ok(FourierKind::Cosine),
            "sin" | "sine" => Ok(FourierKind::Sine),
            _ => Err(Error::invalid(format!("unknown Fourier kind `{}`", s))),
        }
    }
}

/// Values at a singular index `n`. For `Trig`, `a` and `b` are `a_n`, `b_n`;
/// `Cosine` uses `a`, `Sine` uses `b`; for `Complex`, `a = c_n` and `b = c_{-n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularRecord {
    pub n: u64,
    pub a: Expr,
    pub b: Expr,
}

/// General terms and singular records. For `Complex`, `a0` is `c_0`, `an` is
/// `c_n` (valid for every non-singular integer `n ≠ 0`) and `bn` is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoeffs {
    pub kind: FourierKind,
    pub l: Expr,
    pub a0: Expr,
    pub an: Expr,
    pub bn: Expr,
    pub singular: Vec<SingularRecord>,
}

impl FourierCoeffs {
    /// `a_n` (or `c_n`) at a specific index, singular records included.
    pub fn a_at(&self, n: i64) -> Expr {
        if n == 0 {
            return self.a0.clone();
        }
        if let Some(r) = self.singular.iter().find(|r| r.n == n.unsigned_abs()) {
            return match (self.kind, n > 0) {
                (FourierKind::Complex, false) => r.b.clone(),
                _ => r.a.clone(),
            };
        }
        self.an.at_index(n)
    }

    /// `b_n` at a specific index, singular records included.
    pub fn b_at(&self, n: i64) -> Expr {
        if n == 0 {
            return Expr::zero();
        }
        if let Some(r) = self.singular.iter().find(|r| n > 0 && r.n == n as u64) {
            return r.b.clone();
        }
        self.bn.at_index(n)
    }

    pub fn singular_indices(&self) -> Vec<u64> {
        self.singular.iter().map(|r| r.n).collect()
    }

    pub fn warning(&self) -> Option<String> {
        if self.singular.is_empty() {
            return None;
        }
        let list: Vec<String> = self.singular.iter().map(|r| r.n.to_string()).collect();
        Some(format!("excluding {} in {{{}}}", INDEX, list.join(", ")))
    }

    pub fn to_json(&self) -> Value {
        let s = |e: &Expr| Value::String(e.to_string());
        let mut general = Map::new();
        let mut singular = Vec::new();
        match self.kind {
            FourierKind::Trig => {
                general.insert("a0".into(), s(&self.a0));
                general.insert("an".into(), s(&self.an));
                general.insert("bn".into(), s(&self.bn));
                singular.extend(
                    self.singular
                        .iter()
                        .map(|r| json!({"n": r.n, "a": s(&r.a), "b": s(&r.b)})),
                );
            }
            FourierKind::Complex => {
                general.insert("c0".into(), s(&self.a0));
                general.insert("cn".into(), s(&self.an));
                singular.extend(
                    self.singular
                        .iter()
                        .map(|r| json!({"n": r.n, "c": s(&r.a), "c_neg": s(&r.b)})),
                );
            }
            FourierKind::Cosine => {
                general.insert("a0".into(), s(&self.a0));
                general.insert("an".into(), s(&self.an));
                singular.extend(
                    self.singular
                        .iter()
                        .map(|r| json!({"n": r.n, "a": s(&r.a)})),
                );
            }
            FourierKind::Sine => {
                general.insert("bn".into(), s(&self.bn));
                singular.extend(
                    self.singular
                        .iter()
                        .map(|r| json!({"n": r.n, "b": s(&r.b)})),
                );
            }
        }
        let mut v = json!({"kind": self.kind.name(), "general": general, "singular": singular});
        if let Some(w) = self.warning() {
            v["warning"] = Value::String(w);
        }
        v
    }
}

/// `cos(nπx/L)`, `sin(nπx/L)`.
fn modes(n: &Expr, var: &str, l: &Expr) -> (Expr, Expr) {
    let arg = &(n * &Expr::pi()) * &(&Expr::sym(var) / l);
    (Expr::cos(&arg), Expr::sin(&arg))
}

struct Setup<'a> {
    src: &'a Source,
    var: &'a str,
    l: &'a Expr,
    lo: Expr,
    parity: Parity,
}

impl Setup<'_> {
    fn integral(&self, weight: &Expr) -> Result<Expr> {
        match self.src {
            Source::Expr(f) => integrate_definite(&(f * weight), self.var, &self.lo, self.l),
            Source::Piecewise(p) => {
                let (a, b) = p.domain();
                p.map(|body| body * weight).integrate(&a, &b)
            }
        }
    }

    /// Normalized cosine and sine integrals at index `n` (symbolic or integer).
    fn pair(&self, kind: FourierKind, n: &Expr) -> Result<(Expr, Expr)> {
        let (c, s) = modes(n, self.var, self.l);
        let scale = if kind.symmetric_interval() {
            self.l.inv()
        } else {
            &Expr::int(2) / self.l
        };
        let want_a = kind != FourierKind::Sine && self.parity != Parity::Odd;
        let want_b = kind != FourierKind::Cosine && self.parity != Parity::Even;
        let a = if want_a {
            &scale * &self.integral(&c)?
        } else {
            Expr::zero()
        };
        let b = if want_b {
            &scale * &self.integral(&s)?
        } else {
            Expr::zero()
        };
        Ok((a, b))
    }

    fn constant(&self, kind: FourierKind) -> Result<Expr> {
        if kind == FourierKind::Sine || self.parity == Parity::Odd {
            return Ok(Expr::zero());
        }
        let width = if kind.symmetric_interval() {
            &Expr::int(2) * self.l
        } else {
            self.l.clone()
        };
        Ok(&self.integral(&Expr::one())? / &width)
    }
}

fn parity(src: &Source, var: &str, l: &Expr) -> Parity {
    match src {
        Source::Expr(f) => {
            let mirrored = f.subst(var, &-Expr::sym(var));
            if (&mirrored - f).is_zero() {
                Parity::Even
            } else if (&mirrored + f).is_zero() {
                Parity::Odd
            } else {
                Parity::Neither
            }
        }
        Source::Piecewise(p) => l.as_scalar().map_or(Parity::Neither, |l| p.parity(&l)),
    }
}

/// Positive integer `n` with `p(n) = 0`, for a factor linear in the index.
fn linear_root(p: &Poly) -> Option<u64> {
    let e = Expr::from_poly(p.clone());
    let (slope, icpt) = crate::expr::linear_in(&e, INDEX)?;
    let r = (-icpt / slope).as_scalar()?.as_i64()?;
    (r > 0).then_some(r as u64)
}

/// Positive integer zeros of the denominator of a general term. Nonlinear
/// factors are probed up to `bound`.
pub(crate) fn denominator_roots(e: &Expr, bound: u64, out: &mut BTreeSet<u64>) {
    for (p, _) in e.denominator_factors() {
        if !p.depends_on(INDEX) {
            continue;
        }
        if let Some(r) = linear_root(p) {
            out.insert(r);
            continue;
        }
        let f = Expr::from_poly(p.clone());
        for k in 1..=bound {
            if f.at_index(k as i64).is_zero() {
                out.insert(k);
            }
        }
    }
}

/// General and singular values of `scale(n)·∫ src·mode(n) d var` over `[lo, hi]`.
pub(crate) struct Projection {
    pub general: Expr,
    pub singular: Vec<(u64, Expr)>,
}

/// Indices `n ≥ 1` where `wavenumber(n)` (linear in `n`) meets the frequency
/// of some trigonometric term of `f`.
pub(crate) fn mode_resonances(f: &Expr, var: &str, wavenumber: &Expr, out: &mut BTreeSet<u64>) {
    let Some((slope, icpt)) = crate::expr::linear_in(wavenumber, INDEX) else {
        return;
    };
    if slope.is_zero() || f.contains_opaque() {
        return;
    }
    for t in f.terms() {
        let class = classify_term(&t, var, &Expr::one());
        if class.wavenumber.is_zero() {
            continue;
        }
        for a in [class.wavenumber.clone(), -class.wavenumber] {
            if let Some(r) = (&(&a - &icpt) / &slope)
                .as_scalar()
                .and_then(|s| s.as_i64())
            {
                if r > 0 {
                    out.insert(r as u64);
                }
            }
        }
    }
}

/// Projects `f` on the family `mode(n)` with wavenumber `wavenumber(n)`,
/// separating indices where the general formula breaks down.
pub(crate) fn project(
    f: &Expr,
    var: &str,
    lo: &Expr,
    hi: &Expr,
    mode: &Expr,
    wavenumber: &Expr,
    scale: &Expr,
) -> Result<Projection> {
    let value = |n: &Expr| -> Result<Expr> {
        let m = mode.subst(INDEX, n);
        Ok(&scale.subst(INDEX, n) * &integrate_definite(&(f * &m), var, lo, hi)?)
    };
    let general = value(&Expr::sym(INDEX))?;
    let mut indices = BTreeSet::new();
    if !f.contains_opaque() {
        mode_resonances(f, var, wavenumber, &mut indices);
        let bound = 10 * indices.iter().max().copied().unwrap_or(1).max(8);
        denominator_roots(&general, bound, &mut indices);
    }
    let singular = indices
        .into_iter()
        .map(|j| Ok((j, value(&Expr::int(j as i64))?)))
        .collect::<Result<_>>()?;
    Ok(Projection { general, singular })
}

/// Coefficients of `src` in the `kind` basis with half-period `l`.
pub fn fourier_coeff(
    src: &Source,
    var: &str,
    l: &Expr,
    kind: FourierKind,
) -> Result<FourierCoeffs> {
    if var == INDEX {
        return Err(Error::invalid(format!(
            "`{}` is reserved for the summation index",
            INDEX
        )));
    }
    if l.depends_on(var) || l.depends_on(INDEX) {
        return Err(Error::invalid(
            "half-period must not depend on the variable or the index",
        ));
    }
    if let Some(s) = l.as_scalar() {
        if !s.is_real() || s.cmp_value(&Scalar::zero()) != std::cmp::Ordering::Greater {
            return Err(Error::invalid(format!(
                "half-period must be positive, got {}",
                s
            )));
        }
    }
    let lo = if kind.symmetric_interval() {
        -l
    } else {
        Expr::zero()
    };
    if let Source::Piecewise(p) = src {
        if p.var() != var {
            return Err(Error::invalid(format!(
                "piecewise variable `{}` differs from `{}`",
                p.var(),
                var
            )));
        }
        let (a, b) = p.domain();
        if Some(&a) != lo.as_scalar().as_ref() || Some(&b) != l.as_scalar().as_ref() {
            return Err(Error::invalid(format!(
                "piecewise domain [{}, {}] does not match [{}, {}]",
                a, b, lo, l
            )));
        }
    }
    let parity = if kind.symmetric_interval() {
        parity(src, var, l)
    } else {
        Parity::Neither
    };
    let setup = Setup {
        src,
        var,
        l,
        lo,
        parity,
    };

    let a0 = setup.constant(kind)?;
    let (an, bn) = setup.pair(kind, &Expr::sym(INDEX))?;

    let mut indices = BTreeSet::new();
    let opaque = src.bodies().iter().any(|b| b.contains_opaque());
    if !opaque {
        for body in src.bodies() {
            for t in body.terms() {
                indices.extend(classify_term(&t, var, l).resonant);
            }
        }
        let bound = 10 * indices.iter().max().copied().unwrap_or(1).max(8);
        denominator_roots(&an, bound, &mut indices);
        denominator_roots(&bn, bound, &mut indices);
    }

    let mut singular = Vec::with_capacity(indices.len());
    for j in indices {
        let (a, b) = setup.pair(kind, &Expr::int(j as i64))?;
        singular.push(SingularRecord { n: j, a, b });
    }

    if kind == FourierKind::Complex {
        let half = Expr::ratio(1, 2);
        let i = Expr::i();
        let cn = &half * &(&an - &(&i * &bn));
        for r in &mut singular {
            let (a, b) = (r.a.clone(), r.b.clone());
            r.a = &half * &(&a - &(&i * &b));
            r.b = &half * &(&a + &(&i * &b));
        }
        return Ok(FourierCoeffs {
            kind,
            l: l.clone(),
            a0,
            an: cn,
            bn: Expr::zero(),
            singular,
        });
    }
    Ok(FourierCoeffs {
        kind,
        l: l.clone(),
        a0,
        an,
        bn,
        singular,
    })
}

/// Expands coefficients into a series in `var`: fully summed for a finite
/// order, otherwise with singular indices moved into the closed part.
pub fn expand_coeffs(c: &FourierCoeffs, var: &str, order: Truncation) -> Result<SeriesSolution> {
    let n = Expr::sym(INDEX);
    let (cos_n, sin_n) = modes(&n, var, &c.l);
    let wave = |k: i64| -> Expr {
        Expr::exp(&(&(&Expr::i() * &Expr::int(k)) * &(&(&Expr::pi() * &Expr::sym(var)) / &c.l)))
    };
    let summand = match c.kind {
        FourierKind::Trig => &(&c.an * &cos_n) + &(&c.bn * &sin_n),
        FourierKind::Cosine => &c.an * &cos_n,
        FourierKind::Sine => &c.bn * &sin_n,
        FourierKind::Complex => {
            let e = Expr::exp(&(&(&Expr::i() * &n) * &(&(&Expr::pi() * &Expr::sym(var)) / &c.l)));
            &c.an * &e
        }
    };
    let mut singular_terms = Vec::new();
    for r in &c.singular {
        let j = r.n as i64;
        let (cj, sj) = modes(&Expr::int(j), var, &c.l);
        match c.kind {
            FourierKind::Trig => singular_terms.push((j, &(&r.a * &cj) + &(&r.b * &sj))),
            FourierKind::Cosine => singular_terms.push((j, &r.a * &cj)),
            FourierKind::Sine => singular_terms.push((j, &r.b * &sj)),
            FourierKind::Complex => {
                singular_terms.push((j, &r.a * &wave(j)));
                singular_terms.push((-j, &r.b * &wave(-j)));
            }
        }
    }
    let closed = singular_terms
        .iter()
        .fold(c.a0.clone(), |acc, (_, t)| &acc + t);
    let symbolic = SeriesSolution {
        closed,
        excluded: singular_terms.iter().map(|(j, _)| *j).collect(),
        singular_terms,
        summand,
        start: 1,
        symmetric: c.kind == FourierKind::Complex,
        truncation: Truncation::Infinite,
    };
    Ok(match order {
        Truncation::Infinite => symbolic,
        Truncation::Finite(0) => return Err(Error::invalid("truncation order must be positive")),
        Truncation::Finite(k) => SeriesSolution::closed_only(symbolic.truncate(k), order),
    })
}

/// `expand_coeffs ∘ fourier_coeff`.
pub fn fourier_series(
    src: &Source,
    var: &str,
    l: &Expr,
    order: Truncation,
    kind: FourierKind,
) -> Result<SeriesSolution> {
    if order == Truncation::Finite(0) {
        return Err(Error::invalid("truncation order must be positive"));
    }
    expand_coeffs(&fourier_coeff(src, var, l, kind)?, var, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn coeffs(f: &str, kind: FourierKind) -> FourierCoeffs {
        fourier_coeff(&Source::Expr(p(f)), "x", &Expr::pi(), kind).unwrap()
    }

    #[test]
    fn quadratic_times_resonant_cosine() {
        let c = coeffs("3*x^2*cos(7*x)", FourierKind::Trig);
        assert!(c.a0.equivalent(&Expr::ratio(-6, 49)));
        assert!(
            c.an.equivalent(&p("12*(n^2+49)*(-1)^(n+1)/(n^4-98*n^2+2401)")),
            "{}",
            c.an
        );
        assert!(c.bn.is_zero());
        assert!(c.b_at(0).is_zero());
        assert_eq!(c.singular_indices(), vec![7]);
        assert!(c.singular[0].a.equivalent(&p("(98*pi^2+3)/98")));
        assert!(c.singular[0].b.is_zero());
    }

    #[test]
    fn equivalent_inputs_agree() {
        for f in ["cos(x)^2", "(1+cos(2*x))/2"] {
            let c = coeffs(f, FourierKind::Cosine);
            assert_eq!(c.a0, Expr::ratio(1, 2));
            assert!(c.an.is_zero());
            assert_eq!(c.singular_indices(), vec![2]);
            assert_eq!(c.singular[0].a, Expr::ratio(1, 2));
        }
    }

    #[test]
    fn complex_two_branch() {
        let f = PiecewiseExpr::from_json(
            "x",
            r#"[{"interval": ["-pi", "0"], "expr": "0"}, {"interval": ["0", "pi"], "expr": "sin(3*x)"}]"#,
        )
        .unwrap();
        let c = fourier_coeff(
            &Source::Piecewise(f),
            "x",
            &Expr::pi(),
            FourierKind::Complex,
        )
        .unwrap();
        assert!(c.a0.equivalent(&p("1/(3*pi)")));
        assert!(
            c.an.equivalent(&p("-3*((-1)^n+1)/(2*pi*(n^2-9))")),
            "{}",
            c.an
        );
        assert_eq!(c.singular_indices(), vec![3]);
        assert!(
            c.singular[0].a.equivalent(&p("-%i/4")),
            "{}",
            c.singular[0].a
        );
        assert!(c.singular[0].b.equivalent(&p("%i/4")));
    }

    #[test]
    fn quartic_series() {
        let s = fourier_series(
            &Source::Expr(p("x^4")),
            "x",
            &Expr::pi(),
            Truncation::Infinite,
            FourierKind::Trig,
        )
        .unwrap();
        assert!(s.closed.equivalent(&p("pi^4/5")));
        assert!(
            s.summand
                .equivalent(&p("8*(pi^2*n^2-6)*(-1)^n*cos(n*x)/n^4")),
            "{}",
            s.summand
        );
        assert!(s.excluded.is_empty());
    }

    #[test]
    fn fixture_expansion() {
        let c = FourierCoeffs {
            kind: FourierKind::Sine,
            l: Expr::pi(),
            a0: Expr::zero(),
            an: Expr::zero(),
            bn: p("2*n*(-1)^n/(n^2-9)"),
            singular: vec![SingularRecord {
                n: 3,
                a: Expr::zero(),
                b: Expr::ratio(-1, 6),
            }],
        };
        let s = expand_coeffs(&c, "x", Truncation::Finite(5)).unwrap();
        let want = p("-5*sin(5*x)/8 + 8*sin(4*x)/7 - sin(3*x)/6 - 4*sin(2*x)/5 + sin(x)/4");
        assert!(s.closed.equivalent(&want), "{}", s.closed);
        let inf = expand_coeffs(&c, "x", Truncation::Infinite).unwrap();
        assert!(inf.truncate(5).equivalent(&want));
        assert_eq!(inf.warning().unwrap(), "excluding n in {3}");
    }

    #[test]
    fn pure_mode_is_reproduced() {
        let s = fourier_series(
            &Source::Expr(p("sin(15*x)")),
            "x",
            &Expr::pi(),
            Truncation::Infinite,
            FourierKind::Sine,
        )
        .unwrap();
        assert!(s.summand.is_zero());
        assert!(s.closed.equivalent(&p("sin(15*x)")));
        let z = fourier_series(
            &Source::Expr(Expr::zero()),
            "x",
            &Expr::one(),
            Truncation::Finite(4),
            FourierKind::Sine,
        )
        .unwrap();
        assert!(z.closed.is_zero());
    }

    #[test]
    fn json_schema() {
        let v = coeffs("cos(x)^2", FourierKind::Cosine).to_json();
        assert_eq!(v["general"]["a0"], "1/2");
        assert_eq!(v["general"]["an"], "0");
        assert_eq!(v["singular"][0]["n"], 2);
        assert_eq!(v["singular"][0]["a"], "1/2");
        assert_eq!(v["warning"], "excluding n in {2}");
    }

    #[test]
    fn rejects_bad_half_period() {
        assert!(fourier_coeff(
            &Source::Expr(Expr::one()),
            "x",
            &Expr::int(-1),
            FourierKind::Trig
        )
        .is_err());
    }
}
