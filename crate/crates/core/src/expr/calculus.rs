//! Substitution, differentiation and closed-form definite integration.

use std::sync::Arc;

use super::{kernels, Atom, Expr, IntegralAtom, Monomial, Poly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(super) fn subst(e: &Expr, var: &str, value: &Expr) -> Expr {
    if !e.depends_on(var) {
        return e.clone();
    }
    let num = subst_poly(&e.num, var, value);
    let mut den = Expr::one();
    for (p, k) in &e.den {
        den = &den * &subst_poly(p, var, value).powi(*k as i32);
    }
    &num / &den
}

fn subst_poly(p: &Poly, var: &str, value: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m, c) in p.terms() {
        let mut t = Expr::scalar(c.clone());
        for (a, &k) in m.iter() {
            let f = if a.depends_on(var) {
                subst_atom(a, var, value)
            } else {
                Expr::from_atom(a.clone())
            };
            t = &t * &f.powi(k);
        }
        out = &out + &t;
    }
    out
}

fn subst_atom(a: &Atom, var: &str, value: &Expr) -> Expr {
    match a {
        Atom::Sym(s) => {
            if s == var {
                value.clone()
            } else {
                Expr::from_atom(a.clone())
            }
        }
        Atom::Alt => Expr::pow(&Expr::int(-1), value),
        Atom::Sin(u) => Expr::sin(&subst(u, var, value)),
        Atom::Cos(u) => Expr::cos(&subst(u, var, value)),
        Atom::Exp(u) => Expr::exp(&subst(u, var, value)),
        Atom::Log(u) => Expr::log(&subst(u, var, value)),
        Atom::Pow(b, e) => Expr::pow(&subst(b, var, value), &subst(e, var, value)),
        Atom::Func { name, deriv, args } => Expr::from_atom(Atom::Func {
            name: name.clone(),
            deriv: *deriv,
            args: args.iter().map(|x| subst(x, var, value)).collect(),
        }),
        Atom::Integral(i) => {
            let body = if i.var == var {
                i.integrand.clone()
            } else {
                subst(&i.integrand, var, value)
            };
            let lo = subst(&i.lo, var, value);
            let hi = subst(&i.hi, var, value);
            integrate_definite(&body, &i.var, &lo, &hi)
                .unwrap_or_else(|_| integral_atom(&body, &i.var, &lo, &hi))
        }
    }
}

/// Exact partial derivative with respect to `var`.
pub fn differentiate(e: &Expr, var: &str) -> Result<Expr> {
    if !e.depends_on(var) {
        return Ok(Expr::zero());
    }
    let dn = diff_poly(&e.num, var)?;
    if e.den.is_empty() {
        return Ok(dn);
    }
    let d = e.denominator();
    let dd = diff_poly_expr(&d, var)?;
    let n = e.numerator_expr();
    Ok(&(&(&dn * &d) - &(&n * &dd)) / &(&d * &d))
}

fn diff_poly_expr(e: &Expr, var: &str) -> Result<Expr> {
    debug_assert!(e.den.is_empty());
    diff_poly(&e.num, var)
}

fn diff_poly(p: &Poly, var: &str) -> Result<Expr> {
    let mut out = Expr::zero();
    for (m, c) in p.terms() {
        for (a, &k) in m.iter() {
            if !a.depends_on(var) {
                continue;
            }
            let mut rest = m.clone();
            let slot = rest.0.get_mut(a).unwrap();
            *slot -= 1;
            if *slot == 0 {
                rest.0.remove(a);
            }
            let coef = c * &Scalar::from_int(k as i64);
            let t =
                &Expr::from_poly(Poly::from_monomial_normalized(coef, rest)) * &diff_atom(a, var)?;
            out = &out + &t;
        }
    }
    Ok(out)
}

impl Poly {
    fn from_monomial_normalized(c: Scalar, m: Monomial) -> Poly {
        if m.needs_normalize() {
            kernels::normalize_monomial(&m).scale(&c)
        } else {
            Poly::term(c, m)
        }
    }
}

fn diff_atom(a: &Atom, var: &str) -> Result<Expr> {
    Ok(match a {
        Atom::Sym(s) => {
            if s == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Atom::Alt => &(&Expr::alt() * &Expr::i()) * &Expr::pi(),
        Atom::Sin(u) => &Expr::cos(u) * &differentiate(u, var)?,
        Atom::Cos(u) => -&(&Expr::sin(u) * &differentiate(u, var)?),
        Atom::Exp(u) => &Expr::exp(u) * &differentiate(u, var)?,
        Atom::Log(u) => &differentiate(u, var)? / u.as_ref(),
        Atom::Pow(b, e) => {
            let p = Expr::pow(b, e);
            let db = differentiate(b, var)?;
            let de = differentiate(e, var)?;
            let mut s = Expr::zero();
            if !de.is_zero() {
                s = &de * &Expr::log(b);
            }
            if !db.is_zero() {
                s = &s + &(&(e.as_ref() * &db) / b.as_ref());
            }
            &p * &s
        }
        Atom::Func { name, deriv, args } => {
            let deps: Vec<usize> = (0..args.len())
                .filter(|&i| args[i].depends_on(var))
                .collect();
            match deps.as_slice() {
                [] => Expr::zero(),
                [i] if args.len() == 1 => {
                    let f = Expr::from_atom(Atom::Func {
                        name: name.clone(),
                        deriv: deriv + 1,
                        args: args.clone(),
                    });
                    &f * &differentiate(&args[*i], var)?
                }
                _ => {
                    return Err(Error::fragment(format!(
                        "partial derivative of multi-argument function `{}`",
                        name
                    )))
                }
            }
        }
        Atom::Integral(i) => {
            let mut out = Expr::zero();
            let dh = differentiate(&i.hi, var)?;
            if !dh.is_zero() {
                out = &out + &(&subst(&i.integrand, &i.var, &i.hi) * &dh);
            }
            let dl = differentiate(&i.lo, var)?;
            if !dl.is_zero() {
                out = &out - &(&subst(&i.integrand, &i.var, &i.lo) * &dl);
            }
            if i.var != var && i.integrand.depends_on(var) {
                let inner = differentiate(&i.integrand, var)?;
                out = &out + &integrate_definite(&inner, &i.var, &i.lo, &i.hi)?;
            }
            out
        }
    })
}

pub(super) fn integral_atom(body: &Expr, var: &str, lo: &Expr, hi: &Expr) -> Expr {
    if body.is_zero() || lo == hi {
        return Expr::zero();
    }
    // leading coefficient outside, so `∫(-g)` and `-∫g` share one atom
    let lead = body.num.terms().next().map(|(_, c)| c.clone());
    if let Some(c) = lead.filter(|c| !c.is_one()) {
        let unit = &Expr::scalar(c.clone()).inv() * body;
        return &Expr::scalar(c) * &integral_atom(&unit, var, lo, hi);
    }
    Expr::from_atom(Atom::Integral(Arc::new(IntegralAtom {
        integrand: body.clone(),
        var: var.to_string(),
        lo: lo.clone(),
        hi: hi.clone(),
    })))
}

/// Linear decomposition `u = slope·var + intercept`, if `u` is linear in `var`.
pub(crate) fn linear_in(u: &Expr, var: &str) -> Option<(Expr, Expr)> {
    if u.den.iter().any(|(p, _)| p.depends_on(var)) {
        return None;
    }
    let x = Monomial::atom(Atom::Sym(var.to_string()), 1);
    let mut slope = Expr::zero();
    let mut icpt = Expr::zero();
    for (coef, dep) in u.split_by_var(var) {
        if dep.is_one() {
            icpt = coef;
        } else if dep == x {
            slope = coef;
        } else {
            return None;
        }
    }
    Some((slope, icpt))
}

/// Integrable kernel `e^{αx+β}·{1, sin(ax+b), cos(ax+b)}` split off a monomial.
#[derive(Clone)]
struct Kernel {
    power: u32,
    exp: Option<(Expr, Arc<Expr>)>,
    trig: Option<(bool, Expr, Arc<Expr>)>,
}

enum Shape {
    Closed(Kernel),
    Opaque,
}

fn kernel_of(m: &Monomial, var: &str) -> Result<Shape> {
    let mut k = Kernel {
        power: 0,
        exp: None,
        trig: None,
    };
    for (a, &e) in m.iter() {
        match a {
            Atom::Sym(s) if s == var => {
                if e < 0 {
                    return Ok(Shape::Opaque);
                }
                k.power = e as u32;
            }
            Atom::Sin(u) | Atom::Cos(u) if e == 1 => {
                let (slope, _) = linear_in(u, var).ok_or_else(|| {
                    Error::fragment(format!(
                        "trigonometric argument `{}` is not linear in {}",
                        u, var
                    ))
                })?;
                k.trig = Some((matches!(a, Atom::Cos(_)), slope, u.clone()));
            }
            Atom::Exp(u) => {
                let (slope, _) = linear_in(u, var).ok_or_else(|| {
                    Error::fragment(format!(
                        "exponential argument `{}` is not linear in {}",
                        u, var
                    ))
                })?;
                k.exp = Some((slope, u.clone()));
            }
            _ => return Ok(Shape::Opaque),
        }
    }
    Ok(Shape::Closed(k))
}

/// One antiderivative of the kernel without its polynomial factor.
fn prim_kernel(k: &Kernel) -> Expr {
    match (&k.exp, &k.trig) {
        (None, None) => unreachable!(),
        (Some((al, u)), None) => &Expr::exp(u) / al,
        (None, Some((is_cos, a, v))) => {
            if *is_cos {
                &Expr::sin(v) / a
            } else {
                -&(&Expr::cos(v) / a)
            }
        }
        (Some((al, u)), Some((is_cos, a, v))) => {
            let e = Expr::exp(u);
            let den = &(al * al) + &(a * a);
            let (s, c) = (Expr::sin(v), Expr::cos(v));
            let body = if *is_cos {
                &(al * &c) + &(a * &s)
            } else {
                &(al * &s) - &(a * &c)
            };
            &(&e * &body) / &den
        }
    }
}

/// Antiderivative of `var^r · K`, by repeated integration by parts.
fn prim_monomial(k: &Kernel, var: &str) -> Result<Expr> {
    let x = Expr::sym(var);
    if k.exp.is_none() && k.trig.is_none() {
        return Ok(&x.powi(k.power as i32 + 1) / &Expr::int(k.power as i64 + 1));
    }
    let base = Kernel {
        power: 0,
        ..k.clone()
    };
    let mut layer = prim_kernel(&base);
    let mut out = Expr::zero();
    let mut fall = 1i64;
    let r = k.power as i64;
    for j in 0..=r {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let term = &(&Expr::int(sign * fall) * &x.powi((r - j) as i32)) * &layer;
        out = &out + &term;
        if j < r {
            fall *= r - j;
            layer = prim_combination(&layer, var)?;
        }
    }
    Ok(out)
}

/// Antiderivative of a linear combination of var-power-free kernels.
fn prim_combination(e: &Expr, var: &str) -> Result<Expr> {
    let mut out = Expr::zero();
    for (coef, dep) in e.split_by_var(var) {
        match kernel_of(&dep, var)? {
            Shape::Closed(k) if k.power == 0 && (k.exp.is_some() || k.trig.is_some()) => {
                out = &out + &(&coef * &prim_kernel(&k));
            }
            _ => {
                return Err(Error::fragment(
                    "iterated antiderivative left the kernel family",
                ))
            }
        }
    }
    Ok(out)
}

/// Exact `∫_lo^hi e d(var)`. Terms poly × {1, sin, cos, exp, exp·sin, exp·cos}
/// with linear arguments integrate in closed form; terms with opaque factors
/// remain as unevaluated integrals with their var-free coefficients pulled out.
pub fn integrate_definite(e: &Expr, var: &str, lo: &Expr, hi: &Expr) -> Result<Expr> {
    if lo == hi || e.is_zero() {
        return Ok(Expr::zero());
    }
    if e.den.iter().any(|(p, _)| p.depends_on(var)) {
        return Ok(integral_atom(e, var, lo, hi));
    }
    let num = Expr::from_poly(e.num.clone());
    let mut closed = Expr::zero();
    let mut opaque = Expr::zero();
    for (coef, dep) in num.split_by_var(var) {
        if dep.is_one() {
            closed = &closed + &(&coef * &(hi - lo));
            continue;
        }
        match kernel_of(&dep, var)? {
            Shape::Closed(k) => {
                let f = prim_monomial(&k, var)?;
                let v = &subst(&f, var, hi) - &subst(&f, var, lo);
                closed = &closed + &(&coef * &v);
            }
            Shape::Opaque => {
                for (phase, body) in detach_phases(&dep, var) {
                    opaque = &opaque + &(&(&coef * &phase) * &integral_atom(&body, var, lo, hi));
                }
            }
        }
    }
    let total = &closed + &opaque;
    Ok(if e.den.is_empty() {
        total
    } else {
        &total / &e.denominator()
    })
}

/// Rewrites `sin`, `cos` and `exp` of `a·var + b` so the `var`-free phase `b`
/// sits outside an unevaluated integral.
fn detach_phases(dep: &Monomial, var: &str) -> Vec<(Expr, Expr)> {
    let mut out = vec![(Expr::one(), Expr::one())];
    for (atom, &k) in dep.iter() {
        let split = match atom {
            Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) if k == 1 => linear_in(u, var)
                .filter(|(_, b)| !b.is_zero())
                .map(|(a, b)| (&a * &Expr::sym(var), b)),
            _ => None,
        };
        let pieces = match (atom, split) {
            (Atom::Sin(_), Some((d, b))) => vec![
                (Expr::sin(&b), Expr::cos(&d)),
                (Expr::cos(&b), Expr::sin(&d)),
            ],
            (Atom::Cos(_), Some((d, b))) => vec![
                (Expr::cos(&b), Expr::cos(&d)),
                (-Expr::sin(&b), Expr::sin(&d)),
            ],
            (Atom::Exp(_), Some((d, b))) => vec![(Expr::exp(&b), Expr::exp(&d))],
            _ => vec![(
                Expr::one(),
                Expr::from_monomial(Scalar::one(), Monomial::atom(atom.clone(), k)),
            )],
        };
        out = out
            .iter()
            .flat_map(|(c, b)| pieces.iter().map(move |(pc, pb)| (c * pc, b * pb)))
            .collect();
    }
    out
}

/// Antiderivative in closed form, or `None` when some term is opaque.
pub fn antiderivative(e: &Expr, var: &str) -> Result<Option<Expr>> {
    if e.den.iter().any(|(p, _)| p.depends_on(var)) {
        return Ok(None);
    }
    let x = Expr::sym(var);
    let mut out = Expr::zero();
    for (coef, dep) in Expr::from_poly(e.num.clone()).split_by_var(var) {
        if dep.is_one() {
            out = &out + &(&coef * &x);
            continue;
        }
        match kernel_of(&dep, var)? {
            Shape::Closed(k) => out = &out + &(&coef * &prim_monomial(&k, var)?),
            Shape::Opaque => return Ok(None),
        }
    }
    Ok(Some(if e.den.is_empty() {
        out
    } else {
        &out / &e.denominator()
    }))
}
