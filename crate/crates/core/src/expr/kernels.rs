//! Canonicalizing constructors for transcendental atoms and the monomial
//! rewriting that keeps products in canonical trigonometric form.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Atom, Expr, Monomial, Poly, INDEX};
use crate::scalar::Scalar;

pub(super) fn sin(u: &Expr) -> Expr {
    trig(u, false)
}

pub(super) fn cos(u: &Expr) -> Expr {
    trig(u, true)
}

fn trig_atom(u: Expr, is_cos: bool) -> Expr {
    let u = Arc::new(u);
    Expr::from_atom(if is_cos { Atom::Cos(u) } else { Atom::Sin(u) })
}

/// Reduces `sin(u)`/`cos(u)`: integer multiples of `π·n` become `(-1)^n`,
/// rational multiples of `π` are reduced mod `2π` with quarter-turn shifts
/// folded into the other function, and the argument's sign is normalized.
fn trig(u: &Expr, mut is_cos: bool) -> Expr {
    if u.has_denominator() {
        return trig_atom(u.clone(), is_cos);
    }
    let n_mono = Monomial::atom(Atom::Sym(INDEX.to_string()), 1);
    let mut v = Poly::zero();
    let mut c = Scalar::zero();
    let mut alt = false;
    for (m, coef) in u.num.terms() {
        if m.is_one() {
            c = coef.clone();
            continue;
        }
        if *m == n_mono {
            if let Some(q) = coef.as_pi_multiple().filter(|q| q.is_integer()) {
                alt ^= q.to_integer().is_odd();
                continue;
            }
        }
        v.add_term(m.clone(), coef.clone());
    }

    let mut sign = 1i32;
    // the π-free part decides the sign so `π - 1` and `1 - π` meet
    let lead = match (v.0.iter().next_back(), c.split_pi_linear()) {
        (Some((_, lc)), _) => lc.clone(),
        (None, Some((_, rest))) if !rest.is_zero() => rest,
        _ => c.clone(),
    };
    let lead_negative = lead.leading_sign() == std::cmp::Ordering::Less;
    if lead_negative {
        v = v.neg();
        c = -&c;
        if !is_cos {
            sign = -sign;
        }
    }

    let kept;
    let pi_q = if c.is_zero() {
        Some((BigRational::zero(), Scalar::zero()))
    } else {
        c.split_pi_linear()
    };
    match pi_q {
        Some((q, rest)) => {
            let mut acc = rest;
            let two = BigRational::from_integer(BigInt::from(2));
            let mut q = q.clone() - (q / &two).floor() * &two;
            if q >= BigRational::one() {
                q -= BigRational::one();
                sign = -sign;
            }
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            if q == half {
                if is_cos {
                    sign = -sign;
                }
                is_cos = !is_cos;
            } else if !q.is_zero() {
                acc = &acc + &(&Scalar::from_rational(q) * &Scalar::pi());
            }
            kept = acc;
        }
        None => kept = c,
    }

    let mut w = v;
    w.add_term(Monomial::one(), kept);
    let core = if w.is_zero() {
        if is_cos {
            Expr::one()
        } else {
            Expr::zero()
        }
    } else {
        trig_atom(Expr::from_poly(w), is_cos)
    };
    let mut out = if sign < 0 { -&core } else { core };
    if alt {
        out = &out * &Expr::alt();
    }
    out
}

pub(super) fn exp(u: &Expr) -> Expr {
    if u.is_zero() {
        return Expr::one();
    }
    Expr::from_atom(Atom::Exp(Arc::new(u.clone())))
}

pub(super) fn log(u: &Expr) -> Expr {
    if u.is_one() {
        return Expr::zero();
    }
    if let Some((Atom::Exp(a), 1)) = u.as_atom() {
        return a.as_ref().clone();
    }
    Expr::from_atom(Atom::Log(Arc::new(u.clone())))
}

pub(super) fn pow(base: &Expr, e: &Expr) -> Expr {
    if let Some(k) = e.as_scalar().and_then(|s| s.as_i64()) {
        return base.powi(k as i32);
    }
    if e.is_zero() {
        return Expr::one();
    }
    if base.is_zero() {
        return Expr::zero();
    }
    if let Some(s) = base.as_scalar() {
        if s.is_one() {
            return Expr::one();
        }
        if s.is_minus_one() {
            if let Some(alt) = alternating(e) {
                return alt;
            }
        }
    }
    match base.as_atom() {
        Some((Atom::Sym(_), j)) if j != 1 => {
            let (a, _) = base.as_atom().unwrap();
            return pow(&Expr::from_atom(a.clone()), &(e * &Expr::int(j as i64)));
        }
        Some((Atom::Pow(b, e0), 1)) => return pow(b, &(e0.as_ref() * e)),
        Some((Atom::Exp(u), 1)) => return exp(&(u.as_ref() * e)),
        _ => {}
    }
    Expr::from_atom(Atom::Pow(Arc::new(base.clone()), Arc::new(e.clone())))
}

/// `(-1)^e` for `e = k·n + c` with integer `k`, `c`.
fn alternating(e: &Expr) -> Option<Expr> {
    if e.has_denominator() {
        return None;
    }
    let n_mono = Monomial::atom(Atom::Sym(INDEX.to_string()), 1);
    let mut odd_n = false;
    let mut sign = false;
    for (m, c) in e.num.terms() {
        let k = c.as_integer()?;
        if m.is_one() {
            sign = k.is_odd();
        } else if *m == n_mono {
            odd_n = k.is_odd();
        } else {
            return None;
        }
    }
    let mut out = if odd_n { Expr::alt() } else { Expr::one() };
    if sign {
        out = -&out;
    }
    Some(out)
}

/// Rewrites a raw exponent-wise product into canonical form.
pub(super) fn normalize_monomial(m: &Monomial) -> Poly {
    let mut base: BTreeMap<Atom, i32> = BTreeMap::new();
    let mut exp_arg = Expr::zero();
    let mut pows: BTreeMap<Expr, Expr> = BTreeMap::new();
    let mut trig: Vec<Atom> = Vec::new();
    for (a, &k) in m.iter() {
        match a {
            Atom::Alt => {
                if k.rem_euclid(2) == 1 {
                    base.insert(Atom::Alt, 1);
                }
            }
            Atom::Exp(u) => exp_arg = &exp_arg + &(u.as_ref() * &Expr::int(k as i64)),
            Atom::Pow(b, e) => {
                let slot = pows.entry(b.as_ref().clone()).or_insert_with(Expr::zero);
                *slot = &*slot + &(e.as_ref() * &Expr::int(k as i64));
            }
            Atom::Sin(_) | Atom::Cos(_) if k > 0 => {
                for _ in 0..k {
                    trig.push(a.clone());
                }
            }
            _ => {
                base.insert(a.clone(), k);
            }
        }
    }
    let mut acc = Poly::constant(Scalar::one());
    for (b, mut e) in pows {
        if let Some((Atom::Sym(s), 1)) = b.as_atom() {
            if let Some(j) = base.remove(&Atom::Sym(s.clone())) {
                e = &e + &Expr::int(j as i64);
            }
        }
        acc = acc.mul(&pow(&b, &e).num);
    }
    acc = acc.mul(&exp(&exp_arg).num);
    acc = acc.mul(&Poly::term(Scalar::one(), Monomial(base)));
    match trig.len() {
        0 => acc,
        1 => acc.mul(&Poly::term(
            Scalar::one(),
            Monomial::atom(trig[0].clone(), 1),
        )),
        _ => {
            let pair = trig_pair(&trig[0], &trig[1]);
            let mut rest = BTreeMap::new();
            for t in &trig[2..] {
                *rest.entry(t.clone()).or_insert(0) += 1;
            }
            acc.mul(&pair)
                .mul(&Poly::term(Scalar::one(), Monomial(rest)))
        }
    }
}

/// Product-to-sum for two trigonometric atoms.
fn trig_pair(a: &Atom, b: &Atom) -> Poly {
    let half = Expr::ratio(1, 2);
    let e = match (a, b) {
        (Atom::Sin(x), Atom::Sin(y)) => {
            &(cos(&(x.as_ref() - y.as_ref())) - cos(&(x.as_ref() + y.as_ref()))) * &half
        }
        (Atom::Cos(x), Atom::Cos(y)) => {
            &(cos(&(x.as_ref() - y.as_ref())) + cos(&(x.as_ref() + y.as_ref()))) * &half
        }
        (Atom::Sin(x), Atom::Cos(y)) => {
            &(sin(&(x.as_ref() + y.as_ref())) + sin(&(x.as_ref() - y.as_ref()))) * &half
        }
        (Atom::Cos(x), Atom::Sin(y)) => {
            &(sin(&(x.as_ref() + y.as_ref())) - sin(&(x.as_ref() - y.as_ref()))) * &half
        }
        _ => unreachable!("trig_pair on non-trigonometric atoms"),
    };
    debug_assert!(!e.has_denominator());
    e.num
}
