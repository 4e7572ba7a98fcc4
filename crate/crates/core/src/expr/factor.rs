//! Splitting of denominator factors at rational roots, so that equal
//! rational functions share one factored denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Atom, Monomial, Poly};
use crate::scalar::Scalar;

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Univariate view: the single symbol and rational coefficients by degree.
fn univariate(p: &Poly) -> Option<(Atom, Vec<BigRational>)> {
    let mut sym: Option<&Atom> = None;
    let mut coeffs: Vec<(usize, BigRational)> = Vec::new();
    for (m, c) in p.terms() {
        let c = c.as_rational()?;
        let mut it = m.iter();
        match (it.next(), it.next()) {
            (None, _) => coeffs.push((0, c)),
            (Some((a, &k)), None) if matches!(a, Atom::Sym(_)) && k > 0 => {
                if sym.map_or(false, |s| s != a) {
                    return None;
                }
                sym = Some(a);
                coeffs.push((k as usize, c));
            }
            _ => return None,
        }
    }
    let sym = sym?.clone();
    let deg = coeffs.iter().map(|c| c.0).max()?;
    let mut dense = vec![BigRational::zero(); deg + 1];
    for (k, c) in coeffs {
        dense[k] = c;
    }
    Some((sym, dense))
}

fn divisors(v: &BigInt) -> Option<Vec<u64>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            if d * d != v {
                out.push(v / d);
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| acc * x + a)
}

/// Synthetic division by `(x - r)`.
fn deflate(c: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = c.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + carry * r;
        q[k - 1] = carry.clone();
    }
    q
}

fn to_poly(sym: &Atom, c: &[BigRational]) -> Poly {
    let lead = c.last().unwrap().clone();
    let mut p = Poly::zero();
    for (k, a) in c.iter().enumerate() {
        if !a.is_zero() {
            p.add_term(
                Monomial::atom(sym.clone(), k as i32),
                Scalar::from_rational(a / &lead),
            );
        }
    }
    p
}

/// Splits a normalized factor into monic factors with multiplicities,
/// extracting every rational root of a univariate rational polynomial.
pub(super) fn split_rational_roots(p: &Poly) -> Vec<(Poly, u32)> {
    let Some((sym, mut c)) = univariate(p) else {
        return vec![(p.clone(), 1)];
    };
    if c.len() <= 2 || c[0].is_zero() {
        return vec![(p.clone(), 1)];
    }
    let l = c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|a| (a * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return vec![(p.clone(), 1)];
    };
    let mut roots: Vec<(BigRational, u32)> = Vec::new();
    let mut candidates: Vec<BigRational> = Vec::new();
    for a in &ps {
        for b in &qs {
            let r = BigRational::new(BigInt::from(*a), BigInt::from(*b));
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let mut mult = 0;
        while c.len() > 1 && eval(&c, &r).is_zero() {
            c = deflate(&c, &r);
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
        if c.len() <= 1 {
            break;
        }
    }
    let mut out = Vec::new();
    for (r, k) in roots {
        out.push((to_poly(&sym, &[-r, BigRational::one()]), k));
    }
    if c.len() > 1 {
        out.push((to_poly(&sym, &c), 1));
    }
    out
}
