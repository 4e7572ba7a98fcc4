//! Exact scalars: rational functions in π with Gaussian-rational coefficients.
//!
//! Every constant produced by the symbolic engine lives here, e.g.
//! `(98*pi^2+3)/98` or `-%i/4`. Values are kept reduced (numerator and
//! denominator coprime, denominator monic), so structural equality is
//! semantic equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        GaussRat {
            re: &self.re / &d,
            im: -(&self.im / &d),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // very large numerators/denominators: scale through bit shifts
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let shift = n - d;
    let scaled = if shift > 0 {
        BigRational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        BigRational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re / &o.re);
        }
        self * &o.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

/// Dense univariate polynomial in π, coefficients low degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PiPoly(Vec<GaussRat>);

impl PiPoly {
    fn zero() -> Self {
        PiPoly(Vec::new())
    }

    fn constant(c: GaussRat) -> Self {
        let mut p = PiPoly(vec![c]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &GaussRat {
        self.0
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn add(&self, o: &PiPoly) -> PiPoly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.0.get(k), o.0.get(k)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        let mut p = PiPoly(out);
        p.trim();
        p
    }

    fn neg(&self) -> PiPoly {
        PiPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &PiPoly) -> PiPoly {
        if self.is_zero() || o.is_zero() {
            return PiPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut p = PiPoly(out);
        p.trim();
        p
    }

    fn scale(&self, c: &GaussRat) -> PiPoly {
        let mut p = PiPoly(self.0.iter().map(|a| a * c).collect());
        p.trim();
        p
    }

    fn div_rem(&self, d: &PiPoly) -> (PiPoly, PiPoly) {
        let mut rem = self.clone();
        if rem.0.len() < d.0.len() {
            return (PiPoly::zero(), rem);
        }
        let inv_lead = d.lead().inv();
        let mut q = vec![GaussRat::zero(); rem.0.len() - d.0.len() + 1];
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let c = rem.lead() * &inv_lead;
            for (k, dc) in d.0.iter().enumerate() {
                rem.0[shift + k] = &rem.0[shift + k] - &(&c * dc);
            }
            q[shift] = c;
            rem.trim();
        }
        let mut q = PiPoly(q);
        q.trim();
        (q, rem)
    }

    fn monic(&self) -> PiPoly {
        let inv = self.lead().inv();
        self.scale(&inv)
    }

    fn gcd(a: &PiPoly, b: &PiPoly) -> PiPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.monic()
        }
    }

    fn eval_c64(&self, pi: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.0.iter().rev() {
            acc = acc * pi + c.to_c64();
        }
        acc
    }
}

/// Element of Q(i)(π), kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    num: PiPoly,
    den: PiPoly,
}

impl Scalar {
    fn from_parts(num: PiPoly, den: PiPoly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator in Scalar");
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.0.len() == 1 {
            let inv = den.0[0].inv();
            return Scalar {
                num: num.scale(&inv),
                den: PiPoly::constant(GaussRat::one()),
            };
        }
        let g = PiPoly::gcd(&num, &den);
        let (num, den) = if g.degree() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let inv = den.lead().inv();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: PiPoly::zero(),
            den: PiPoly::constant(GaussRat::one()),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Scalar {
        Scalar::from_gauss(GaussRat::from_int(v))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::from_gauss(GaussRat::real(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_gauss(c: GaussRat) -> Scalar {
        Scalar {
            num: PiPoly::constant(c),
            den: PiPoly::constant(GaussRat::one()),
        }
    }

    pub fn pi() -> Scalar {
        Scalar {
            num: PiPoly(vec![GaussRat::zero(), GaussRat::one()]),
            den: PiPoly::constant(GaussRat::one()),
        }
    }

    pub fn i() -> Scalar {
        Scalar::from_gauss(GaussRat::i())
    }

    /// Exact conversion of a finite double (every finite f64 is a dyadic rational).
    /// The shortest decimal that round-trips to `v`, as an exact rational.
    pub fn from_f64_decimal(v: f64) -> Option<Scalar> {
        if !v.is_finite() {
            return None;
        }
        let s = format!("{:e}", v);
        let (mant, exp) = s.split_once('e')?;
        let exp: i64 = exp.parse().ok()?;
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mant),
        };
        let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
        let digits: BigInt = format!("{}{}", ip, fp).parse().ok()?;
        let scale = exp - fp.len() as i64;
        let ten = BigInt::from(10);
        let mut r = BigRational::from_integer(digits);
        if scale >= 0 {
            r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        Some(Scalar::from_rational(if neg { -r } else { r }))
    }

    pub fn from_f64_exact(v: f64) -> Option<Scalar> {
        BigRational::from_float(v).map(Scalar::from_rational)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.den.is_one() && self.num.0.len() == 1 && (-&self.num.0[0]).is_one()
    }

    /// True when no π appears (a plain Gaussian rational).
    pub fn is_numeric(&self) -> bool {
        self.num.0.len() <= 1 && self.den.0.len() == 1
    }

    pub fn is_real(&self) -> bool {
        self.num
            .0
            .iter()
            .chain(self.den.0.iter())
            .all(GaussRat::is_real)
    }

    pub fn as_gauss(&self) -> Option<GaussRat> {
        if !self.is_numeric() {
            return None;
        }
        Some(self.num.0.first().cloned().unwrap_or_else(GaussRat::zero))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gauss().filter(GaussRat::is_real).map(|g| g.re)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|v| v.to_i64())
    }

    /// `Some(q)` when the value is exactly `q·π` with rational `q`.
    pub fn as_pi_multiple(&self) -> Option<BigRational> {
        if !self.den.is_one() || self.num.0.len() != 2 {
            return None;
        }
        if !self.num.0[0].is_zero() || !self.num.0[1].is_real() {
            return None;
        }
        Some(self.num.0[1].re.clone())
    }

    /// `Some((q, r))` when the value is `q·π + r` with rational `q` and
    /// `r` free of `π`.
    pub fn split_pi_linear(&self) -> Option<(BigRational, Scalar)> {
        if !self.den.is_one() || self.num.0.len() > 2 {
            return None;
        }
        let q = match self.num.0.get(1) {
            Some(c) if c.is_real() => c.re.clone(),
            Some(_) => return None,
            None => BigRational::zero(),
        };
        let r = self.num.0.first().cloned().unwrap_or_else(GaussRat::zero);
        Some((q, Scalar::from_gauss(r)))
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero Scalar");
        Scalar::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i32) -> Scalar {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self) -> Scalar {
        let c = |p: &PiPoly| PiPoly(p.0.iter().map(GaussRat::conj).collect());
        Scalar::from_parts(c(&self.num), c(&self.den))
    }

    pub fn re(&self) -> Scalar {
        let half = Scalar::from_ratio(1, 2);
        &(self + &self.conj()) * &half
    }

    pub fn im(&self) -> Scalar {
        let half_i = Scalar::from_gauss(GaussRat::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
        ));
        &(self - &self.conj()) * &half_i
    }

    pub fn to_c64(&self) -> Complex64 {
        let pi = std::f64::consts::PI;
        self.num.eval_c64(pi) / self.den.eval_c64(pi)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    /// Numerical ordering of real values; exact ties compare Equal.
    pub fn cmp_value(&self, other: &Scalar) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let d = self - other;
        if let Some(r) = d.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        d.to_f64().partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    /// Sign of the leading coefficient, used to pick canonical signs.
    pub fn leading_sign(&self) -> Ordering {
        match self.num.0.last() {
            None => Ordering::Equal,
            Some(c) => {
                if !c.re.is_zero() {
                    c.re.cmp(&BigRational::zero())
                } else {
                    c.im.cmp(&BigRational::zero())
                }
            }
        }
    }

    /// Whether the value is a single signed term (rendering needs no parentheses).
    pub(crate) fn is_atomic_term(&self) -> bool {
        let terms = self.num.0.iter().filter(|c| !c.is_zero()).count();
        terms == 1 && self.num.0.iter().all(|c| c.re.is_zero() || c.im.is_zero())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::from_parts(self.num.add(&o.num), self.den.clone());
        }
        Scalar::from_parts(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: self.den.clone(),
            };
        }
        Scalar::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if let Some(s) = fmt_decimal(r) {
        s
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rationals with a denominator `10^k`, `k >= 6`, came from decimal input or
/// float data and print back as decimals.
fn fmt_decimal(r: &BigRational) -> Option<String> {
    let mut d = r.denom().clone();
    let ten = BigInt::from(10);
    let mut k = 0usize;
    while (&d % &ten).is_zero() {
        d /= &ten;
        k += 1;
    }
    if !d.is_one() || k < 6 {
        return None;
    }
    let digits = r.numer().abs().to_string();
    let digits = if digits.len() <= k {
        format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - k);
    let sign = if r.numer().is_negative() { "-" } else { "" };
    Some(format!("{}{}.{}", sign, int, frac))
}

fn fmt_gauss(g: &GaussRat) -> String {
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => fmt_rational(&g.re),
        (true, false) => {
            if g.im.is_one() {
                "%i".into()
            } else if (-g.im.clone()).is_one() {
                "-%i".into()
            } else if g.im.is_integer() {
                format!("{}*%i", g.im.numer())
            } else if g.im.numer().is_one() {
                format!("%i/{}", g.im.denom())
            } else if (-g.im.numer()).is_one() {
                format!("-%i/{}", g.im.denom())
            } else {
                format!("{}*%i/{}", g.im.numer(), g.im.denom())
            }
        }
        (false, false) => {
            let im = fmt_gauss(&GaussRat::new(BigRational::zero(), g.im.clone()));
            if im.starts_with('-') {
                format!("({}{})", fmt_rational(&g.re), im)
            } else {
                format!("({}+{})", fmt_rational(&g.re), im)
            }
        }
    }
}

fn fmt_pipoly(p: &PiPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let pi_part = match k {
            0 => String::new(),
            1 => "pi".to_string(),
            _ => format!("pi^{}", k),
        };
        let coef = fmt_gauss(c);
        let term = if pi_part.is_empty() {
            coef
        } else if c.is_one() {
            pi_part
        } else if (-c).is_one() {
            format!("-{}", pi_part)
        } else if c.is_real() && c.re.is_integer() {
            format!("{}*{}", coef, pi_part)
        } else if c.is_real() && c.re.numer().abs().is_one() {
            let sign = if c.re.is_negative() { "-" } else { "" };
            format!("{}{}/{}", sign, pi_part, c.re.denom())
        } else if c.is_real() {
            format!("{}*{}/{}", c.re.numer(), pi_part, c.re.denom())
        } else {
            format!("{}*{}", coef, pi_part)
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out = format!("{}-{}", out, rest);
        } else {
            out = format!("{}+{}", out, term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains('+') || body.contains('-') || body.contains('/')
}

impl fmt::Display for Scalar {
    /// Renders in the expression grammar, e.g. `(98*pi^2+3)/98`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nterms = self.num.0.iter().filter(|c| !c.is_zero()).count();
        if self.den.is_one() && nterms <= 1 {
            return write!(f, "{}", fmt_pipoly(&self.num));
        }
        // clear rational denominators so both sides print with integer coefficients
        let mut l = BigInt::one();
        for c in self.num.0.iter().chain(self.den.0.iter()) {
            l = l.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let lr = GaussRat::real(BigRational::from_integer(l));
        let num = fmt_pipoly(&self.num.scale(&lr));
        let den = fmt_pipoly(&self.den.scale(&lr));
        if den == "1" {
            return write!(f, "{}", num);
        }
        let den = if needs_parens(&den) || den.contains('*') || den.contains('^') {
            format!("({})", den)
        } else {
            den
        };
        let num = if needs_parens(&num) {
            format!("({})", num)
        } else {
            num
        };
        write!(f, "{}/{}", num, den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn reduces_common_factors() {
        // (pi^2 - 1)/(pi - 1) == pi + 1
        let pi = Scalar::pi();
        let a = &(&pi * &pi) - &Scalar::one();
        let b = &pi - &Scalar::one();
        assert_eq!(&a / &b, &pi + &Scalar::one());
    }

    #[test]
    fn mixed_constant_renders() {
        let pi = Scalar::pi();
        let v = &(&(&q(98, 1) * &(&pi * &pi)) + &q(3, 1)) / &q(98, 1);
        assert_eq!(v.to_string(), "(98*pi^2+3)/98");
        assert_eq!(
            (&Scalar::one() / &(&q(3, 1) * &Scalar::pi())).to_string(),
            "1/(3*pi)"
        );
        assert!((v.to_f64() - (98.0 * std::f64::consts::PI.powi(2) + 3.0) / 98.0).abs() < 1e-12);
    }

    #[test]
    fn imaginary_unit() {
        let v = &(-&Scalar::i()) / &q(4, 1);
        assert_eq!(v.to_string(), "-%i/4");
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(v.re(), Scalar::zero());
        assert_eq!(v.im(), q(-1, 4));
    }

    #[test]
    fn pi_multiple_detection() {
        let v = &Scalar::pi() * &q(7, 2);
        assert_eq!(
            v.as_pi_multiple(),
            Some(BigRational::new(7.into(), 2.into()))
        );
        assert_eq!(q(1, 2).as_pi_multiple(), None);
    }

    #[test]
    fn value_ordering() {
        assert_eq!(Scalar::pi().cmp_value(&q(3, 1)), Ordering::Greater);
        assert_eq!((-Scalar::pi()).cmp_value(&Scalar::zero()), Ordering::Less);
    }
}
