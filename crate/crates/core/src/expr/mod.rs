//! Exact symbolic expressions.
//!
//! An [`Expr`] is kept in a normal form: a numerator polynomial over *atoms*
//! (symbols, `sin`, `cos`, `exp`, `(-1)^n`, opaque functions, unevaluated
//! integrals, ...) with [`Scalar`] coefficients, divided by a product of
//! normalized polynomial factors. Trigonometric atoms are never multiplied
//! together and never raised to a power above one: every product is rewritten
//! by the product-to-sum identities as soon as it is formed, so an `Expr` is
//! always in canonical trigonometric form. `exp` atoms are merged, so a
//! monomial holds at most one of them.
//!
//! Zero testing is exact: `a == b` as functions iff `(a - b).is_zero()`.

mod calculus;
mod classify;
mod eval;
mod factor;
mod kernels;
mod node;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::scalar::Scalar;

pub(crate) use calculus::linear_in;
pub use calculus::{antiderivative, differentiate, integrate_definite};
pub use classify::{classify_term, PatternClass, PatternTag};
pub use eval::{eval_complex, eval_numeric, Bindings, OpaqueFn, OpaqueImpls};
pub use node::{trig_canonicalize, Node};
pub use parse::{parse_expr, parse_node};

/// Name of the integer index symbol used by coefficient formulas.
pub const INDEX: &str = "n";

/// Indivisible building block of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Sym(String),
    /// `(-1)^n` for the integer index `n`.
    Alt,
    Sin(Arc<Expr>),
    Cos(Arc<Expr>),
    Exp(Arc<Expr>),
    Log(Arc<Expr>),
    /// `base^exponent` with a non-integer or symbolic exponent.
    Pow(Arc<Expr>, Arc<Expr>),
    /// Opaque function application, `deriv` counts derivatives (`f''(x)`).
    Func {
        name: String,
        deriv: u32,
        args: Vec<Expr>,
    },
    Integral(Arc<IntegralAtom>),
}

/// Unevaluated definite integral `∫_lo^hi integrand d(var)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntegralAtom {
    pub integrand: Expr,
    pub var: String,
    pub lo: Expr,
    pub hi: Expr,
}

impl Atom {
    /// Atoms that only ever appear with exponent one after normalization.
    fn is_unit_power(&self) -> bool {
        matches!(self, Atom::Alt | Atom::Exp(_) | Atom::Pow(..))
    }

    /// Whether `var` occurs free anywhere inside this atom.
    pub fn depends_on(&self, var: &str) -> bool {
        match self {
            Atom::Sym(s) => s == var,
            Atom::Alt => var == INDEX,
            Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Log(u) => u.depends_on(var),
            Atom::Pow(b, e) => b.depends_on(var) || e.depends_on(var),
            Atom::Func { args, .. } => args.iter().any(|a| a.depends_on(var)),
            Atom::Integral(i) => {
                i.lo.depends_on(var)
                    || i.hi.depends_on(var)
                    || (i.var != var && i.integrand.depends_on(var))
            }
        }
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Atom::Sym(s) => {
                out.insert(s.clone());
            }
            Atom::Alt => {
                out.insert(INDEX.to_string());
            }
            Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Log(u) => u.collect_symbols(out),
            Atom::Pow(b, e) => {
                b.collect_symbols(out);
                e.collect_symbols(out);
            }
            Atom::Func { args, .. } => args.iter().for_each(|a| a.collect_symbols(out)),
            Atom::Integral(i) => {
                let mut inner = BTreeSet::new();
                i.integrand.collect_symbols(&mut inner);
                inner.remove(&i.var);
                out.extend(inner);
                i.lo.collect_symbols(out);
                i.hi.collect_symbols(out);
            }
        }
    }

    fn contains_opaque(&self) -> bool {
        match self {
            Atom::Func { name, .. } => !eval::is_builtin(name),
            Atom::Integral(_) => true,
            Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Log(u) => u.contains_opaque(),
            Atom::Pow(b, e) => b.contains_opaque() || e.contains_opaque(),
            _ => false,
        }
    }
}

/// Product of atoms with nonzero integer exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Atom, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn atom(a: Atom, k: i32) -> Self {
        let mut m = BTreeMap::new();
        if k != 0 {
            m.insert(a, k);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &i32)> {
        self.0.iter()
    }

    pub fn exponent(&self, a: &Atom) -> i32 {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn depends_on(&self, var: &str) -> bool {
        self.0.keys().any(|a| a.depends_on(var))
    }

    /// Exponent-wise product without any rewriting.
    fn raw_mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (a, k) in &o.0 {
            let e = m.entry(a.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                m.remove(a);
            }
        }
        Monomial(m)
    }

    fn raw_inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(a, k)| (a.clone(), -k)).collect())
    }

    fn needs_normalize(&self) -> bool {
        let mut trig = 0;
        let mut exps = 0;
        let mut pows: BTreeSet<&Expr> = BTreeSet::new();
        let mut syms: BTreeSet<&str> = BTreeSet::new();
        for (a, &k) in &self.0 {
            match a {
                Atom::Sin(_) | Atom::Cos(_) if k > 0 => trig += k,
                Atom::Alt | Atom::Exp(_) if k != 1 => return true,
                Atom::Exp(_) => exps += 1,
                Atom::Pow(b, _) => {
                    if k != 1 || !pows.insert(b) {
                        return true;
                    }
                }
                Atom::Sym(s) => {
                    syms.insert(s);
                }
                _ => {}
            }
        }
        if trig > 1 || exps > 1 {
            return true;
        }
        pows.iter().any(|b| match b.as_atom() {
            Some((Atom::Sym(s), 1)) => syms.contains(s.as_str()),
            _ => false,
        })
    }

    /// Total degree and lexicographic tiebreak; a monomial order for division.
    fn grlex_cmp(&self, o: &Monomial) -> std::cmp::Ordering {
        let da: i64 = self.0.values().map(|&k| k as i64).sum();
        let db: i64 = o.0.values().map(|&k| k as i64).sum();
        da.cmp(&db).then_with(|| {
            let atoms: BTreeSet<&Atom> = self.0.keys().chain(o.0.keys()).collect();
            for a in atoms {
                let c = self.exponent(a).cmp(&o.exponent(a));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().all(|(a, &k)| o.exponent(a) >= k)
    }
}

/// Sparse polynomial over atoms with exact coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly(BTreeMap<Monomial, Scalar>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = BTreeMap::new();
        if !c.is_zero() {
            p.insert(m, c);
        }
        Poly(p)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.0.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    fn add_poly(&mut self, o: &Poly) {
        for (m, c) in &o.0 {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn add_scaled(&mut self, o: &Poly, s: &Scalar) {
        for (m, c) in &o.0 {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c * s)).collect())
    }

    /// Product with canonical rewriting of every resulting monomial.
    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                let c = ca * cb;
                let m = ma.raw_mul(mb);
                if m.needs_normalize() {
                    out.add_scaled(&kernels::normalize_monomial(&m), &c);
                } else {
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    fn raw_mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                out.add_term(ma.raw_mul(mb), ca * cb);
            }
        }
        out
    }

    fn mul_monomial_raw(&self, m: &Monomial) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(k, c)| (k.raw_mul(m), c.clone()))
                .collect(),
        )
    }

    /// Re-applies canonical rewriting to every monomial.
    fn normalized(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if m.needs_normalize() {
                out.add_scaled(&kernels::normalize_monomial(m), c);
            } else {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.0.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact quotient `self / d` when it exists as a (Laurent) polynomial.
    fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        // shift both sides so all exponents are nonnegative
        let mut shift: BTreeMap<Atom, i32> = BTreeMap::new();
        for m in self.0.keys().chain(d.0.keys()) {
            for (a, &k) in &m.0 {
                if k < 0 {
                    let e = shift.entry(a.clone()).or_insert(0);
                    *e = (*e).max(-k);
                }
            }
        }
        let s = Monomial(shift);
        let mut rem = self.mul_monomial_raw(&s);
        let dd = d.mul_monomial_raw(&s);
        let (dm, dc) = {
            let (m, c) = dd.leading()?;
            (m.clone(), c.clone())
        };
        let mut q = Poly::zero();
        let mut guard = 0;
        while !rem.is_zero() {
            guard += 1;
            if guard > 4096 {
                return None;
            }
            let (rm, rc) = {
                let (m, c) = rem.leading()?;
                (m.clone(), c.clone())
            };
            if !dm.divides(&rm) {
                return None;
            }
            let tm = rm.raw_mul(&dm.raw_inv());
            let tc = &rc / &dc;
            let t = Poly::term(tc, tm);
            rem = {
                let mut r = rem.clone();
                r.add_poly(&t.raw_mul(&dd).neg());
                r
            };
            q.add_poly(&t);
        }
        // quotient of shifted numerator by shifted divisor; the shifts cancel
        Some(q.normalized())
    }

    pub fn depends_on(&self, var: &str) -> bool {
        self.0.keys().any(|m| m.depends_on(var))
    }
}

/// Canonical rational expression `num / Π den_i^{e_i}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Expr {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr {
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Expr {
        Expr::scalar(Scalar::one())
    }

    pub fn int(v: i64) -> Expr {
        Expr::scalar(Scalar::from_int(v))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::scalar(Scalar::from_ratio(n, d))
    }

    pub fn pi() -> Expr {
        Expr::scalar(Scalar::pi())
    }

    pub fn i() -> Expr {
        Expr::scalar(Scalar::i())
    }

    pub fn scalar(s: Scalar) -> Expr {
        Expr {
            num: Poly::constant(s),
            den: Vec::new(),
        }
    }

    pub fn sym(name: &str) -> Expr {
        Expr::from_atom(Atom::Sym(name.to_string()))
    }

    pub fn from_atom(a: Atom) -> Expr {
        Expr::from_poly(Poly::term(Scalar::one(), Monomial::atom(a, 1)))
    }

    pub fn from_poly(p: Poly) -> Expr {
        Expr {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn from_monomial(c: Scalar, m: Monomial) -> Expr {
        Expr::from_poly(Poly::term(c, m))
    }

    pub fn sin(u: &Expr) -> Expr {
        kernels::sin(u)
    }

    pub fn cos(u: &Expr) -> Expr {
        kernels::cos(u)
    }

    pub fn exp(u: &Expr) -> Expr {
        kernels::exp(u)
    }

    pub fn log(u: &Expr) -> Expr {
        kernels::log(u)
    }

    pub fn sinh(u: &Expr) -> Expr {
        &(&Expr::exp(u) - &Expr::exp(&-u)) * &Expr::ratio(1, 2)
    }

    pub fn cosh(u: &Expr) -> Expr {
        &(&Expr::exp(u) + &Expr::exp(&-u)) * &Expr::ratio(1, 2)
    }

    /// `(-1)^n`.
    pub fn alt() -> Expr {
        Expr::from_atom(Atom::Alt)
    }

    /// General power; integer exponents expand, symbolic ones become atoms.
    pub fn pow(base: &Expr, exponent: &Expr) -> Expr {
        kernels::pow(base, exponent)
    }

    pub fn powi(&self, k: i32) -> Expr {
        if k == 0 {
            return Expr::one();
        }
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Expr::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Opaque function application `name(args)`.
    pub fn func(name: &str, args: Vec<Expr>) -> Expr {
        Expr::from_atom(Atom::Func {
            name: name.to_string(),
            deriv: 0,
            args,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.as_scalar().map_or(false, |s| s.is_one())
    }

    /// The value as a [`Scalar`] when it contains no atoms.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.den.is_empty() {
            return None;
        }
        match self.num.0.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.num.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_scalar().and_then(|s| s.as_i64())
    }

    /// `Some((atom, k))` when the expression is exactly `atom^k`.
    pub fn as_atom(&self) -> Option<(&Atom, i32)> {
        if !self.den.is_empty() || self.num.0.len() != 1 {
            return None;
        }
        let (m, c) = self.num.0.iter().next().unwrap();
        if !c.is_one() || m.0.len() != 1 {
            return None;
        }
        m.0.iter().next().map(|(a, k)| (a, *k))
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self.as_atom() {
            Some((Atom::Sym(s), 1)) => Some(s),
            _ => None,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn has_denominator(&self) -> bool {
        !self.den.is_empty()
    }

    /// The denominator as an expression (1 when there is none).
    pub fn denominator(&self) -> Expr {
        let mut d = Expr::one();
        for (p, e) in &self.den {
            d = &d * &Expr::from_poly(p.clone()).powi(*e as i32);
        }
        d
    }

    pub fn numerator_expr(&self) -> Expr {
        Expr::from_poly(self.num.clone())
    }

    /// Splits into `coefficient * monomial / den` terms sharing the denominator.
    pub fn terms(&self) -> Vec<Expr> {
        self.num
            .0
            .iter()
            .map(|(m, c)| Expr {
                num: Poly::term(c.clone(), m.clone()),
                den: self.den.clone(),
            })
            .collect()
    }

    pub fn depends_on(&self, var: &str) -> bool {
        self.num.depends_on(var) || self.den.iter().any(|(p, _)| p.depends_on(var))
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        for p in std::iter::once(&self.num).chain(self.den.iter().map(|(p, _)| p)) {
            for m in p.0.keys() {
                for a in m.0.keys() {
                    a.collect_symbols(out);
                }
            }
        }
    }

    /// True if any opaque function symbol or unevaluated integral occurs.
    pub fn contains_opaque(&self) -> bool {
        std::iter::once(&self.num)
            .chain(self.den.iter().map(|(p, _)| p))
            .any(|p| p.0.keys().any(|m| m.0.keys().any(Atom::contains_opaque)))
    }

    /// Every atom occurring at top level (not inside arguments).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        std::iter::once(&self.num)
            .chain(self.den.iter().map(|(p, _)| p))
            .flat_map(|p| p.0.keys().flat_map(|m| m.0.keys().cloned()))
            .collect()
    }

    pub fn inv(&self) -> Expr {
        assert!(!self.is_zero(), "division by zero expression");
        // 1/(num/den) = den / num
        let mut out = Expr::one();
        for (p, e) in &self.den {
            out.num = out.num.mul(&p.clone());
            for _ in 1..*e {
                out.num = out.num.mul(p);
            }
        }
        let (unit, factors) = factor_out_poly(&self.num);
        out.num = out.num.mul(&unit);
        for f in factors {
            for (g, k) in factor::split_rational_roots(&f) {
                push_factor(&mut out.den, g, k);
            }
        }
        out.cancel();
        out
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut k = 0;
        while k < self.den.len() {
            while self.den[k].1 > 0 {
                match self.num.exact_div(&self.den[k].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[k].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[k].1 == 0 {
                self.den.remove(k);
            } else {
                k += 1;
            }
        }
    }

    /// Substitutes `value` for every free occurrence of `var`.
    pub fn subst(&self, var: &str, value: &Expr) -> Expr {
        calculus::subst(self, var, value)
    }

    /// Substitutes an integer for the index symbol `n`.
    pub fn at_index(&self, n: i64) -> Expr {
        self.subst(INDEX, &Expr::int(n))
    }

    /// Terms of the numerator split into (var-free coefficient, var-dependent monomial).
    pub fn split_by_var(&self, var: &str) -> Vec<(Expr, Monomial)> {
        let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.num.0 {
            let (free, dep): (BTreeMap<_, _>, BTreeMap<_, _>) =
                m.0.iter()
                    .map(|(a, k)| (a.clone(), *k))
                    .partition(|(a, _)| !a.depends_on(var));
            groups
                .entry(Monomial(dep))
                .or_default()
                .add_term(Monomial(free), c.clone());
        }
        groups
            .into_iter()
            .map(|(dep, free)| {
                let mut e = Expr {
                    num: free,
                    den: self.den.clone(),
                };
                e.cancel();
                (e, dep)
            })
            .collect()
    }

    /// Exact structural equivalence test, `a - b == 0`.
    pub fn equivalent(&self, o: &Expr) -> bool {
        (self - o).is_zero()
    }

    /// Drops numerator terms whose numeric coefficient is below `10^-exponent`
    /// in magnitude (strict). Coefficients carrying π are measured by value.
    pub fn chop(&self, exponent: u32) -> Expr {
        let threshold = 10f64.powi(-(exponent as i32));
        let mut num = Poly::zero();
        for (m, c) in &self.num.0 {
            if c.to_c64().norm() >= threshold {
                num.add_term(m.clone(), c.clone());
            }
        }
        let mut e = Expr {
            num,
            den: self.den.clone(),
        };
        e.cancel();
        e
    }
}

/// Splits a polynomial into a unit part (scalar times monomial) and its
/// normalized non-monomial factor, if any.
fn factor_out_poly(p: &Poly) -> (Poly, Vec<Poly>) {
    assert!(!p.is_zero());
    if p.0.len() == 1 {
        let (m, c) = p.0.iter().next().unwrap();
        return (inverse_monomial_poly(m, c), Vec::new());
    }
    // monomial content over atoms that may carry arbitrary integer exponents
    let mut content: BTreeMap<Atom, i32> = BTreeMap::new();
    let mut first = true;
    for m in p.0.keys() {
        if first {
            content = m.0.clone();
            first = false;
            continue;
        }
        content = content
            .into_iter()
            .filter_map(|(a, k)| {
                let e = m.exponent(&a);
                if a.is_unit_power() {
                    (e == k).then_some((a, k))
                } else if e == 0 {
                    None
                } else {
                    let v = if k > 0 && e > 0 {
                        k.min(e)
                    } else if k < 0 && e < 0 {
                        k.max(e)
                    } else {
                        0
                    };
                    (v != 0).then_some((a, v))
                }
            })
            .collect();
    }
    // clear negative exponents on atoms that do not appear in every term
    for m in p.0.keys() {
        for (a, &k) in &m.0 {
            if k < 0 && !a.is_unit_power() && !content.contains_key(a) {
                let min = p.0.keys().map(|mm| mm.exponent(a)).min().unwrap_or(0);
                content.insert(a.clone(), min);
            }
        }
    }
    let content = Monomial(content);
    let reduced = p.mul_monomial_raw(&content.raw_inv());
    let (lm, lc) = reduced
        .0
        .iter()
        .next_back()
        .map(|(m, c)| (m.clone(), c.clone()))
        .unwrap();
    let _ = lm;
    let factor = reduced.scale(&lc.inv());
    // 1/p = 1/(content * lc * factor)
    let unit = inverse_monomial_poly(&content, &lc);
    (unit, vec![factor])
}

/// `1 / (c * m)` as a polynomial.
fn inverse_monomial_poly(m: &Monomial, c: &Scalar) -> Poly {
    let mut out = Poly::constant(c.inv());
    for (a, &k) in &m.0 {
        let inv = match a {
            Atom::Exp(u) => {
                Poly::from_expr_num(&kernels::exp(&(u.as_ref() * &Expr::int(-(k as i64)))))
            }
            Atom::Pow(b, e) => {
                Poly::from_expr_num(&kernels::pow(b, &(e.as_ref() * &Expr::int(-(k as i64)))))
            }
            Atom::Alt => Poly::term(Scalar::one(), Monomial::atom(Atom::Alt, k.rem_euclid(2))),
            _ => Poly::term(Scalar::one(), Monomial::atom(a.clone(), -k)),
        };
        out = out.mul(&inv);
    }
    out
}

impl Poly {
    /// Numerator of a denominator-free expression.
    fn from_expr_num(e: &Expr) -> Poly {
        debug_assert!(e.den.is_empty());
        e.num.clone()
    }
}

fn push_factor(den: &mut Vec<(Poly, u32)>, f: Poly, e: u32) {
    if e == 0 {
        return;
    }
    match den.binary_search_by(|(p, _)| p.cmp(&f)) {
        Ok(i) => den[i].1 += e,
        Err(i) => den.insert(i, (f, e)),
    }
}

fn merge_lcm(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out = a.to_vec();
    for (p, e) in b {
        match out.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => out[i].1 = out[i].1.max(*e),
            Err(i) => out.insert(i, (p.clone(), *e)),
        }
    }
    out
}

/// Multiplies `num` by the factors of `full` missing from `have`.
fn lift_numerator(num: &Poly, have: &[(Poly, u32)], full: &[(Poly, u32)]) -> Poly {
    let mut out = num.clone();
    for (p, e) in full {
        let h = have.iter().find(|(q, _)| q == p).map_or(0, |(_, k)| *k);
        for _ in h..*e {
            out = out.mul(p);
        }
    }
    out
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let mut num = self.num.clone();
            num.add_poly(&o.num);
            let mut e = Expr {
                num,
                den: self.den.clone(),
            };
            if !e.den.is_empty() {
                e.cancel();
            }
            return e;
        }
        let den = merge_lcm(&self.den, &o.den);
        let mut num = lift_numerator(&self.num, &self.den, &den);
        num.add_poly(&lift_numerator(&o.num, &o.den, &den));
        let mut e = Expr { num, den };
        e.cancel();
        e
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        self + &(-o)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        if self.is_zero() || o.is_zero() {
            return Expr::zero();
        }
        let num = self.num.mul(&o.num);
        if self.den.is_empty() && o.den.is_empty() {
            return Expr {
                num,
                den: Vec::new(),
            };
        }
        let mut den = self.den.clone();
        for (p, e) in &o.den {
            push_factor(&mut den, p.clone(), *e);
        }
        let mut e = Expr { num, den };
        e.cancel();
        e
    }
}

impl Div for &Expr {
    type Output = Expr;
    fn div(self, o: &Expr) -> Expr {
        if let Some(s) = o.as_scalar() {
            return Expr {
                num: self.num.scale(&s.inv()),
                den: self.den.clone(),
            };
        }
        self * &o.inv()
    }
}

macro_rules! forward_owned_expr {
    ($tr:ident, $m:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                (&self).$m(&o)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                (&self).$m(o)
            }
        }
    };
}
forward_owned_expr!(Add, add);
forward_owned_expr!(Sub, sub);
forward_owned_expr!(Mul, mul);
forward_owned_expr!(Div, div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl From<Scalar> for Expr {
    fn from(s: Scalar) -> Self {
        Expr::scalar(s)
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Self {
        Expr::int(v)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render::render(self))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({})", render::render(self))
    }
}

#[cfg(test)]
mod tests;
