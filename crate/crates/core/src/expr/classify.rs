use serde::Serialize;

use super::calculus::linear_in;
use super::{Atom, Expr};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PatternTag {
    PolyCos,
    PolySin,
    PureCos,
    PureSin,
    PolyOnly,
    ExpMixed,
    Opaque,
    General,
}

/// Shape of a single product term with respect to the integration variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternClass {
    pub tag: PatternTag,
    pub degree: u32,
    pub wavenumber: Expr,
    pub phase: Expr,
    /// `m` with `wavenumber = m·π/L`, for positive integer `m`.
    pub resonant: Option<u64>,
}

impl PatternClass {
    fn new(tag: PatternTag) -> Self {
        PatternClass {
            tag,
            degree: 0,
            wavenumber: Expr::zero(),
            phase: Expr::zero(),
            resonant: None,
        }
    }
}

/// Classifies `term` against the patterns `x^r cos(a x + b)`, `x^r sin(a x + b)`,
/// `cos`, `sin` and `x^r`, detecting resonance with the modes `mπx/L`.
pub fn classify_term(term: &Expr, var: &str, l: &Expr) -> PatternClass {
    let groups = term.split_by_var(var);
    let dep = match groups.as_slice() {
        [(_, dep)] => dep,
        _ => return PatternClass::new(PatternTag::General),
    };
    if term
        .denominator_factors()
        .iter()
        .any(|(p, _)| p.depends_on(var))
    {
        return PatternClass::new(PatternTag::General);
    }
    let mut degree = 0u32;
    let mut trig: Option<(bool, &Expr)> = None;
    let mut has_exp = false;
    for (a, &k) in dep.iter() {
        match a {
            Atom::Sym(s) if s == var && k > 0 => degree = k as u32,
            Atom::Sin(u) | Atom::Cos(u) if k == 1 && trig.is_none() => {
                trig = Some((matches!(a, Atom::Cos(_)), u));
            }
            Atom::Exp(u) => {
                if linear_in(u, var).is_none() {
                    return PatternClass::new(PatternTag::General);
                }
                has_exp = true;
            }
            Atom::Func { .. } | Atom::Integral(_) => return PatternClass::new(PatternTag::Opaque),
            _ => return PatternClass::new(PatternTag::General),
        }
    }
    let mut out = PatternClass::new(PatternTag::PolyOnly);
    out.degree = degree;
    let Some((is_cos, u)) = trig else {
        if has_exp {
            out.tag = PatternTag::ExpMixed;
        }
        return out;
    };
    let Some((a, b)) = linear_in(u, var) else {
        return PatternClass::new(PatternTag::General);
    };
    out.tag = match (has_exp, is_cos, degree > 0) {
        (true, _, _) => PatternTag::ExpMixed,
        (false, true, true) => PatternTag::PolyCos,
        (false, true, false) => PatternTag::PureCos,
        (false, false, true) => PatternTag::PolySin,
        (false, false, false) => PatternTag::PureSin,
    };
    out.resonant = resonant_index(&a, l);
    out.wavenumber = a;
    out.phase = b;
    out
}

/// `m` when `a·L/π` is a positive integer.
pub(crate) fn resonant_index(a: &Expr, l: &Expr) -> Option<u64> {
    let r = &(a * l) / &Expr::pi();
    let s: Scalar = r.as_scalar()?;
    let v = s.as_i64()?;
    (v > 0).then_some(v as u64)
}
