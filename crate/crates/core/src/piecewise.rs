//! Piecewise-defined functions on a bounded interval.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_numeric, integrate_definite, parse_expr, Bindings, Expr, OpaqueImpls};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub lo: Scalar,
    pub hi: Scalar,
    pub body: Expr,
}

impl Branch {
    pub fn new(lo: Scalar, hi: Scalar, body: Expr) -> Self {
        Branch { lo, hi, body }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Ordered, non-overlapping branches covering `[lo, hi]` of one variable.
/// Endpoint openness is irrelevant to integration and is not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseExpr {
    var: String,
    branches: Vec<Branch>,
}

/// JSON branch record: `{"interval": ["-pi", "0"], "expr": "0"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchJson {
    pub interval: [String; 2],
    pub expr: String,
}

impl PiecewiseExpr {
    /// Sorts, validates and canonicalizes a list of branches.
    pub fn normalize(var: &str, mut branches: Vec<Branch>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::invalid("piecewise function without branches"));
        }
        for b in &branches {
            if b.lo.cmp_value(&b.hi) == Ordering::Greater {
                return Err(Error::invalid(format!(
                    "branch interval [{}, {}] is unordered",
                    b.lo, b.hi
                )));
            }
            if !b.lo.is_real() || !b.hi.is_real() {
                return Err(Error::invalid("branch endpoints must be real"));
            }
        }
        branches.retain(|b| b.lo != b.hi);
        if branches.is_empty() {
            return Err(Error::invalid("piecewise function with empty domain"));
        }
        branches.sort_by(|a, b| a.lo.cmp_value(&b.lo));
        for w in branches.windows(2) {
            match w[0].hi.cmp_value(&w[1].lo) {
                Ordering::Greater => {
                    return Err(Error::invalid(format!(
                        "branches [{}, {}] and [{}, {}] overlap",
                        w[0].lo, w[0].hi, w[1].lo, w[1].hi
                    )))
                }
                Ordering::Less => {
                    return Err(Error::invalid(format!(
                        "gap between {} and {}",
                        w[0].hi, w[1].lo
                    )));
                }
                Ordering::Equal => {}
            }
        }
        Ok(PiecewiseExpr {
            var: var.to_string(),
            branches,
        })
    }

    pub fn single(var: &str, lo: Scalar, hi: Scalar, body: Expr) -> Result<Self> {
        Self::normalize(var, vec![Branch::new(lo, hi, body)])
    }

    pub fn from_json(var: &str, text: &str) -> Result<Self> {
        let raw: Vec<BranchJson> = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("piecewise JSON: {}", e)))?;
        Self::from_records(var, &raw)
    }

    pub fn from_records(var: &str, raw: &[BranchJson]) -> Result<Self> {
        let scalar = |s: &str| -> Result<Scalar> {
            parse_expr(s)?.as_scalar().ok_or_else(|| {
                Error::invalid(format!("interval endpoint `{}` is not a constant", s))
            })
        };
        let branches = raw
            .iter()
            .map(|b| {
                Ok(Branch::new(
                    scalar(&b.interval[0])?,
                    scalar(&b.interval[1])?,
                    parse_expr(&b.expr)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(var, branches)
    }

    pub fn to_records(&self) -> Vec<BranchJson> {
        self.branches
            .iter()
            .map(|b| BranchJson {
                interval: [b.lo.to_string(), b.hi.to_string()],
                expr: b.body.to_string(),
            })
            .collect()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn domain(&self) -> (Scalar, Scalar) {
        (
            self.branches[0].lo.clone(),
            self.branches.last().unwrap().hi.clone(),
        )
    }

    /// The body when there is only one branch.
    pub fn as_single(&self) -> Option<&Expr> {
        (self.branches.len() == 1).then(|| &self.branches[0].body)
    }

    /// Applies `f` to every body, keeping the intervals.
    pub fn map(&self, mut f: impl FnMut(&Expr) -> Expr) -> PiecewiseExpr {
        PiecewiseExpr {
            var: self.var.clone(),
            branches: self
                .branches
                .iter()
                .map(|b| Branch::new(b.lo.clone(), b.hi.clone(), f(&b.body)))
                .collect(),
        }
    }

    /// Exact integral over `[lo, hi] ⊆` domain, branch by branch.
    pub fn integrate(&self, lo: &Scalar, hi: &Scalar) -> Result<Expr> {
        let (a, b) = self.domain();
        let (lo, hi, sign) = match lo.cmp_value(hi) {
            Ordering::Greater => (hi, lo, -1),
            _ => (lo, hi, 1),
        };
        if lo.cmp_value(&a) == Ordering::Less || hi.cmp_value(&b) == Ordering::Greater {
            return Err(Error::invalid(format!(
                "range [{}, {}] outside domain [{}, {}]",
                lo, hi, a, b
            )));
        }
        let mut total = Expr::zero();
        for br in &self.branches {
            let u = if br.lo.cmp_value(lo) == Ordering::Less {
                lo
            } else {
                &br.lo
            };
            let v = if br.hi.cmp_value(hi) == Ordering::Greater {
                hi
            } else {
                &br.hi
            };
            if u.cmp_value(v) != Ordering::Less {
                continue;
            }
            total = &total
                + &integrate_definite(
                    &br.body,
                    &self.var,
                    &Expr::scalar(u.clone()),
                    &Expr::scalar(v.clone()),
                )?;
        }
        Ok(if sign < 0 { -total } else { total })
    }

    /// The body active at an interior point.
    fn body_at(&self, x: &Scalar) -> Option<&Expr> {
        self.branches
            .iter()
            .find(|b| {
                b.lo.cmp_value(x) != Ordering::Greater && x.cmp_value(&b.hi) == Ordering::Less
            })
            .map(|b| &b.body)
    }

    /// Parity on the symmetric domain `[-L, L]`, by comparing mirrored
    /// subintervals exactly and falling back to numeric probes.
    pub fn parity(&self, l: &Scalar) -> Parity {
        let (a, b) = self.domain();
        if a != -l || b != *l {
            return Parity::Neither;
        }
        let mut cuts: Vec<Scalar> = vec![Scalar::zero(), l.clone()];
        for br in &self.branches {
            for p in [&br.lo, &br.hi] {
                let q = if p.cmp_value(&Scalar::zero()) == Ordering::Less {
                    -p
                } else {
                    p.clone()
                };
                cuts.push(q);
            }
        }
        cuts.sort_by(|x, y| x.cmp_value(y));
        cuts.dedup();
        let minus_x = -Expr::sym(&self.var);
        let mut even = true;
        let mut odd = true;
        for w in cuts.windows(2) {
            let mid = &(&w[0] + &w[1]) * &Scalar::from_ratio(1, 2);
            let (Some(fp), Some(fm)) = (self.body_at(&mid), self.body_at(&-&mid)) else {
                return Parity::Neither;
            };
            let mirrored = fm.subst(&self.var, &minus_x);
            if even && !(&mirrored - fp).is_zero() {
                even = probe(&mirrored, fp, &self.var, &w[0], &w[1], 1.0);
            }
            if odd && !(&mirrored + fp).is_zero() {
                odd = probe(&mirrored, fp, &self.var, &w[0], &w[1], -1.0);
            }
            if !even && !odd {
                return Parity::Neither;
            }
        }
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Neither,
        }
    }
}

/// Numeric fallback: `g(x) == sign·f(x)` at 40 points of `(u, v)` within 1e-11.
fn probe(g: &Expr, f: &Expr, var: &str, u: &Scalar, v: &Scalar, sign: f64) -> bool {
    let free = g
        .free_symbols()
        .into_iter()
        .chain(f.free_symbols())
        .all(|s| s == var);
    if !free || g.contains_opaque() || f.contains_opaque() {
        return false;
    }
    let (u, v) = (u.to_f64(), v.to_f64());
    let none = OpaqueImpls::new();
    (1..=40).all(|k| {
        let x = u + (v - u) * k as f64 / 41.0;
        let mut b = Bindings::new();
        b.insert(var.to_string(), x);
        match (eval_numeric(g, &b, &none), eval_numeric(f, &b, &none)) {
            (Ok(a), Ok(c)) => (a - sign * c).abs() <= 1e-11 * (1.0 + c.abs()),
            _ => false,
        }
    })
}
