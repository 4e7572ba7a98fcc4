//! Truncated and symbolic series in the summation index `n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr, INDEX};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    Finite(u64),
    Infinite,
}

impl Truncation {
    pub fn finite(n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::invalid(format!(
                "truncation order must be positive, got {}",
                n
            )));
        }
        Ok(Truncation::Finite(n as u64))
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Finite(n) => write!(f, "{}", n),
            Truncation::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "oo" | "infinity" => Ok(Truncation::Infinite),
            t => {
                let n: i64 = t
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad truncation order `{}`", s)))?;
                Truncation::finite(n)
            }
        }
    }
}

/// `closed + Σ summand(n)` over `start ≤ n ≤ N` (or `start ≤ |n| ≤ N` when
/// `symmetric`), skipping `excluded`. The values at excluded indices are
/// already part of `closed` and are kept in `singular_terms` so that finite
/// truncations can drop those beyond `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution {
    pub closed: Expr,
    pub singular_terms: Vec<(i64, Expr)>,
    pub summand: Expr,
    pub start: i64,
    pub symmetric: bool,
    pub excluded: BTreeSet<i64>,
    pub truncation: Truncation,
}

impl SeriesSolution {
    /// A finite expression with no remaining sum.
    pub fn closed_only(e: Expr, truncation: Truncation) -> Self {
        SeriesSolution {
            closed: e,
            singular_terms: Vec::new(),
            summand: Expr::zero(),
            start: 1,
            symmetric: false,
            excluded: BTreeSet::new(),
            truncation,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.summand.is_zero()
    }

    fn indices(&self, n: i64) -> impl Iterator<Item = i64> + '_ {
        let pos = self.start..=n;
        let neg = if self.symmetric {
            (self.start.max(1)..=n).map(|k| -k).collect()
        } else {
            Vec::new()
        };
        pos.chain(neg).filter(|k| !self.excluded.contains(k))
    }

    /// Instantiates the sum up to `n`, keeping only singular terms with `|j| ≤ n`.
    pub fn truncate(&self, n: u64) -> Expr {
        let n = n as i64;
        let mut out = self.closed.clone();
        for (j, t) in &self.singular_terms {
            if j.abs() > n {
                out = &out - t;
            }
        }
        if self.summand.is_zero() {
            return out;
        }
        for k in self.indices(n) {
            out = &out + &self.summand.at_index(k);
        }
        out
    }

    /// The expression for a finite truncation, or the sum up to `default_n`.
    pub fn instantiate(&self, default_n: u64) -> Expr {
        match self.truncation {
            Truncation::Finite(n) => self.truncate(n),
            Truncation::Infinite => self.truncate(default_n),
        }
    }

    pub fn warning(&self) -> Option<String> {
        if self.excluded.is_empty() || self.summand.is_zero() {
            return None;
        }
        let list: Vec<String> = self.excluded.iter().map(|k| k.to_string()).collect();
        Some(format!("excluding {} in {{{}}}", INDEX, list.join(", ")))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "closed": self.closed.to_string(),
            "summand": self.summand.to_string(),
            "start": self.start,
            "symmetric": self.symmetric,
            "excluded": self.excluded.iter().collect::<Vec<_>>(),
            "singular": self
                .singular_terms
                .iter()
                .map(|(j, t)| json!({"n": j, "term": t.to_string()}))
                .collect::<Vec<_>>(),
            "truncation": self.truncation.to_string(),
        });
        if let Some(w) = self.warning() {
            v["warning"] = Value::String(w);
        }
        v
    }
}

impl SeriesSolution {
    /// Reads the layout written by [`SeriesSolution::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let text = |v: &Value, key: &str| -> Result<Expr> {
            let s = v
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::invalid(format!("solution lacks `{}`", key)))?;
            parse_expr(s)
        };
        let mut singular_terms = Vec::new();
        for rec in v.get("singular").and_then(Value::as_array).into_iter().flatten() {
            let j = rec
                .get("n")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::invalid("singular record lacks `n`"))?;
            singular_terms.push((j, text(rec, "term")?));
        }
        let excluded = match v.get("excluded") {
            None => BTreeSet::new(),
            Some(e) => e
                .as_array()
                .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<_>>())
                .ok_or_else(|| Error::invalid("`excluded` must be a list of integers"))?,
        };
        let truncation = match v.get("truncation").and_then(Value::as_str) {
            Some(s) => s.parse()?,
            None => Truncation::Infinite,
        };
        Ok(SeriesSolution {
            closed: text(v, "closed")?,
            singular_terms,
            summand: text(v, "summand")?,
            start: v.get("start").and_then(Value::as_i64).unwrap_or(1),
            symmetric: v.get("symmetric").and_then(Value::as_bool).unwrap_or(false),
            excluded,
            truncation,
        })
    }
}

impl fmt::Display for SeriesSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summand.is_zero() {
            return write!(f, "{}", self.closed);
        }
        if !self.closed.is_zero() {
            write!(f, "{} + ", self.closed)?;
        }
        let lo = if self.symmetric {
            format!("-{}", self.truncation)
        } else {
            self.start.to_string()
        };
        write!(
            f,
            "sum({}, {}, {}, {})",
            self.summand, INDEX, lo, self.truncation
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn truncation_drops_far_singular_terms() {
        let s = SeriesSolution {
            closed: parse_expr("1 + sin(3*x)").unwrap(),
            singular_terms: vec![(3, parse_expr("sin(3*x)").unwrap())],
            summand: parse_expr("sin(n*x)/n").unwrap(),
            start: 1,
            symmetric: false,
            excluded: [3].into_iter().collect(),
            truncation: Truncation::Infinite,
        };
        assert!(s
            .truncate(2)
            .equivalent(&parse_expr("1 + sin(x) + sin(2*x)/2").unwrap()));
        assert!(s
            .truncate(4)
            .equivalent(&parse_expr("1 + sin(x) + sin(2*x)/2 + sin(3*x) + sin(4*x)/4").unwrap()));
        assert_eq!(s.warning().unwrap(), "excluding n in {3}");
    }

    #[test]
    fn parses_truncation() {
        assert_eq!("inf".parse::<Truncation>().unwrap(), Truncation::Infinite);
        assert_eq!("32".parse::<Truncation>().unwrap(), Truncation::Finite(32));
        assert!("0".parse::<Truncation>().is_err());
    }
}
