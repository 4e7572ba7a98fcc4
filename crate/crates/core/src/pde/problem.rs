//! JSON problem files. Every scalar and function travels as a grammar string.
//!
//! ```json
//! {"equation": "heat", "L": "1", "kappa": "1", "F": "x^2*(1-x)",
//!  "bc": [{"alpha": "1", "beta": "0", "h": "0"}, {"alpha": "1", "beta": "0", "h": "0"}],
//!  "order": "inf"}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::laplace::{R, THETA};
use super::{
    solve_heat_mixed, solve_laplace, solve_parabolic_mixed, solve_wave_dirichlet,
    solve_wave_disk_with, BoundaryRecord, Equation, IbvpSpec, LaplaceBc, LaplaceSpec,
    NumericModalSolution, RadialRule,
};
use crate::error::{Error, Result};
use crate::expr::{eval_numeric, parse_expr, Bindings, Expr, OpaqueImpls};
use crate::series::{SeriesSolution, Truncation};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderField {
    Count(u64),
    Text(String),
}

impl OrderField {
    pub fn truncation(&self) -> Result<Truncation> {
        match self {
            OrderField::Count(n) => Truncation::finite(*n as i64),
            OrderField::Text(s) => s.parse(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcField {
    pub alpha: String,
    pub beta: String,
    #[serde(default = "zero")]
    pub h: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceField {
    pub symbol: String,
    pub mode: u64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryField {
    pub a: Option<String>,
    pub b: Option<String>,
    pub flags: Option<[u8; 4]>,
    pub f0: Option<String>,
    pub fb: Option<String>,
    pub g0: Option<String>,
    pub ga: Option<String>,
    #[serde(rename = "R")]
    pub r: Option<String>,
    #[serde(rename = "R1")]
    pub r1: Option<String>,
    #[serde(rename = "R2")]
    pub r2: Option<String>,
    pub alpha: Option<String>,
    pub bc: Option<String>,
    pub f: Option<String>,
    pub g: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub equation: String,
    #[serde(rename = "L")]
    pub l: Option<String>,
    pub geometry: Option<GeometryField>,
    pub kappa: Option<String>,
    pub v: Option<String>,
    pub c: Option<String>,
    #[serde(rename = "Q")]
    pub q: Option<String>,
    #[serde(rename = "F")]
    pub f: Option<String>,
    #[serde(rename = "G")]
    pub g: Option<String>,
    pub bc: Option<Vec<BcField>>,
    pub order: Option<OrderField>,
    pub resonance: Option<ResonanceField>,
    pub k: Option<usize>,
    #[serde(rename = "l")]
    pub zeros: Option<usize>,
    pub chop: Option<u32>,
    /// `gauss-legendre:N` or `simpson:N` for the wave-disk radial quadrature.
    pub radial_rule: Option<String>,
}

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug)]
pub enum Problem {
    Ibvp(IbvpSpec, Truncation),
    Laplace(LaplaceSpec, Truncation),
    WaveDisk {
        c: f64,
        radius: f64,
        f: Expr,
        g: Expr,
        k: usize,
        l: usize,
        chop: u32,
        rule: RadialRule,
    },
}

#[derive(Clone, Debug)]
pub enum Solution {
    Series(SeriesSolution),
    Modal(NumericModalSolution, Expr),
}

impl Solution {
    /// The solution as one expression, summing symbolic series to `default_n`.
    pub fn instantiate(&self, default_n: u64) -> Expr {
        match self {
            Solution::Series(s) => s.instantiate(default_n),
            Solution::Modal(_, e) => e.clone(),
        }
    }
}

fn expr_or(field: &Option<String>, default: &str) -> Result<Expr> {
    parse_expr(field.as_deref().unwrap_or(default))
}

fn required<'a>(field: &'a Option<String>, name: &str) -> Result<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| Error::invalid(format!("missing field `{}`", name)))
}

fn number(e: &Expr, name: &str) -> Result<f64> {
    e.as_scalar()
        .filter(|s| s.is_real())
        .map(|s| s.to_f64())
        .ok_or_else(|| Error::invalid(format!("`{}` must be a real constant", name)))
}

fn parse_rule(s: &str) -> Result<RadialRule> {
    let bad = || Error::invalid(format!("unknown radial rule `{}`", s));
    let (name, n) = s.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    match name.trim() {
        "gauss-legendre" => Ok(RadialRule::GaussLegendre(n)),
        "simpson" => Ok(RadialRule::Simpson(n)),
        _ => Err(bad()),
    }
}

fn bc_kind(s: &Option<String>) -> Result<LaplaceBc> {
    match s.as_deref().unwrap_or("dirichlet") {
        "dirichlet" => Ok(LaplaceBc::Dirichlet),
        "neumann" => Ok(LaplaceBc::Neumann),
        other => Err(Error::invalid(format!("unknown boundary type `{}`", other))),
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("problem file: {}", e)))
    }

    fn order(&self) -> Result<Truncation> {
        self.order
            .as_ref()
            .map_or(Ok(Truncation::Infinite), OrderField::truncation)
    }

    pub fn to_problem(&self) -> Result<Problem> {
        let eq = self.equation.as_str();
        match eq {
            "heat" | "parabolic" | "wave" => self.ibvp(eq),
            "laplace-rectangle" | "laplace-disk" | "laplace-wedge" | "laplace-annulus" => {
                let g = self
                    .geometry
                    .clone()
                    .ok_or_else(|| Error::invalid("missing field `geometry`"))?;
                let spec = match eq {
                    "laplace-rectangle" => {
                        let flags = g.flags.unwrap_or([0; 4]);
                        if flags.iter().any(|&v| v > 1) {
                            return Err(Error::invalid("rectangle flags must be 0 or 1"));
                        }
                        LaplaceSpec::Rectangle {
                            a: parse_expr(required(&g.a, "geometry.a")?)?,
                            b: parse_expr(required(&g.b, "geometry.b")?)?,
                            flags: flags.map(|v| v == 1),
                            f0: expr_or(&g.f0, "0")?,
                            fb: expr_or(&g.fb, "0")?,
                            g0: expr_or(&g.g0, "0")?,
                            ga: expr_or(&g.ga, "0")?,
                        }
                    }
                    "laplace-disk" => LaplaceSpec::Disk {
                        r: parse_expr(required(&g.r, "geometry.R")?)?,
                        bc: bc_kind(&g.bc)?,
                        f: parse_expr(required(&g.f, "geometry.f")?)?,
                    },
                    "laplace-wedge" => LaplaceSpec::Wedge {
                        r: parse_expr(required(&g.r, "geometry.R")?)?,
                        alpha: parse_expr(required(&g.alpha, "geometry.alpha")?)?,
                        bc: bc_kind(&g.bc)?,
                        f: parse_expr(required(&g.f, "geometry.f")?)?,
                    },
                    _ => LaplaceSpec::Annulus {
                        r1: parse_expr(required(&g.r1, "geometry.R1")?)?,
                        r2: parse_expr(required(&g.r2, "geometry.R2")?)?,
                        bc: bc_kind(&g.bc)?,
                        f: parse_expr(required(&g.f, "geometry.f")?)?,
                        g: parse_expr(required(&g.g, "geometry.g")?)?,
                    },
                };
                Ok(Problem::Laplace(spec, self.order()?))
            }
            "wave-disk" => {
                let g = self.geometry.clone().unwrap_or_default();
                let radius = number(&parse_expr(required(&g.r, "geometry.R")?)?, "geometry.R")?;
                Ok(Problem::WaveDisk {
                    c: number(&expr_or(&self.c, "1")?, "c")?,
                    radius,
                    f: expr_or(&self.f, "0")?,
                    g: expr_or(&self.g, "0")?,
                    k: self.k.ok_or_else(|| Error::invalid("missing field `k`"))?,
                    l: self
                        .zeros
                        .ok_or_else(|| Error::invalid("missing field `l`"))?,
                    chop: self.chop.unwrap_or(12),
                    rule: self
                        .radial_rule
                        .as_deref()
                        .map_or(Ok(RadialRule::default()), parse_rule)?,
                })
            }
            other => Err(Error::invalid(format!("unknown equation `{}`", other))),
        }
    }

    fn ibvp(&self, eq: &str) -> Result<Problem> {
        let bc = self.bc.as_deref().unwrap_or_default();
        let records = match bc {
            [] => [
                BoundaryRecord::dirichlet(Expr::zero()),
                BoundaryRecord::dirichlet(Expr::zero()),
            ],
            [a, b] => {
                let rec = |r: &BcField| -> Result<BoundaryRecord> {
                    Ok(BoundaryRecord::new(
                        parse_expr(&r.alpha)?,
                        parse_expr(&r.beta)?,
                        parse_expr(&r.h)?,
                    ))
                };
                [rec(a)?, rec(b)?]
            }
            _ => {
                return Err(Error::invalid(
                    "`bc` must list exactly two boundary records",
                ))
            }
        };
        let [left, right] = records;
        let equation = match eq {
            "heat" => Equation::Heat,
            "parabolic" => Equation::Parabolic,
            _ => Equation::Wave,
        };
        if equation == Equation::Heat && (self.v.is_some() || self.c.is_some()) {
            return Err(Error::invalid(
                "heat problems take no `v` or `c`; use `parabolic`",
            ));
        }
        let spec = IbvpSpec {
            equation,
            l: parse_expr(required(&self.l, "L")?)?,
            kappa: expr_or(
                &self.kappa,
                if equation == Equation::Wave { "0" } else { "1" },
            )?,
            v: expr_or(&self.v, "0")?,
            c: expr_or(&self.c, if equation == Equation::Wave { "1" } else { "0" })?,
            q: expr_or(&self.q, "0")?,
            f: expr_or(&self.f, "0")?,
            g: expr_or(&self.g, "0")?,
            left,
            right,
            resonance: self.resonance.as_ref().map(|r| (r.symbol.clone(), r.mode)),
        };
        Ok(Problem::Ibvp(spec, self.order()?))
    }
}

/// Numeric initial data `f(r, θ)` from an expression in `r` and `theta`.
fn polar_callable(e: &Expr) -> Result<impl Fn(f64, f64) -> f64 + '_> {
    let free = e.free_symbols();
    if let Some(s) = free.iter().find(|s| *s != R && *s != THETA) {
        return Err(Error::Unbound(s.clone()));
    }
    let none = OpaqueImpls::new();
    let mut probe = Bindings::new();
    probe.insert(R.into(), 0.5);
    probe.insert(THETA.into(), 0.5);
    eval_numeric(e, &probe, &none)?;
    Ok(move |r: f64, th: f64| {
        let mut b = Bindings::new();
        b.insert(R.into(), r);
        b.insert(THETA.into(), th);
        eval_numeric(e, &b, &OpaqueImpls::new()).unwrap_or(f64::NAN)
    })
}

pub fn solve(problem: &Problem) -> Result<Solution> {
    match problem {
        Problem::Ibvp(spec, order) => Ok(Solution::Series(match spec.equation {
            Equation::Heat => solve_heat_mixed(spec, *order)?,
            Equation::Parabolic => solve_parabolic_mixed(spec, *order)?,
            Equation::Wave => solve_wave_dirichlet(spec, *order)?,
        })),
        Problem::Laplace(spec, order) => Ok(Solution::Series(solve_laplace(spec, *order)?)),
        Problem::WaveDisk {
            c,
            radius,
            f,
            g,
            k,
            l,
            chop,
            rule,
        } => {
            let (fc, gc) = (polar_callable(f)?, polar_callable(g)?);
            let sol = solve_wave_disk_with(*c, *radius, &fc, &gc, *k, *l, *rule)?;
            let chopped = sol.chopped(*chop);
            Ok(Solution::Modal(sol, chopped))
        }
    }
}

/// Solution JSON with a provenance block describing the input.
pub fn solution_json(file: &ProblemFile, solution: &Solution) -> Value {
    let mut provenance = serde_json::to_value(file).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut provenance {
        m.retain(|_, v| !v.is_null());
    }
    match solution {
        Solution::Series(s) => {
            let mut v = s.to_json();
            v["provenance"] = provenance;
            v
        }
        Solution::Modal(sol, chopped) => {
            let terms: Vec<Value> = sol
                .terms
                .iter()
                .map(|t| json!({"m": t.m, "j": t.j, "zero": t.zero, "a": t.a, "b": t.b, "a_dot": t.a_dot, "b_dot": t.b_dot}))
                .collect();
            json!({
                "closed": chopped.to_string(),
                "summand": "0",
                "excluded": [],
                "modes": terms,
                "c": sol.c,
                "R": sol.radius,
                "provenance": provenance,
            })
        }
    }
}

/// Reads a solution JSON back into a series.
pub fn series_from_json(v: &Value) -> Result<SeriesSolution> {
    SeriesSolution::from_json(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_file_round_trip() {
        let file = ProblemFile::from_json(
            r#"{"equation": "heat", "L": "1", "kappa": "1", "F": "x^2*(1-x)",
                "bc": [{"alpha": "1", "beta": "0", "h": "0"}, {"alpha": "1", "beta": "0"}], "order": "inf"}"#,
        )
        .unwrap();
        let sol = solve(&file.to_problem().unwrap()).unwrap();
        let v = solution_json(&file, &sol);
        let back = series_from_json(&v).unwrap();
        let Solution::Series(s) = sol else { panic!() };
        assert!(back.summand.equivalent(&s.summand));
        assert_eq!(v["provenance"]["equation"], "heat");
    }

    #[test]
    fn schema_violations() {
        assert!(ProblemFile::from_json(r#"{"equation": "heat", "bogus": 1}"#).is_err());
        let f = ProblemFile::from_json(r#"{"equation": "plasma", "L": "1"}"#).unwrap();
        assert!(f.to_problem().is_err());
        let f = ProblemFile::from_json(r#"{"equation": "heat"}"#).unwrap();
        assert!(f.to_problem().is_err());
    }

    #[test]
    fn membrane_file_with_reference_rule() {
        let file = ProblemFile::from_json(
            r#"{"equation": "wave-disk", "c": "1", "geometry": {"R": "1"}, "F": "1 - r^4", "k": 2, "l": 2,
                "radial_rule": "simpson:14"}"#,
        )
        .unwrap();
        let sol = solve(&file.to_problem().unwrap()).unwrap();
        let v = solution_json(&file, &sol);
        assert!((v["modes"][0]["a"].as_f64().unwrap() - 1.366663216985716).abs() < 1e-9);
        assert_eq!(sol.instantiate(25).terms().len(), 2);
        assert!(parse_rule("trapezoid:3").is_err());
    }
}
