//! Floating-point evaluation of expressions.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::{Atom, Expr, Poly};
use crate::error::{Error, Result};
use crate::quadrature;

/// Numeric implementation of an opaque function symbol.
pub type OpaqueFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Opaque implementations keyed by name, with one `'` per derivative (`"f'"`).
pub type OpaqueImpls = HashMap<String, OpaqueFn>;
pub type Bindings = HashMap<String, f64>;

const QUAD_RTOL: f64 = 1e-12;

/// Function names evaluated natively rather than treated as opaque.
pub(crate) fn is_builtin(name: &str) -> bool {
    name == "bessel_j"
}

/// Real part of the value; π expands to its double value.
pub fn eval_numeric(e: &Expr, bindings: &Bindings, opaque: &OpaqueImpls) -> Result<f64> {
    Ok(eval_complex(e, bindings, opaque)?.re)
}

pub fn eval_complex(e: &Expr, bindings: &Bindings, opaque: &OpaqueImpls) -> Result<Complex64> {
    let mut ctx = Ctx {
        bindings: bindings.clone(),
        opaque,
    };
    ctx.expr(e)
}

struct Ctx<'a> {
    bindings: Bindings,
    opaque: &'a OpaqueImpls,
}

impl Ctx<'_> {
    fn expr(&mut self, e: &Expr) -> Result<Complex64> {
        let mut v = self.poly(&e.num)?;
        for (p, k) in &e.den {
            v /= self.poly(p)?.powi(*k as i32);
        }
        Ok(v)
    }

    fn poly(&mut self, p: &Poly) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in p.terms() {
            let mut t = c.to_c64();
            for (a, &k) in m.iter() {
                t *= self.atom(a)?.powi(k);
            }
            acc += t;
        }
        Ok(acc)
    }

    fn real_arg(&mut self, e: &Expr) -> Result<f64> {
        Ok(self.expr(e)?.re)
    }

    fn atom(&mut self, a: &Atom) -> Result<Complex64> {
        Ok(match a {
            Atom::Sym(s) => Complex64::new(
                *self
                    .bindings
                    .get(s)
                    .ok_or_else(|| Error::Unbound(s.clone()))?,
                0.0,
            ),
            Atom::Alt => {
                let n = *self
                    .bindings
                    .get(super::INDEX)
                    .ok_or_else(|| Error::Unbound(super::INDEX.into()))?;
                if n.fract() == 0.0 {
                    Complex64::new(if (n as i64) % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
                } else {
                    Complex64::new(0.0, std::f64::consts::PI * n).exp()
                }
            }
            Atom::Sin(u) => self.expr(u)?.sin(),
            Atom::Cos(u) => self.expr(u)?.cos(),
            Atom::Exp(u) => self.expr(u)?.exp(),
            Atom::Log(u) => self.expr(u)?.ln(),
            Atom::Pow(b, e) => {
                let (b, e) = (self.expr(b)?, self.expr(e)?);
                if b.im == 0.0 && e.im == 0.0 && b.re >= 0.0 {
                    Complex64::new(b.re.powf(e.re), 0.0)
                } else {
                    b.powc(e)
                }
            }
            Atom::Func { name, deriv, args } => {
                let xs = args
                    .iter()
                    .map(|x| self.real_arg(x))
                    .collect::<Result<Vec<_>>>()?;
                if is_builtin(name) && *deriv == 0 && xs.len() == 2 {
                    return Ok(Complex64::new(crate::bessel::bessel_j(xs[0], xs[1])?, 0.0));
                }
                let key = format!("{}{}", name, "'".repeat(*deriv as usize));
                let f = self
                    .opaque
                    .get(&key)
                    .ok_or_else(|| Error::Unbound(format!("{}()", key)))?;
                Complex64::new(f(&xs), 0.0)
            }
            Atom::Integral(i) => {
                let lo = self.real_arg(&i.lo)?;
                let hi = self.real_arg(&i.hi)?;
                let saved = self.bindings.get(&i.var).copied();
                let mut failure = None;
                let body = &i.integrand;
                let var = i.var.clone();
                let v = quadrature::adaptive(
                    |x| {
                        self.bindings.insert(var.clone(), x);
                        match self.expr(body) {
                            Ok(v) => v,
                            Err(e) => {
                                failure.get_or_insert(e);
                                Complex64::new(0.0, 0.0)
                            }
                        }
                    },
                    lo,
                    hi,
                    QUAD_RTOL,
                );
                match saved {
                    Some(s) => self.bindings.insert(i.var.clone(), s),
                    None => self.bindings.remove(&i.var),
                };
                if let Some(e) = failure {
                    return Err(e);
                }
                v?
            }
        })
    }
}
