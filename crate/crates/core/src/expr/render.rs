//! Rendering back into the input grammar; `parse_expr(render(e))` reproduces `e`.

use std::cmp::Ordering;

use num_traits::One;

use super::{Atom, Expr, Monomial, Poly};
use crate::scalar::Scalar;

pub(super) fn render(e: &Expr) -> String {
    let num = render_poly(&e.num);
    if e.den.is_empty() {
        return num;
    }
    let num = if e.num.len() > 1 {
        format!("({})", num)
    } else {
        num
    };
    let mut factors = Vec::new();
    for (p, k) in &e.den {
        let s = render_poly(p);
        let s = if p.len() > 1 { format!("({})", s) } else { s };
        factors.push(if *k > 1 { format!("{}^{}", s, k) } else { s });
    }
    if factors.len() == 1 && e.den[0].1 == 1 {
        format!("{}/{}", num, factors[0])
    } else {
        format!("{}/({})", num, factors.join("*"))
    }
}

pub(super) fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Monomial, &Scalar)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.grlex_cmp(a.0).then_with(|| b.0.cmp(a.0)));
    let mut out = String::new();
    for (m, c) in terms {
        let t = render_term(c, m);
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(&t);
        }
    }
    out
}

fn render_term(c: &Scalar, m: &Monomial) -> String {
    let negative = c.leading_sign() == Ordering::Less;
    let c = if negative { -c } else { c.clone() };
    let mut up: Vec<String> = Vec::new();
    let mut down: Vec<String> = Vec::new();
    match c.as_rational() {
        Some(r) => {
            let dec = Scalar::from_rational(r.clone()).to_string();
            if dec.contains('.') {
                up.push(dec);
            } else {
                if !r.numer().is_one() {
                    up.push(r.numer().to_string());
                }
                if !r.denom().is_one() {
                    down.push(r.denom().to_string());
                }
            }
        }
        None => {
            let s = c.to_string();
            let body = s.strip_prefix('-').unwrap_or(&s);
            let coef_str = if body.contains('+')
                || body.contains('-')
                || (s.contains('/') && !m.is_one() && !c.is_atomic_term())
            {
                format!("({})", s)
            } else {
                s
            };
            up.push(coef_str);
        }
    }
    for (a, &k) in m.iter() {
        let s = render_atom(a);
        let s = if k.abs() > 1 {
            format!("{}^{}", s, k.abs())
        } else {
            s
        };
        if k > 0 {
            up.push(s);
        } else {
            down.push(s);
        }
    }
    if up.is_empty() {
        up.push("1".into());
    }
    let mut s = up.join("*");
    match down.len() {
        0 => {}
        1 => {
            s.push('/');
            s.push_str(&down[0]);
        }
        _ => {
            s.push_str("/(");
            s.push_str(&down.join("*"));
            s.push(')');
        }
    }
    if negative {
        format!("-{}", s)
    } else {
        s
    }
}

fn is_simple(e: &Expr) -> bool {
    if e.as_symbol().is_some() {
        return true;
    }
    match e.as_scalar().and_then(|s| s.as_rational()) {
        Some(r) => r.is_integer() && r >= num_rational::BigRational::from_integer(0.into()),
        None => false,
    }
}

fn render_atom(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => s.clone(),
        Atom::Alt => "(-1)^n".into(),
        Atom::Sin(u) => format!("sin({})", render(u)),
        Atom::Cos(u) => format!("cos({})", render(u)),
        Atom::Exp(u) => format!("exp({})", render(u)),
        Atom::Log(u) => format!("log({})", render(u)),
        Atom::Pow(b, e) => {
            let bs = if is_simple(b) {
                render(b)
            } else {
                format!("({})", render(b))
            };
            let es = if is_simple(e) {
                render(e)
            } else {
                format!("({})", render(e))
            };
            format!("{}^{}", bs, es)
        }
        Atom::Func { name, deriv, args } => {
            let args: Vec<String> = args.iter().map(render).collect();
            format!(
                "{}{}({})",
                name,
                "'".repeat(*deriv as usize),
                args.join(",")
            )
        }
        Atom::Integral(i) => format!(
            "integrate({},{},{},{})",
            render(&i.integrand),
            i.var,
            render(&i.lo),
            render(&i.hi)
        ),
    }
}
