use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{calculus, Atom, Expr, INDEX};

/// Raw syntax tree as produced by the parser, before canonicalization.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(Scalar),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call {
        name: String,
        primes: u32,
        args: Vec<Node>,
    },
}

/// Functions with a fixed meaning; every other call is an opaque symbol.
pub(super) const BUILTINS: &[&str] = &[
    "sin",
    "cos",
    "exp",
    "log",
    "sinh",
    "cosh",
    "sqrt",
    "integrate",
];

/// Converts a raw tree into canonical form: expanded, with no trig products
/// or trig powers, and with `π`-shifts and signs folded out of arguments.
pub fn trig_canonicalize(node: &Node) -> Result<Expr> {
    Ok(match node {
        Node::Num(s) => Expr::scalar(s.clone()),
        Node::Var(v) => Expr::sym(v),
        Node::Neg(a) => -trig_canonicalize(a)?,
        Node::Add(a, b) => trig_canonicalize(a)? + trig_canonicalize(b)?,
        Node::Sub(a, b) => trig_canonicalize(a)? - trig_canonicalize(b)?,
        Node::Mul(a, b) => trig_canonicalize(a)? * trig_canonicalize(b)?,
        Node::Div(a, b) => {
            let d = trig_canonicalize(b)?;
            if d.is_zero() {
                return Err(Error::invalid("division by zero"));
            }
            trig_canonicalize(a)? / d
        }
        Node::Pow(a, b) => {
            let base = trig_canonicalize(a)?;
            let e = trig_canonicalize(b)?;
            if base.is_zero()
                && e.as_scalar()
                    .map_or(false, |s| s.cmp_value(&Scalar::zero()).is_le())
            {
                return Err(Error::invalid("zero raised to a nonpositive power"));
            }
            Expr::pow(&base, &e)
        }
        Node::Call { name, primes, args } => call(name, *primes, args)?,
    })
}

fn call(name: &str, primes: u32, args: &[Node]) -> Result<Expr> {
    let builtin = BUILTINS.contains(&name);
    if builtin && primes > 0 {
        return Err(Error::invalid(format!(
            "derivative marks on builtin `{}`",
            name
        )));
    }
    let unary = |args: &[Node]| -> Result<Expr> {
        if args.len() != 1 {
            return Err(Error::invalid(format!("`{}` takes one argument", name)));
        }
        trig_canonicalize(&args[0])
    };
    match name {
        "sin" | "cos" | "exp" | "sinh" | "cosh" => {
            let u = unary(args)?;
            check_argument(name, &u)?;
            Ok(match name {
                "sin" => Expr::sin(&u),
                "cos" => Expr::cos(&u),
                "exp" => Expr::exp(&u),
                "sinh" => Expr::sinh(&u),
                _ => Expr::cosh(&u),
            })
        }
        "log" => Ok(Expr::log(&unary(args)?)),
        "sqrt" => Ok(Expr::pow(&unary(args)?, &Expr::ratio(1, 2))),
        "integrate" => {
            if args.len() != 4 {
                return Err(Error::invalid(
                    "integrate(body, var, lo, hi) takes four arguments",
                ));
            }
            let var = match &args[1] {
                Node::Var(v) => v.clone(),
                _ => return Err(Error::invalid("integration variable must be an identifier")),
            };
            let body = trig_canonicalize(&args[0])?;
            let lo = trig_canonicalize(&args[2])?;
            let hi = trig_canonicalize(&args[3])?;
            calculus::integrate_definite(&body, &var, &lo, &hi)
        }
        _ => {
            if name == INDEX || name == "pi" {
                return Err(Error::invalid(format!(
                    "reserved name `{}` used as a function",
                    name
                )));
            }
            let args = args
                .iter()
                .map(trig_canonicalize)
                .collect::<Result<Vec<_>>>()?;
            Ok(Expr::from_atom(Atom::Func {
                name: name.to_string(),
                deriv: primes,
                args,
            }))
        }
    }
}

/// Arguments of `sin`, `cos` and `exp` must be polynomial in their symbols.
fn check_argument(name: &str, u: &Expr) -> Result<()> {
    if u.has_denominator() {
        return Err(Error::fragment(format!(
            "{}({}) has a rational argument",
            name, u
        )));
    }
    for a in u.atoms() {
        if !matches!(a, Atom::Sym(_)) {
            return Err(Error::fragment(format!(
                "{}({}) has a transcendental argument",
                name, u
            )));
        }
    }
    Ok(())
}
