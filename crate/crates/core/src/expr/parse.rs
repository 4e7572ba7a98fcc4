//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | '%i' | '%pi' | ident '\''* ('(' expr (',' expr)* ')')? | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::node::{trig_canonicalize, Node};
use super::{Expr, INDEX};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Imag,
    Op(char),
    Prime,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).map_or(false, |d| d.1.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            let mut lit: String = chars[start..i].iter().map(|c| c.1).collect();
            if i < chars.len() && (chars[i].1 == 'e' || chars[i].1 == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j].1 == '+' || chars[j].1 == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                    lit.extend(chars[i..j].iter().map(|c| c.1));
                    i = j;
                }
            }
            out.push((
                pos,
                Tok::Num(
                    decimal(&lit)
                        .ok_or_else(|| Error::parse(pos, format!("bad number `{}`", lit)))?,
                ),
            ));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|c| c.1).collect()),
            ));
        } else if c == '%' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].1.is_alphanumeric() {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|c| c.1).collect();
            match name.as_str() {
                "i" => out.push((pos, Tok::Imag)),
                "pi" => out.push((pos, Tok::Ident("pi".into()))),
                "e" => out.push((pos, Tok::Ident("%e".into()))),
                _ => return Err(Error::parse(pos, format!("unknown constant `%{}`", name))),
            }
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else if c == '\'' {
            out.push((pos, Tok::Prime));
            i += 1;
        } else {
            return Err(Error::parse(pos, format!("unexpected character `{}`", c)));
        }
    }
    Ok(out)
}

/// Exact value of a decimal literal such as `2.5e-3`.
fn decimal(lit: &str) -> Option<BigRational> {
    let (mant, exp) = match lit.find(|c| c == 'e' || c == 'E') {
        Some(k) => (&lit[..k], lit[k + 1..].parse::<i64>().ok()?),
        None => (lit, 0),
    };
    let mut parts = mant.splitn(2, '.');
    let ip = parts.next()?;
    let fp = parts.next().unwrap_or("");
    if fp.contains('.') || (ip.is_empty() && fp.is_empty()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", ip, fp).parse().ok()?;
    let scale = exp - fp.len() as i64;
    let p = num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize);
    Some(if scale >= 0 {
        BigRational::from_integer(digits * p)
    } else {
        BigRational::new(digits, p)
    })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected `{}`", op)))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if self.eat('^') {
            return Ok(Node::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        let pos = self.pos();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::parse(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Num(r) => Ok(Node::Num(Scalar::from_rational(r))),
            Tok::Imag => Ok(Node::Num(Scalar::i())),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let mut primes = 0;
                while self.peek() == Some(&Tok::Prime) {
                    self.at += 1;
                    primes += 1;
                }
                if self.eat('(') {
                    if name == "pi" || name == INDEX {
                        return Err(Error::parse(
                            pos,
                            format!("reserved name `{}` used as a function", name),
                        ));
                    }
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    return Ok(Node::Call { name, primes, args });
                }
                if primes > 0 {
                    return Err(Error::parse(pos, "derivative mark on a variable"));
                }
                Ok(match name.as_str() {
                    "pi" => Node::Num(Scalar::pi()),
                    "%e" => Node::Call {
                        name: "exp".into(),
                        primes: 0,
                        args: vec![Node::Num(Scalar::one())],
                    },
                    _ => Node::Var(name),
                })
            }
            Tok::Op(c) => Err(Error::parse(pos, format!("unexpected `{}`", c))),
            Tok::Prime => Err(Error::parse(pos, "unexpected `'`")),
        }
    }
}

/// Parses text into a raw syntax tree.
pub fn parse_node(text: &str) -> Result<Node> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Parses and canonicalizes an expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    trig_canonicalize(&parse_node(text)?)
}
