//! Expression syntax for polynomials over `Q(q)`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ["-"] integer)?
//! atom   := integer | name | "(" expr ")"
//! ```
//!
//! Products must be written with `*`; juxtaposition is rejected. Division
//! and negative exponents are only allowed on scalars. The name `q` is the
//! field parameter unless it is declared as a generator.

use super::{NCPoly, Word};
use crate::coeff::{Field, RatFunc, Rational};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = s[st..i].parse().expect("digits");
            out.push((st, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Name(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError {
                offset: i,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

type P = NCPoly<RatFunc>;

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<P, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.offset();
                    let f = self.unary()?;
                    let Some(c) = f.as_constant() else {
                        return Err(ExprError {
                            offset: at,
                            message: "division by a non-scalar".into(),
                        });
                    };
                    let Some(inv) = c.inv() else {
                        return Err(ExprError {
                            offset: at,
                            message: "division by zero".into(),
                        });
                    };
                    acc = acc.scale(&inv);
                }
                _ => {
                    if self.pos < self.toks.len() && self.peek_op().is_none_or(|c| c == '(') {
                        return self.err("juxtaposition is not allowed; write products with '*'");
                    }
                    return Ok(acc);
                }
            }
        }
    }

    fn unary(&mut self) -> Result<P, ExprError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<P, ExprError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = match self.toks.get(self.pos) {
            Some((_, Tok::Int(v))) => match u32::try_from(v.clone()) {
                Ok(e) if e <= 64 => e,
                _ => return self.err("exponent too large"),
            },
            _ => return self.err("expected an integer exponent"),
        };
        self.pos += 1;
        if !neg {
            return Ok(base.pow(e));
        }
        match base.as_constant().and_then(|c| c.inv()) {
            Some(inv) => Ok(P::constant(inv).pow(e)),
            None => self.err("negative exponent on a non-scalar or zero"),
        }
    }

    fn atom(&mut self) -> Result<P, ExprError> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(P::constant(RatFunc::from_rational(&Rational::integer(v)))),
            Tok::Name(name) => {
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    Ok(P::word(Word::letter(i)))
                } else if name == "q" {
                    Ok(P::constant(RatFunc::q()))
                } else {
                    self.pos -= 1;
                    self.err(format!("unknown name '{name}'"))
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => {
                self.pos -= 1;
                self.err(format!("unexpected '{c}'"))
            }
        }
    }
}

/// Parses an expression over the given generator names.
pub fn parse_expr(text: &str, names: &[String]) -> Result<NCPoly<RatFunc>, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses and requires the result to be homogeneous.
pub fn parse_homogeneous(text: &str, names: &[String]) -> Result<NCPoly<RatFunc>, ExprError> {
    let e = parse_expr(text, names)?;
    if !e.is_homogeneous() {
        return Err(ExprError {
            offset: 0,
            message: "expression is not homogeneous".into(),
        });
    }
    Ok(e)
}

/// Parses a scalar literal (integers, fractions, and expressions in `q`).
pub fn parse_scalar(text: &str) -> Result<RatFunc, ExprError> {
    parse_expr(text, &[])?.as_constant().ok_or(ExprError {
        offset: 0,
        message: "not a scalar".into(),
    })
}
