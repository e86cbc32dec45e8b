//! Parser for polynomial text: integers, variables, `+ - * / ^` and parentheses.
//! Division is only allowed by a nonzero constant; products need an explicit `*`.

use super::{var_list, MultiPoly};
use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, Rational};
use num::BigInt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    vars: &'a Arc<Vec<String>>,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(Error::Parse {
                    line,
                    column: i + 1,
                    message: "decimal numbers are not supported".into(),
                });
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else if c == '\u{2212}' {
            out.push((Tok::Op('-'), col));
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.col(),
            message: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.inv()?),
                        Some(_) => {
                            return Err(Error::Parse {
                                line: self.line,
                                column: col,
                                message: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Parse {
                                line: self.line,
                                column: col,
                                message: "division is only allowed by a constant".into(),
                            })
                        }
                    }
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Tok::Op('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().clone() {
            Tok::Num(n) => {
                let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.err("exponent must be a nonnegative integer"),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(MultiPoly::constant(
                    self.vars,
                    AlgebraicNumber::from(Rational::from_integer(n)),
                ))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MultiPoly::var(self.vars, i))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected '{c}'")),
        }
    }
}

/// Parses a polynomial in the given variables, reporting errors on line 1.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    parse_poly_at(text, &var_list(vars), 1)
}

pub fn parse_poly_at(text: &str, vars: &Arc<Vec<String>>, line: usize) -> Result<MultiPoly> {
    let toks = tokenize(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        vars,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Op(')') => p.err("unmatched ')'"),
        _ => p.err("unexpected token"),
    }
}
