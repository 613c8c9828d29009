//! Polynomial expression parser.
//!
//! Grammar:
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" nat)?
//! base   := nat ("/" nat)? | "x" | "y" | "t" | "(" expr ")" | "-" base
//! ```
//! Implicit multiplication is not supported; whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use oneplace::ringcore::Rational;
use oneplace::{BiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error<T>(&mut self, message: impl Into<String>) -> Result<T, ParseError> {
        self.skip_ws();
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.natural()?;
            let e: usize = e.to_string().parse().map_err(|_| ParseError {
                offset: self.pos,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.bump();
                    Ok(inner)
                } else {
                    self.error("expected ')'")
                }
            }
            Some(c @ (b'x' | b'y' | b't')) => {
                self.bump();
                Ok(Expr::Var(c as char))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                if self.peek() == Some(b'/') {
                    self.bump();
                    let den = self.natural()?;
                    if den.sign() == num_bigint::Sign::NoSign {
                        return self.error("division by zero in rational literal");
                    }
                    Ok(Expr::Num(Rational::new(num, den)))
                } else {
                    Ok(Expr::Num(Rational::from_integer(num)))
                }
            }
            Some(c) => self.error(format!("unexpected character '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn natural(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(text).unwrap())
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            self.error("trailing input")
        } else {
            Ok(())
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse a polynomial in `x` and `y`.
pub fn parse_poly(src: &str) -> Result<BiPoly, ParseError> {
    let e = parse_expr(src)?;
    eval_bipoly(&e).map_err(|message| ParseError { offset: 0, message })
}

/// Parse a polynomial in the parameter `t`.
pub fn parse_tpoly(src: &str) -> Result<UniPoly, ParseError> {
    let e = parse_expr(src)?;
    eval_tpoly(&e).map_err(|message| ParseError { offset: 0, message })
}

fn eval_bipoly(e: &Expr) -> Result<BiPoly, String> {
    match e {
        Expr::Num(c) => Ok(BiPoly::constant(c.clone())),
        Expr::Var('x') => Ok(BiPoly::x()),
        Expr::Var('y') => Ok(BiPoly::y()),
        Expr::Var(v) => Err(format!("variable '{v}' is not allowed here; use x and y")),
        Expr::Add(a, b) => Ok(&eval_bipoly(a)? + &eval_bipoly(b)?),
        Expr::Sub(a, b) => Ok(&eval_bipoly(a)? - &eval_bipoly(b)?),
        Expr::Mul(a, b) => Ok(&eval_bipoly(a)? * &eval_bipoly(b)?),
        Expr::Neg(a) => Ok(-&eval_bipoly(a)?),
        Expr::Pow(a, e) => Ok(eval_bipoly(a)?.pow(*e)),
    }
}

fn eval_tpoly(e: &Expr) -> Result<UniPoly, String> {
    match e {
        Expr::Num(c) => Ok(UniPoly::constant(c.clone())),
        Expr::Var('t') => Ok(UniPoly::var()),
        Expr::Var(v) => Err(format!("variable '{v}' is not allowed here; use t")),
        Expr::Add(a, b) => Ok(&eval_tpoly(a)? + &eval_tpoly(b)?),
        Expr::Sub(a, b) => Ok(&eval_tpoly(a)? - &eval_tpoly(b)?),
        Expr::Mul(a, b) => Ok(&eval_tpoly(a)? * &eval_tpoly(b)?),
        Expr::Neg(a) => Ok(-&eval_tpoly(a)?),
        Expr::Pow(a, e) => Ok(eval_tpoly(a)?.pow(*e)),
    }
}

/// Parse a comma-separated list of positive integers, e.g. `"6,4,3"`.
pub fn parse_sequence(src: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for piece in src.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err("empty entry in sequence".into());
        }
        let v: u64 = piece
            .parse()
            .map_err(|_| format!("'{piece}' is not a positive integer"))?;
        if v == 0 {
            return Err("sequence entries must be positive".into());
        }
        out.push(v);
    }
    Ok(out)
}
