//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := base ("^" uint)?
//! base     := rational | ident | "(" expr ")" | "-" base
//! rational := uint ("/" uint)?
//! ident    := letter (letter|digit|"_")*
//! ```
//!
//! Whitespace is insignificant. Note that `-x^2` parses as `(-x)^2`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Chart, ExprError, Poly, Rational, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Uint(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Uint(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Uint(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ExprError::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ExprError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Uint(n) => {
                let Ok(e) = u32::try_from(&n) else {
                    return self.error("exponent too large");
                };
                self.bump();
                Ok(base.pow(e))
            }
            other => self.error(format!(
                "expected an unsigned exponent after `^`, found {}",
                describe(&other)
            )),
        }
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Uint(_) => {
                let r = self.rational()?;
                Ok(Poly::constant(self.chart, r))
            }
            Tok::Ident(name) => match self.chart.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Poly::var(self.chart, i))
                }
                None => Err(ExprError::UnknownVariable(name)),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error(format!("expected `)`, found {}", describe(self.peek())));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                Ok(-self.base()?)
            }
            other => self.error(format!("expected an operand, found {}", describe(&other))),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let Tok::Uint(num) = self.bump() else {
            unreachable!("rational() called on a non-number");
        };
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Uint(den) if den.is_zero() => self.error("zero denominator"),
            Tok::Uint(den) => {
                self.bump();
                Ok(Rational::new(num, den))
            }
            other => self.error(format!(
                "expected a denominator after `/`, found {}",
                describe(&other)
            )),
        }
    }
}

/// Parses `text` as a polynomial on `chart`.
pub fn parse_poly(text: &str, chart: &Chart) -> Result<Poly> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        chart,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(out)
}

/// Parses a signed rational literal such as `-3/4` or `7`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t),
    };
    // the chart is never consulted: only the `rational` production runs
    let chart = Chart::new(["r"]).expect("static chart");
    let mut p = Parser {
        toks: lex(body)?,
        pos: 0,
        chart: &chart,
    };
    if !matches!(p.peek(), Tok::Uint(_)) {
        return p.error("expected a rational literal");
    }
    let r = p.rational()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(if neg { -r } else { r })
}
