//! Plain-text polynomial format: a `vars: a, b, c` header followed by one
//! polynomial per line. Blank lines and lines starting with `#` are ignored.

use std::fmt::{self, Write as _};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{MultiPoly, VarContext};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub ctx: VarContext,
    pub polys: Vec<MultiPoly>,
}

impl PolyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ctx = None;
        let mut polys = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match &ctx {
                None => {
                    let rest = line.strip_prefix("vars:").ok_or_else(|| Error::Parse {
                        line: lineno + 1,
                        msg: "expected `vars:` header".into(),
                    })?;
                    let names: Vec<&str> =
                        rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    ctx = Some(VarContext::new(&names).map_err(|e| Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    })?);
                }
                Some(c) => polys.push(parse_poly_at(c, line, lineno + 1)?),
            }
        }
        let ctx = ctx.ok_or(Error::Parse { line: 0, msg: "missing `vars:` header".into() })?;
        Ok(PolyFile { ctx, polys })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

impl fmt::Display for PolyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.ctx.names().join(", "))?;
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn parse_poly(ctx: &VarContext, s: &str) -> Result<MultiPoly> {
    parse_poly_at(ctx, s, 1)
}

fn parse_poly_at(ctx: &VarContext, s: &str, line: usize) -> Result<MultiPoly> {
    let tokens = tokenize(s).map_err(|msg| Error::Parse { line, msg })?;
    let mut p = Parser { ctx, tokens, pos: 0 };
    let out = p.expr().map_err(|msg| Error::Parse { line, msg })?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse { line, msg: format!("unexpected token {:?}", p.tokens[p.pos]) });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().map_err(|_| format!("bad number {digits}"))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a VarContext,
    tokens: Vec<Tok>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, String>;

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err("division only by nonzero constants".into());
                }
                acc = acc.scale(&rhs.constant_term().recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<MultiPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<MultiPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) => {
                    let e = e.to_u32().ok_or("exponent too large")?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err("exponent must be a nonnegative integer".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<MultiPoly> {
        let tok = self.tokens.get(self.pos).cloned().ok_or("unexpected end of input")?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(MultiPoly::constant(self.ctx, BigRational::from_integer(n))),
            Tok::Ident(name) => MultiPoly::var(self.ctx, &name).map_err(|e| e.to_string()),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(format!("unexpected {c:?}")),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(if a.denom().is_one() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                });
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx().name(i).to_string()),
                    _ => factors.push(format!("{}^{e}", self.ctx().name(i))),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        f.write_str(&out)
    }
}
