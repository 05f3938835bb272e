//! Parsers for the repository's structured-text inputs: polynomial
//! expressions, the curve-family fixture documents, cover fixtures for the
//! shadow engine, and the exclusion-list file format.
//!
//! Expression grammar (exact arithmetic only):
//!   expr   := term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*
//!   factor := atom ('^' int)? | '-' factor
//!   atom   := '(' expr ')' | integer | ident
//! Identifiers are declared variables, or the builtin roots of unity
//! z24, z12, z4, z3.

use crate::exactalg::cyc::CycNum;
use crate::exactalg::mpoly::{MPoly, MRatio, Vars};
use crate::exactalg::ExactError;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = vec![];
    let mut it = s.chars().peekable();
    while let Some(&ch) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let v: i64 = n
                    .parse()
                    .map_err(|_| ExactError::Parse(format!("integer overflow in {n:?}")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(n));
            }
            other => {
                return Err(ExactError::Parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MRatio, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MRatio, ExactError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MRatio, ExactError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(f.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = if neg { -n } else { *n };
                    return base.pow(e);
                }
                _ => return Err(ExactError::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MRatio, ExactError> {
        match self.bump().cloned() {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(ExactError::Parse("expected ')'".into())),
                }
            }
            Some(Tok::Int(n)) => Ok(MRatio::poly(MPoly::constant(
                self.vars,
                CycNum::from_int(n),
            ))),
            Some(Tok::Ident(name)) => {
                let c = match name.as_str() {
                    "z24" => Some(CycNum::zeta24_pow(1)),
                    "z12" => Some(CycNum::zeta12()),
                    "z4" => Some(CycNum::zeta4()),
                    "z3" => Some(CycNum::zeta3()),
                    _ => None,
                };
                if let Some(c) = c {
                    return Ok(MRatio::poly(MPoly::constant(self.vars, c)));
                }
                Ok(MRatio::poly(MPoly::var(self.vars, &name)?))
            }
            other => Err(ExactError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse an expression to a ratio of polynomials over the given variables.
pub fn parse_ratio(src: &str, vars: &Vars) -> Result<MRatio, ExactError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Parse an expression that must be a polynomial (constant denominators only).
pub fn parse_poly(src: &str, vars: &Vars) -> Result<MPoly, ExactError> {
    parse_ratio(src, vars)?.into_poly()
}

/// Parse a cyclotomic constant (no variables).
pub fn parse_cyc(src: &str) -> Result<CycNum, ExactError> {
    let vars: Vars = std::sync::Arc::new(vec![]);
    let p = parse_poly(src, &vars)?;
    p.is_constant()
        .ok_or_else(|| ExactError::Parse(format!("expected a constant: {src:?}")))
}

/// A section of a fixture document: its header words and key -> raw value
/// entries, preserving multi-valued keys in order.
#[derive(Debug, Clone)]
pub struct Section {
    pub header: Vec<String>,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
    pub fn require(&self, key: &str) -> Result<&str, ExactError> {
        self.get(key).ok_or_else(|| {
            ExactError::Parse(format!("section [{}] missing key {key}", self.header.join(" ")))
        })
    }
    pub fn all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }
}

/// Parse a fixture document: `[header words]` sections with `key = value`
/// lines; `#` starts a comment.
pub fn parse_document(src: &str) -> Result<Vec<Section>, ExactError> {
    let mut sections: Vec<Section> = vec![];
    for (lineno, raw) in src.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(stripped) = line.strip_prefix('[') {
            let inner = stripped
                .strip_suffix(']')
                .ok_or_else(|| ExactError::Parse(format!("line {}: unterminated section", lineno + 1)))?;
            sections.push(Section {
                header: inner.split_whitespace().map(|s| s.to_string()).collect(),
                entries: vec![],
            });
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            ExactError::Parse(format!("line {}: expected key = value", lineno + 1))
        })?;
        let sec = sections.last_mut().ok_or_else(|| {
            ExactError::Parse(format!("line {}: entry before any section", lineno + 1))
        })?;
        sec.entries.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(sections)
}

/// Split a comma-separated value respecting parentheses and brackets.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parse `[e1 : e2 : e3]` into three polynomials.
pub fn parse_proj_point(src: &str, vars: &Vars) -> Result<[MPoly; 3], ExactError> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| ExactError::Parse(format!("expected [a:b:c], got {src:?}")))?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(ExactError::Parse(format!("expected three coordinates in {src:?}")));
    }
    Ok([
        parse_poly(parts[0], vars)?,
        parse_poly(parts[1], vars)?,
        parse_poly(parts[2], vars)?,
    ])
}

/// Parse `(e1, e2)` into two ratios.
pub fn parse_affine_point(src: &str, vars: &Vars) -> Result<[MRatio; 2], ExactError> {
    let s = src.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| ExactError::Parse(format!("expected (a, b), got {src:?}")))?;
    let parts = split_top_level(inner);
    if parts.len() != 2 {
        return Err(ExactError::Parse(format!("expected two coordinates in {src:?}")));
    }
    Ok([parse_ratio(&parts[0], vars)?, parse_ratio(&parts[1], vars)?])
}

/// The exclusion-list line grammar: `term (('+'|'-') term)*` with
/// term = `[int]['*'][a['^'int]]['*'][b['^'int]]`. This is a subset of the
/// expression grammar, so the main parser handles it; entries must be
/// integer bivariate polynomials in a and b.
pub fn parse_list_file(src: &str) -> Result<Vec<(usize, MPoly)>, Vec<(usize, String)>> {
    let vars = crate::exactalg::mpoly::vars(&["a", "b"]);
    let mut polys = vec![];
    let mut errors = vec![];
    for (lineno, raw) in src.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match parse_poly(line, &vars) {
            Ok(p) => polys.push((lineno + 1, p)),
            Err(e) => errors.push((lineno + 1, e.to_string())),
        }
    }
    if errors.is_empty() {
        Ok(polys)
    } else {
        Err(errors)
    }
}

/// Map of named points parsed from `point <name> = ...` entries.
pub type PointTable = BTreeMap<String, String>;
