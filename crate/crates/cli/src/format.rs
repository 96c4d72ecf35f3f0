//! The plain-text system file format.
//!
//! ```text
//! # optional comments
//! ring r=3 field=p:2147483647
//! gen: y1^7*y3^3
//! gen: y2^5*y3^5 + y1^3*y3^7
//! ```
//!
//! The `ring` line is optional. Without it `r` is the largest variable index
//! used and the field is the caller's default. A term is an optional integer
//! or `n/d` coefficient followed by `*`-joined factors `yK^E`; the exponent
//! `1` may be omitted and terms are separated by `+`, `-` or `−`.

use std::fmt::Write as _;

use apolarity::{FieldSpec, InverseSystem, Monomial, Polynomial, RingContext, Scalar};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: generator is not homogeneous (terms of degree {first} and {second})")]
    Inhomogeneous { line: usize, first: u32, second: u32 },
    #[error("line {line}, column {column}: variable y{index} exceeds r = {r}")]
    VariableOutOfRange { line: usize, column: usize, index: usize, r: usize },
    #[error("line {line}: generator is zero")]
    ZeroGenerator { line: usize },
    #[error("no `gen:` lines")]
    NoGenerators,
    #[error(transparent)]
    System(#[from] apolarity::Error),
}

struct RawTerm {
    num: BigInt,
    den: BigInt,
    /// Coefficient column, for reporting a vanishing denominator.
    column: usize,
    /// (variable index, exponent, column) with 1-based indices.
    factors: Vec<(usize, u32, usize)>,
}

struct RawGenerator {
    line: usize,
    terms: Vec<RawTerm>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    /// Column of `chars[0]` in the source line.
    offset: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, offset: usize, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, offset, line }
    }

    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.line, column: self.column(), message: message.into() }
    }

    fn digits(&mut self, what: &str) -> Result<String, FormatError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, FormatError> {
        let column = self.column();
        let s = self.digits(what)?;
        s.parse().map_err(|_| FormatError::Syntax {
            line: self.line,
            column,
            message: format!("{what} {s} is out of range"),
        })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn factor(&mut self) -> Result<(usize, u32, usize), FormatError> {
        let column = self.column();
        if self.peek() != Some('y') {
            return Err(self.error("expected a variable `yK`"));
        }
        self.pos += 1;
        let index: usize = self.number("variable index")?;
        if index == 0 {
            return Err(FormatError::Syntax {
                line: self.line,
                column,
                message: "variables are numbered from y1".into(),
            });
        }
        self.skip_ws();
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            self.number("exponent")?
        } else {
            1
        };
        Ok((index, exp, column))
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm, FormatError> {
        self.skip_ws();
        let column = self.column();
        let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            num = self.digits("coefficient")?.parse().expect("digit string");
            self.skip_ws();
            if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                den = self.digits("denominator")?.parse().expect("digit string");
                if den == BigInt::from(0) {
                    return Err(FormatError::Syntax { line: self.line, column, message: "zero denominator".into() });
                }
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                factors.push(self.factor()?);
            } else if self.peek() == Some('y') {
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    factors.push(self.factor()?);
                }
                Some('y') => factors.push(self.factor()?),
                _ => break,
            }
        }
        if negative {
            num = -num;
        }
        Ok(RawTerm { num, den, column, factors })
    }

    fn generator(&mut self) -> Result<Vec<RawTerm>, FormatError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty generator"));
        }
        let mut terms = Vec::new();
        let negative = self.sign().unwrap_or(false);
        terms.push(self.term(negative)?);
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(terms);
            }
            match self.sign() {
                Some(negative) => terms.push(self.term(negative)?),
                None => return Err(self.error(format!("unexpected {:?}", self.peek().unwrap()))),
            }
        }
    }
}

struct Header {
    r: usize,
    field: Option<FieldSpec>,
}

fn parse_header(rest: &str, line: usize, offset: usize) -> Result<Header, FormatError> {
    let mut r = None;
    let mut field = None;
    let mut col = offset;
    for token in rest.split(char::is_whitespace) {
        let column = col + 1;
        col += token.chars().count() + 1;
        if token.is_empty() {
            continue;
        }
        let err = |message: String| FormatError::Syntax { line, column, message };
        match token.split_once('=') {
            Some(("r", v)) => {
                let n: usize = v.parse().map_err(|_| err(format!("bad variable count {v:?}")))?;
                if n == 0 {
                    return Err(err("r must be at least 1".into()));
                }
                r = Some(n);
            }
            Some(("field", v)) => field = Some(v.parse::<FieldSpec>().map_err(|e| err(e.to_string()))?),
            _ => return Err(err(format!("unknown header entry {token:?}"))),
        }
    }
    let r = r.ok_or(FormatError::Syntax { line, column: 1, message: "header needs r=N".into() })?;
    Ok(Header { r, field })
}

/// Parses a system file. `field` overrides the header's field; otherwise the
/// header field is used, falling back to the default prime field.
pub fn parse_system(text: &str, field: Option<FieldSpec>) -> Result<InverseSystem, FormatError> {
    let mut header: Option<Header> = None;
    let mut gens: Vec<RawGenerator> = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("ring ").or_else(|| (trimmed == "ring").then_some("")) {
            if header.is_some() {
                return Err(FormatError::Syntax { line, column: indent + 1, message: "duplicate ring header".into() });
            }
            if !gens.is_empty() {
                return Err(FormatError::Syntax {
                    line,
                    column: indent + 1,
                    message: "ring header after generators".into(),
                });
            }
            header = Some(parse_header(rest, line, indent + 5)?);
        } else if let Some(rest) = trimmed.strip_prefix("gen:") {
            let mut cursor = Cursor::new(rest, indent + 4, line);
            gens.push(RawGenerator { line, terms: cursor.generator()? });
        } else {
            return Err(FormatError::Syntax {
                line,
                column: indent + 1,
                message: "expected `ring ...` or `gen: ...`".into(),
            });
        }
    }
    if gens.is_empty() {
        return Err(FormatError::NoGenerators);
    }

    let used = gens.iter().flat_map(|g| &g.terms).flat_map(|t| &t.factors).map(|f| f.0).max().unwrap_or(1);
    let (r, header_field) = match &header {
        Some(h) => (h.r, h.field),
        None => (used, None),
    };
    let field = field.or(header_field).unwrap_or_default();
    let ctx = RingContext::new(r, field)?;

    let mut polys = Vec::with_capacity(gens.len());
    for g in &gens {
        let mut terms = Vec::with_capacity(g.terms.len());
        let mut degree: Option<u32> = None;
        for t in &g.terms {
            let mut exps = vec![0u32; r];
            for &(index, exp, column) in &t.factors {
                if index > r {
                    return Err(FormatError::VariableOutOfRange { line: g.line, column, index, r });
                }
                exps[index - 1] += exp;
            }
            let mono = Monomial::new(exps);
            match degree {
                Some(d) if d != mono.degree() => {
                    return Err(FormatError::Inhomogeneous { line: g.line, first: d, second: mono.degree() });
                }
                _ => degree = Some(mono.degree()),
            }
            let coeff = field.from_ratio(&t.num, &t.den).map_err(|e| FormatError::Syntax {
                line: g.line,
                column: t.column,
                message: e.to_string(),
            })?;
            terms.push((mono, coeff));
        }
        let poly = Polynomial::from_terms(ctx, terms)?;
        if poly.is_zero() {
            return Err(FormatError::ZeroGenerator { line: g.line });
        }
        polys.push(poly);
    }
    Ok(InverseSystem::new(ctx, polys)?)
}

/// Residues are written in the symmetric range `(-p/2, p/2]`.
fn signed_coefficient(field: FieldSpec, c: &Scalar) -> (bool, String) {
    match (field, c) {
        (FieldSpec::Prime(p), Scalar::Residue(v)) if *v > p / 2 => (true, (p - v).to_string()),
        _ => {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(abs) => (true, abs.to_string()),
                None => (false, s),
            }
        }
    }
}

fn emit_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &a) in m.exponents().iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("y{}", i + 1)),
            _ => parts.push(format!("y{}^{a}", i + 1)),
        }
    }
    parts.join("*")
}

/// One generator in file syntax, terms in descending lex order.
pub fn emit_polynomial(p: &Polynomial) -> String {
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let (negative, abs) = signed_coefficient(p.field(), c);
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = emit_monomial(m);
        if mono.is_empty() {
            out.push_str(&abs);
        } else if abs == "1" {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{abs}*{mono}");
        }
    }
    out
}

/// The canonical file for a system: a `ring` header and one `gen:` line per
/// generator.
pub fn emit_system(system: &InverseSystem) -> String {
    let ctx = system.ring();
    let mut out = format!("ring r={} field={}\n", ctx.num_vars(), ctx.field());
    for g in system.generators() {
        out.push_str("gen: ");
        out.push_str(&emit_polynomial(g));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_one_based() {
        let err = parse_system("gen: y1^2 + * y2^2", None).unwrap_err();
        assert_eq!(err, FormatError::Syntax { line: 1, column: 13, message: "expected a variable `yK`".into() });
        let err = parse_system("\n\ngen: y0", None).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, column: 6, .. }));
    }

    #[test]
    fn implicit_products_and_exponents() {
        let a = parse_system("gen: 3 y1 y2^2 - y3^3", None).unwrap();
        let b = parse_system("gen: 3*y1*y2^2 − y3^3", None).unwrap();
        assert_eq!(a, b);
        assert_eq!(emit_system(&a), "ring r=3 field=p:2147483647\ngen: 3*y1*y2^2 - y3^3\n");
    }

    #[test]
    fn like_terms_and_repeated_variables_merge() {
        let a = parse_system("gen: y1*y1 + y1^2", Some(FieldSpec::Rationals)).unwrap();
        assert_eq!(emit_polynomial(&a.generators()[0]), "2*y1^2");
    }

    #[test]
    fn rational_coefficients_reduce_mod_p() {
        let m = parse_system("ring r=1 field=p:7\ngen: 1/2*y1", None).unwrap();
        assert_eq!(emit_polynomial(&m.generators()[0]), "-3*y1");
        let err = parse_system("ring r=1 field=p:7\ngen: 1/14*y1", None).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, column: 6, .. }));
    }
}
