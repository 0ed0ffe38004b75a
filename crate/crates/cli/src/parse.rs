//! Text formats for polynomials, point sets, degree vectors and point lists.

use std::fmt;

use ivp_core::{Axis, DegreeBound, DegreeVector, LatticePoint, MultiPoly, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub const BOX_ENV: &str = "IVP_DEFAULT_BOX";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Letters,
    Indexed,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut style: Option<Style> = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(s[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &s[start..i];
            let (idx, st) = match word {
                "x" => (0, Style::Letters),
                "y" => (1, Style::Letters),
                "z" => (2, Style::Letters),
                _ => match word.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    Some(k) if k >= 1 && !word[1..].starts_with('0') => (k - 1, Style::Indexed),
                    _ => return err(start, format!("unknown variable '{word}' (use x, y, z or x1, x2, ...)")),
                },
            };
            match style {
                Some(prev) if prev != st => {
                    return err(start, "cannot mix x, y, z with x1, x2, ... in one polynomial")
                }
                _ => style = Some(st),
            }
            out.push((start, Tok::Var(idx)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return err(i, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                let den = self.unary()?;
                if !den.is_constant() {
                    return err(at, "division is only allowed by a nonzero constant");
                }
                let c = den.constant_term();
                if c.is_zero() {
                    return err(at, "division by zero");
                }
                acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(inner.scale(&BigRational::from_integer((-1).into())));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.to_u32().filter(|&e| e <= 10_000);
                    match e {
                        Some(e) => Ok(base.pow(e)),
                        None => err(at, "exponent too large"),
                    }
                }
                _ => err(at, "expected a non-negative integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.nvars, BigRational::from_integer(n)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(MultiPoly::var(self.nvars, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return err(self.offset(), "expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => err(at, format!("unexpected '{c}'")),
            None => err(at, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial with rational coefficients. The ring has
/// `max(min_vars, highest variable index + 1)` variables.
pub fn parse_poly(s: &str, min_vars: usize) -> Result<MultiPoly, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return err(0, "empty polynomial");
    }
    let highest = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let mut p = Parser {
        toks,
        pos: 0,
        nvars: highest.max(min_vars).max(1),
        end: s.len(),
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return err(p.offset(), "unexpected trailing input");
    }
    Ok(out)
}

/// Default search half-width: `IVP_DEFAULT_BOX` if set, else 32.
pub fn default_box() -> Result<u64, ParseError> {
    match std::env::var(BOX_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(b),
            _ => err(0, format!("{BOX_ENV} must be a positive integer, got '{v}'")),
        },
        Err(_) => Ok(ivp_core::pointset::DEFAULT_BOX),
    }
}

fn parse_int(s: &str, offset: usize) -> Result<BigInt, ParseError> {
    let t = s.trim();
    let lead = offset + (s.len() - s.trim_start().len());
    t.parse::<BigInt>()
        .or_else(|_| err(lead, format!("expected an integer, got '{t}'")))
}

/// Splits `s` at top-level occurrences of `sep` (outside brackets),
/// returning pieces with their byte offsets.
fn split_top(s: &str, sep: char) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return err(i, format!("unbalanced '{c}'"));
                }
            }
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return err(s.len(), "unclosed bracket");
    }
    out.push((start, &s[start..]));
    Ok(out)
}

fn parse_tuple(s: &str, offset: usize) -> Result<LatticePoint, ParseError> {
    let t = s.trim();
    let lead = offset + (s.len() - s.trim_start().len());
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or(ParseError { pos: lead, msg: format!("expected a point like (1,2), got '{t}'") })?;
    let coords = split_top(inner, ',')?
        .into_iter()
        .map(|(o, c)| parse_int(c, lead + 1 + o))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePoint::new(coords))
}

/// A comma-separated list of points: `(0,0),(1,0)`, optionally wrapped in braces.
pub fn parse_points(s: &str) -> Result<Vec<LatticePoint>, ParseError> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let (body, off) = match t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        Some(b) => (b, lead + 1),
        None => (t, lead),
    };
    if body.trim().is_empty() {
        return err(off, "empty point list");
    }
    split_top(body, ',')?
        .into_iter()
        .map(|(o, p)| parse_tuple(p, off + o))
        .collect()
}

fn parse_axis(s: &str, offset: usize) -> Result<Vec<Axis>, ParseError> {
    let t = s.trim();
    let lead = offset + (s.len() - s.trim_start().len());
    if t == "Z" {
        return Ok(vec![Axis::Integers]);
    }
    if let Some(k) = t.strip_prefix("Z^") {
        let n: usize = k
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or(ParseError { pos: lead + 2, msg: format!("bad exponent '{k}'") })?;
        return Ok(vec![Axis::Integers; n]);
    }
    if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let vals = split_top(inner, ',')?
            .into_iter()
            .map(|(o, v)| parse_int(v, lead + 1 + o))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(vec![Axis::Values(vals)]);
    }
    err(lead, format!("expected Z, Z^n or {{a,b,...}}, got '{t}'"))
}

/// Parses a point set: `Z^2`, `Zx{0,1,2}`, `{(0,0),(1,0)}`, each optionally
/// followed by `box=N`. Without `box=`, `default_box` applies.
pub fn parse_set(s: &str, default_box: u64) -> Result<PointSet, ParseError> {
    let mut body = s.trim_end();
    let mut bound = default_box;
    if let Some(i) = body.rfind("box=") {
        let num = &body[i + 4..];
        bound = num
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or(ParseError { pos: i + 4, msg: format!("bad box bound '{num}'") })?;
        body = &body[..i];
    }
    let lead = body.len() - body.trim_start().len();
    let t = body.trim();
    if t.is_empty() {
        return err(lead, "empty point set");
    }
    let wrap = |e: ivp_core::Error| ParseError { pos: lead, msg: e.to_string() };
    if t.starts_with("{(") || t.starts_with("{ (") {
        let pts = parse_points(t).map_err(|e| ParseError { pos: e.pos + lead, ..e })?;
        return PointSet::finite(pts).map_err(wrap);
    }
    let mut axes = Vec::new();
    for (o, part) in split_top(t, 'x')? {
        axes.extend(parse_axis(part, lead + o)?);
    }
    PointSet::product(axes, bound).map_err(wrap)
}

/// A degree vector: `2,4`, `(2,4)` or with `inf` components.
pub fn parse_degree_vector(s: &str) -> Result<DegreeVector, ParseError> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let (body, off) = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(b) => (b, lead + 1),
        None => (t, lead),
    };
    let bounds = split_top(body, ',')?
        .into_iter()
        .map(|(o, c)| {
            let c = c.trim();
            if c == "inf" {
                Ok(DegreeBound::Large)
            } else {
                c.parse::<u32>()
                    .map(DegreeBound::Finite)
                    .or_else(|_| err(off + o, format!("expected a degree or 'inf', got '{c}'")))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DegreeVector::new(bounds))
}
