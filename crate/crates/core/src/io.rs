//! Line-oriented text formats for lists, requests, colorings and rationals.
//!
//! ```text
//! L 0 : 1 2 3 4      # list file
//! r 0 3              # request: vertex 0 wants color 3
//! w 0 3 1/2          # weighted request entry, decimal or p/q
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::coloring::{Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::planar::Vertex;

/// A whitespace-separated word with its 1-based column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub col: usize,
}

impl Token<'_> {
    pub fn error(&self, line: usize, msg: &str) -> Error {
        Error::Parse { line, col: self.col, msg: msg.to_string() }
    }

    fn parse<T: std::str::FromStr>(&self, line: usize, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.error(line, what))
    }
}

/// Splits a line into tokens, dropping everything after `#`.
pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], col: s + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], col: s + 1 });
    }
    out
}

fn end_of_line(line: usize, toks: &[Token]) -> Error {
    Error::Parse { line, col: toks.last().map_or(1, |t| t.col + t.text.len()), msg: "unexpected end of line".into() }
}

fn field<'a>(toks: &'a [Token<'a>], i: usize, line: usize) -> Result<&'a Token<'a>> {
    toks.get(i).ok_or_else(|| end_of_line(line, toks))
}

fn no_more(toks: &[Token], i: usize, line: usize) -> Result<()> {
    match toks.get(i) {
        Some(t) => Err(t.error(line, "unexpected trailing token")),
        None => Ok(()),
    }
}

pub fn parse_lists(text: &str) -> Result<ListAssignment> {
    let mut l = ListAssignment::default();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if head.text != "L" {
            return Err(head.error(line, "expected `L`"));
        }
        let vt = field(&toks, 1, line)?;
        let v: Vertex = vt.parse(line, "expected a nonnegative integer")?;
        if !seen.insert(v) {
            return Err(vt.error(line, "list given twice"));
        }
        let colon = field(&toks, 2, line)?;
        if colon.text != ":" {
            return Err(colon.error(line, "expected `:`"));
        }
        let mut colors = Vec::new();
        for t in &toks[3..] {
            colors.push(t.parse::<Color>(line, "expected a color (nonnegative integer)")?);
        }
        l.set(v, colors);
    }
    Ok(l)
}

/// Writes the lists of the given vertices.
pub fn write_lists<I: IntoIterator<Item = Vertex>>(l: &ListAssignment, vertices: I) -> String {
    let mut out = String::new();
    for v in vertices {
        write!(out, "L {v} :").unwrap();
        for c in l.get(v) {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Vertex -> requested color.
pub type Request = BTreeMap<Vertex, Color>;

pub fn parse_request(text: &str) -> Result<Request> {
    let mut r = Request::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if head.text != "r" {
            return Err(head.error(line, "expected `r`"));
        }
        let vt = field(&toks, 1, line)?;
        let v: Vertex = vt.parse(line, "expected a nonnegative integer")?;
        let c: Color = field(&toks, 2, line)?.parse(line, "expected a color (nonnegative integer)")?;
        no_more(&toks, 3, line)?;
        if r.insert(v, c).is_some() {
            return Err(vt.error(line, "vertex requested twice"));
        }
    }
    Ok(r)
}

pub fn write_request(r: &Request) -> String {
    r.iter().map(|(v, c)| format!("r {v} {c}\n")).collect()
}

/// `(vertex, color) -> weight` entries in file order of keys.
pub fn parse_weights(text: &str) -> Result<BTreeMap<(Vertex, Color), BigRational>> {
    let mut w = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if head.text != "w" {
            return Err(head.error(line, "expected `w`"));
        }
        let vt = field(&toks, 1, line)?;
        let v: Vertex = vt.parse(line, "expected a nonnegative integer")?;
        let c: Color = field(&toks, 2, line)?.parse(line, "expected a color (nonnegative integer)")?;
        let wt = field(&toks, 3, line)?;
        let x = parse_rational(wt.text).ok_or_else(|| wt.error(line, "expected a weight (decimal or p/q)"))?;
        if x.is_negative() {
            return Err(wt.error(line, "weights must be nonnegative"));
        }
        no_more(&toks, 4, line)?;
        if w.insert((v, c), x).is_some() {
            return Err(vt.error(line, "pair weighted twice"));
        }
    }
    Ok(w)
}

pub fn write_weights(w: &BTreeMap<(Vertex, Color), BigRational>) -> String {
    w.iter().map(|((v, c), x)| format!("w {v} {c} {}\n", ratio(x))).collect()
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}0").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len() + 1);
    let x = BigRational::new(digits, scale);
    Some(if neg { -x } else { x })
}

/// Always `p/q` with `q >= 1`.
pub fn ratio<T: std::fmt::Display + Clone + num_integer::Integer>(x: &num_rational::Ratio<T>) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `c <vertex> <color>` per colored vertex.
pub fn write_coloring(c: &Coloring) -> String {
    c.iter().map(|(v, col)| format!("c {v} {col}\n")).collect()
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut c = Coloring::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if head.text != "c" {
            return Err(head.error(line, "expected `c`"));
        }
        let v: Vertex = field(&toks, 1, line)?.parse(line, "expected a nonnegative integer")?;
        let col: Color = field(&toks, 2, line)?.parse(line, "expected a color (nonnegative integer)")?;
        no_more(&toks, 3, line)?;
        c.set(v, col);
    }
    Ok(c)
}
