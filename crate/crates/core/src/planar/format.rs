//! Line-oriented graph files:
//!
//! ```text
//! planar 4
//! v 0 : 1 3
//! v 1 : 2 0
//! v 2 : 3 1
//! v 3 : 0 2
//! outer : 0 1 2 3
//! ```
//!
//! `planar <n>` declares the id range `0..n`; every `v` line declares a vertex
//! and its clockwise neighbors. Ids without a `v` line are absent. `#` starts
//! a comment.

use std::fmt::Write as _;

use super::{PlanarGraph, Vertex};
use crate::error::{Error, Result};
use crate::io::{tokens, Token};

pub fn parse_graph(text: &str) -> Result<PlanarGraph> {
    let mut n: Option<usize> = None;
    let mut present = Vec::new();
    let mut rotation: Vec<Vec<Vertex>> = Vec::new();
    let mut outer: Option<Vec<Vertex>> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "planar" => {
                if n.is_some() {
                    return Err(head.error(line_no, "duplicate header"));
                }
                let count = expect_usize(&toks, 1, line_no)?;
                expect_end(&toks, 2, line_no)?;
                n = Some(count);
                present = vec![false; count];
                rotation = vec![Vec::new(); count];
            }
            "v" => {
                let count = n.ok_or_else(|| head.error(line_no, "missing `planar <n>` header"))?;
                let id = expect_usize(&toks, 1, line_no)?;
                if id >= count {
                    return Err(toks[1].error(line_no, "vertex id out of range"));
                }
                if present[id] {
                    return Err(toks[1].error(line_no, "vertex declared twice"));
                }
                expect_colon(&toks, 2, line_no)?;
                present[id] = true;
                for i in 3..toks.len() {
                    let u = expect_usize(&toks, i, line_no)?;
                    if u >= count {
                        return Err(toks[i].error(line_no, "neighbor id out of range"));
                    }
                    rotation[id].push(u);
                }
            }
            "outer" => {
                expect_colon(&toks, 1, line_no)?;
                let mut cyc = Vec::new();
                for i in 2..toks.len() {
                    cyc.push(expect_usize(&toks, i, line_no)?);
                }
                outer = Some(cyc);
            }
            _ => return Err(head.error(line_no, "expected `planar`, `v` or `outer`")),
        }
    }
    if n.is_none() {
        return Err(Error::Parse { line: 1, col: 1, msg: "missing `planar <n>` header".into() });
    }
    for (v, r) in rotation.iter().enumerate() {
        if let Some(&u) = r.iter().find(|&&u| !present[u]) {
            return Err(Error::Parse { line: 0, col: 0, msg: format!("vertex {v} lists undeclared neighbor {u}") });
        }
    }
    let g = PlanarGraph::from_parts(present, rotation)?;
    match outer {
        Some(c) => g.with_outer_cycle(&c),
        None => Ok(g),
    }
}

pub fn write_graph(g: &PlanarGraph) -> String {
    let mut out = String::new();
    writeln!(out, "planar {}", g.capacity()).unwrap();
    for v in g.vertices() {
        write!(out, "v {v} :").unwrap();
        for &u in g.neighbors(v) {
            write!(out, " {u}").unwrap();
        }
        out.push('\n');
    }
    if let Some(f) = g.outer_face() {
        out.push_str("outer :");
        for &v in &g.face(f).walk {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn expect_usize(toks: &[Token], i: usize, line: usize) -> Result<usize> {
    match toks.get(i) {
        Some(t) => t.text.parse().map_err(|_| t.error(line, "expected a nonnegative integer")),
        None => Err(Error::Parse {
            line,
            col: toks.last().map_or(1, |t| t.col + t.text.len()),
            msg: "unexpected end of line".into(),
        }),
    }
}

fn expect_colon(toks: &[Token], i: usize, line: usize) -> Result<()> {
    match toks.get(i) {
        Some(t) if t.text == ":" => Ok(()),
        Some(t) => Err(t.error(line, "expected `:`")),
        None => Err(Error::Parse { line, col: 1, msg: "expected `:`".into() }),
    }
}

fn expect_end(toks: &[Token], i: usize, line: usize) -> Result<()> {
    match toks.get(i) {
        Some(t) => Err(t.error(line, "unexpected trailing token")),
        None => Ok(()),
    }
}
