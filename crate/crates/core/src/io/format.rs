//! Line-based text formats.
//!
//! Graph: `p <n> <m>` followed by `e <u> <v>` lines; `c` starts a comment.
//! Annotated instance: a graph block, then `problem <id>`, `r`, `c`, `lambda`,
//! `mu`, `k`, `offset` lines with one integer each, `L <ids…>`, `U <ids…>` and
//! `origin <v>:<source>…` where the source is an input id or `@tag`. In
//! instance files a `c` line holding exactly one integer is the multiplicity.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kernels::{AnnotatedInstance, Origin, Params, Problem};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn int<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))
}

/// Graph block state shared by both parsers.
#[derive(Default)]
struct GraphBlock {
    header: Option<(usize, usize)>,
    edges: Vec<(Vertex, Vertex)>,
}

impl GraphBlock {
    /// Consumes `p`/`e` lines; returns `false` for anything else.
    fn line(&mut self, tag: &str, toks: &mut std::str::SplitWhitespace<'_>, no: usize) -> Result<bool> {
        match tag {
            "p" => {
                if self.header.is_some() {
                    return Err(parse_err(no, "second 'p' line"));
                }
                let n = int(toks.next(), no, "vertex count")?;
                let m = int(toks.next(), no, "edge count")?;
                self.header = Some((n, m));
            }
            "e" => {
                if self.header.is_none() {
                    return Err(parse_err(no, "edge before 'p' line"));
                }
                let u = int(toks.next(), no, "endpoint")?;
                let v = int(toks.next(), no, "endpoint")?;
                self.edges.push((u, v));
            }
            _ => return Ok(false),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(no, format!("unexpected '{extra}'")));
        }
        Ok(true)
    }

    fn finish(self, last: usize) -> Result<Graph> {
        let (n, m) = self.header.ok_or_else(|| parse_err(last, "missing 'p' line"))?;
        if self.edges.len() != m {
            return Err(parse_err(
                last,
                format!("header announces {m} edges, found {}", self.edges.len()),
            ));
        }
        Graph::from_edges(n, &self.edges).map_err(|e| parse_err(last, e.to_string()))
    }
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

/// Non-empty trimmed lines with 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// In instance files `c <int>` sets the multiplicity; other `c` lines are comments.
fn is_multiplicity(line: &str) -> bool {
    let mut toks = line.split_whitespace();
    toks.next() == Some("c") && toks.next().is_some_and(|t| t.parse::<usize>().is_ok()) && toks.next().is_none()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut block = GraphBlock::default();
    let mut last = 0;
    for (no, line) in lines(text).filter(|(_, l)| !is_comment(l)) {
        last = no;
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        if !block.line(tag, &mut toks, no)? {
            return Err(parse_err(no, format!("unknown line type '{tag}'")));
        }
    }
    block.finish(last)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn parse_instance(text: &str) -> Result<AnnotatedInstance> {
    let mut block = GraphBlock::default();
    let mut problem = None;
    let mut params = Params::new(1);
    let (mut k, mut offset) = (0, 0);
    let (mut l, mut u, mut origin) = (None, None, None);
    let mut last = 0;
    for (no, line) in lines(text).filter(|(_, l)| is_multiplicity(l) || !is_comment(l)) {
        last = no;
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        if block.line(tag, &mut toks, no)? {
            continue;
        }
        match tag {
            "problem" => {
                let name = toks.next().ok_or_else(|| parse_err(no, "missing problem"))?;
                problem = Some(name.parse::<Problem>().map_err(|e| parse_err(no, e.to_string()))?);
            }
            "r" => params.r = int(toks.next(), no, "radius")?,
            "c" => params.c = int(toks.next(), no, "multiplicity")?,
            "lambda" => params.lambda = int(toks.next(), no, "lambda")?,
            "mu" => params.mu = int(toks.next(), no, "mu")?,
            "k" => k = int(toks.next(), no, "budget")?,
            "offset" => offset = int(toks.next(), no, "offset")?,
            "L" | "U" => {
                let ids: Vec<Vertex> = toks
                    .by_ref()
                    .map(|t| int(Some(t), no, "vertex"))
                    .collect::<Result<_>>()?;
                if tag == "L" {
                    l = Some(ids)
                } else {
                    u = Some(ids)
                }
            }
            "origin" => {
                let mut pairs = Vec::new();
                for t in toks.by_ref() {
                    let (v, src) = t
                        .split_once(':')
                        .ok_or_else(|| parse_err(no, format!("bad origin pair '{t}'")))?;
                    let v: Vertex = int(Some(v), no, "vertex")?;
                    let src: Origin = src.parse().map_err(|e: Error| parse_err(no, e.to_string()))?;
                    pairs.push((v, src));
                }
                origin = Some(pairs);
            }
            _ => return Err(parse_err(no, format!("unknown line type '{tag}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(no, format!("unexpected '{extra}'")));
        }
    }
    let graph = block.finish(last)?;
    let problem = problem.ok_or_else(|| parse_err(last, "missing 'problem' line"))?;
    let all: Vec<Vertex> = graph.vertices().collect();
    let origin = match origin {
        None => all.iter().map(|&v| Origin::Input(v)).collect(),
        Some(pairs) => {
            let mut slots: Vec<Option<Origin>> = vec![None; graph.n()];
            for (v, src) in pairs {
                let slot = slots
                    .get_mut(v)
                    .ok_or_else(|| parse_err(last, format!("origin for unknown vertex {v}")))?;
                if slot.replace(src).is_some() {
                    return Err(parse_err(last, format!("vertex {v} has two origins")));
                }
            }
            slots
                .into_iter()
                .enumerate()
                .map(|(v, s)| s.ok_or_else(|| parse_err(last, format!("vertex {v} has no origin"))))
                .collect::<Result<_>>()?
        }
    };
    let inst = AnnotatedInstance {
        l: crate::vset::normalized(l.unwrap_or_else(|| all.clone())),
        u: crate::vset::normalized(u.unwrap_or(all)),
        graph,
        problem,
        params,
        k,
        offset,
        origin,
    };
    inst.validate().map_err(|e| parse_err(last, e.to_string()))?;
    Ok(inst)
}

pub fn write_instance(inst: &AnnotatedInstance) -> String {
    let mut out = write_graph(&inst.graph);
    let p = inst.params;
    let _ = writeln!(out, "problem {}", inst.problem);
    let _ = writeln!(out, "r {}\nc {}\nlambda {}\nmu {}", p.r, p.c, p.lambda, p.mu);
    let _ = writeln!(out, "k {}\noffset {}", inst.k, inst.offset);
    let ids = |s: &[Vertex]| s.iter().map(|v| format!(" {v}")).collect::<String>();
    let _ = writeln!(out, "L{}", ids(&inst.l));
    let _ = writeln!(out, "U{}", ids(&inst.u));
    out.push_str("origin");
    for (v, o) in inst.origin.iter().enumerate() {
        let _ = write!(out, " {v}:{o}");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_rejects_garbage() {
        let g = parse_graph("c a triangle\np 3 3\ne 0 1\ne 1 2\nc mid comment\ne 2 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(matches!(parse_graph("p 2 1\ne 0 5\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("p 2 2\ne 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("e 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_graph("p 2 1\ne 0 1 7\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn instance_defaults() {
        let inst = parse_instance("p 2 1\ne 0 1\nproblem total\nr 2\n").unwrap();
        assert_eq!(inst.l, vec![0, 1]);
        assert_eq!(inst.params.r, 2);
        assert_eq!(inst.origin, vec![Origin::Input(0), Origin::Input(1)]);
        assert!(parse_instance("p 1 0\nproblem nope\n").is_err());
        assert!(parse_instance("p 1 0\nproblem rcdom\norigin 0:@a 0:1\n").is_err());
    }
}
