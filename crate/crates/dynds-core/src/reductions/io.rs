//! Text formats for k-partite graphs and OuMv instances.
//!
//! Graph: header `k n₁ … n_k`, then one edge per line as `p u q v` with
//! 1-based parts `p < q` and 1-based indices.
//!
//! OuMv: header `k n |M| q`, then `|M|` lines of `k` coordinates, then `q`
//! blocks of `k` lines each listing a subset (`-` for the empty set).
//!
//! Blank lines and lines starting with `#` are ignored by both parsers.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::graph::KPartiteGraph;
use crate::error::{Error, Result};
use crate::tensor_ds::OuMvInstance;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| parse_err(line, format!("expected a non-negative integer, got {w:?}"))))
        .collect()
}

pub fn graph_to_text(g: &KPartiteGraph) -> String {
    let mut s = String::new();
    let sizes: Vec<String> = g.sizes().iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "{} {}", g.parts(), sizes.join(" "));
    for ((p, u), (q, v)) in g.edges() {
        let _ = writeln!(s, "{} {} {} {}", p + 1, u + 1, q + 1, v + 1);
    }
    s
}

pub fn parse_graph(text: &str) -> Result<KPartiteGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head = numbers(hl, header)?;
    let k = *head.first().ok_or_else(|| parse_err(hl, "missing part count"))?;
    if head.len() != k + 1 {
        return Err(parse_err(hl, format!("header lists {} sizes for {k} parts", head.len() - 1)));
    }
    let mut g = KPartiteGraph::new(&head[1..]);
    for (ln, line) in lines {
        let e = numbers(ln, line)?;
        let [p, u, q, v] = e[..] else {
            return Err(parse_err(ln, "edge line needs four fields"));
        };
        if p == 0 || q == 0 || u == 0 || v == 0 || p >= q || q > k {
            return Err(parse_err(ln, "parts must satisfy 1 ≤ p < q ≤ k and indices start at 1"));
        }
        g.add_edge((p - 1, u - 1), (q - 1, v - 1)).map_err(|e| parse_err(ln, e.to_string()))?;
    }
    Ok(g)
}

pub fn oumv_to_text(inst: &OuMvInstance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {} {}", inst.k, inst.n, inst.m.len(), inst.queries.len());
    for t in &inst.m {
        let row: Vec<String> = t.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    for q in &inst.queries {
        for u in q {
            if u.is_empty() {
                let _ = writeln!(s, "-");
            } else {
                let row: Vec<String> = u.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
    }
    s
}

pub fn parse_oumv(text: &str) -> Result<OuMvInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let [k, n, m_len, q_len] = numbers(hl, header)?[..] else {
        return Err(parse_err(hl, "header needs `k n |M| q`"));
    };
    let mut inst = OuMvInstance { k, n, ..Default::default() };
    let mut last = hl;
    for _ in 0..m_len {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(last + 1, "missing tuple line"))?;
        last = ln;
        let t = numbers(ln, line)?;
        if t.len() != k || t.iter().any(|&x| x == 0 || x > n) {
            return Err(parse_err(ln, format!("tuple must have {k} entries in [1,{n}]")));
        }
        if !inst.m.insert(t) {
            return Err(parse_err(ln, "duplicate tuple"));
        }
    }
    for _ in 0..q_len {
        let mut query = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(last + 1, "missing subset line"))?;
            last = ln;
            let set: BTreeSet<usize> = if line == "-" { BTreeSet::new() } else { numbers(ln, line)?.into_iter().collect() };
            if set.iter().any(|&x| x == 0 || x > n) {
                return Err(parse_err(ln, format!("subset members must lie in [1,{n}]")));
            }
            query.push(set);
        }
        inst.queries.push(query);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content"));
    }
    inst.validate().map_err(|e| parse_err(hl, e.to_string()))?;
    Ok(inst)
}
