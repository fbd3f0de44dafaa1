//! Clique detection through range mode, range minority, subgraph connectivity,
//! document retrieval, colour counting and reachability targets.

use super::graph::{KPartiteGraph, Vertex};
use super::targets::{
    BatchModeTarget, ColorTarget, DocTarget, DynModeTarget, SequenceTarget, StReachTarget, SubConnTarget,
};
use super::{check_restored, Outcome};
use crate::error::{Error, Result};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

fn require_parts(g: &KPartiteGraph, k: usize) -> Result<()> {
    if g.parts() != k {
        return Err(Error::InvalidArgument(format!("expected a {k}-partite graph, got {} parts", g.parts())));
    }
    Ok(())
}

/// `nbrs[v]` = sorted neighbours of vertex `v` of `part` inside `into`.
fn neighbor_lists(g: &KPartiteGraph, part: usize, into: usize) -> Vec<Vec<usize>> {
    (0..g.size(part)).map(|v| g.neighbors_in((part, v), into)).collect()
}

fn label(v: usize) -> i64 {
    v as i64 + 1
}

/// `nbrs` first, then the rest of `0..n`, or the reverse when `nbrs_first` is false.
fn split_permutation(nbrs: &[usize], n: usize, nbrs_first: bool) -> Vec<i64> {
    let mut is_nbr = vec![false; n];
    for &v in nbrs {
        is_nbr[v] = true;
    }
    let others = (0..n).filter(|&v| !is_nbr[v]).map(label);
    let mine = nbrs.iter().map(|&v| label(v));
    if nbrs_first {
        mine.chain(others).collect()
    } else {
        others.chain(mine).collect()
    }
}

/// 4-clique detection through range mode over a sequence with middle inserts.
///
/// Each `a ∈ A` contributes a permutation of `D` with its non-neighbours
/// first and each `b ∈ B` one with its neighbours first. Phase `c` inserts
/// `N_D(c)` between the two halves. The range from `a`'s first neighbour to
/// `b`'s last neighbour holds `F` full permutations plus one copy of each of
/// `N(a)`, `N(c)`, `N(b)`, so its mode frequency is `F + 3` exactly when the
/// three share a neighbour in `D`.
pub fn red_4clique_range_mode<T: SequenceTarget>(g: &KPartiteGraph, target: &mut T) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let mut out = Outcome::new(false);
    if nd == 0 {
        return Ok(out);
    }
    let (ad, bd, cd) = (neighbor_lists(g, A, D), neighbor_lists(g, B, D), neighbor_lists(g, C, D));
    let mut values = Vec::with_capacity((na + nb) * nd);
    for n in &ad {
        values.extend(split_permutation(n, nd, false));
    }
    for n in &bd {
        values.extend(split_permutation(n, nd, true));
    }
    let middle = na * nd + 1;
    target.build(&values, values.len() + nd)?;
    out.builds += 1;
    for c in 0..nc {
        let before = target.fingerprint();
        for &d in &cd[c] {
            target.insert(middle, label(d))?;
            out.updates += 1;
        }
        let m_c = cd[c].len();
        for a in (0..na).filter(|&a| !ad[a].is_empty()) {
            for b in (0..nb).filter(|&b| !bd[b].is_empty()) {
                let l = a * nd + (nd - ad[a].len()) + 1;
                let r = na * nd + m_c + b * nd + bd[b].len();
                let full = (na - 1 - a) + b;
                out.queries += 1;
                let common = target.query(l, r)?.is_some_and(|(_, freq)| freq == full + 3);
                if common && g.is_clique(&[(A, a), (B, b), (C, c)]) {
                    out.answer = true;
                }
            }
        }
        for _ in 0..m_c {
            target.delete(middle)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), c)?;
    }
    Ok(out)
}

/// 4-clique detection through range minority.
///
/// The permutations put non-neighbours last for `A` and first for `B`, a full
/// permutation of `D` sits in the middle and phase `c` inserts `D ∖ N(c)`
/// after it. The range from `a`'s first non-neighbour to `b`'s last
/// non-neighbour holds every label at least `F + 1` times, with equality
/// exactly for common neighbours of `a`, `b`, `c`.
pub fn red_4clique_range_minority<T: SequenceTarget>(g: &KPartiteGraph, target: &mut T) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let mut out = Outcome::new(false);
    if nd == 0 {
        return Ok(out);
    }
    let (ad, bd, cd) = (neighbor_lists(g, A, D), neighbor_lists(g, B, D), neighbor_lists(g, C, D));
    let mut values = Vec::with_capacity((na + nb + 1) * nd);
    for n in &ad {
        values.extend(split_permutation(n, nd, true));
    }
    values.extend((0..nd).map(label));
    for n in &bd {
        values.extend(split_permutation(n, nd, false));
    }
    let middle = na * nd + nd + 1;
    target.build(&values, values.len() + nd)?;
    out.builds += 1;
    for c in 0..nc {
        let before = target.fingerprint();
        let non: Vec<i64> = split_permutation(&cd[c], nd, true)[cd[c].len()..].to_vec();
        for &v in &non {
            target.insert(middle, v)?;
            out.updates += 1;
        }
        for a in 0..na {
            for b in 0..nb {
                let l = a * nd + ad[a].len() + 1;
                let r = na * nd + nd + non.len() + b * nd + (nd - bd[b].len());
                let full = (na - 1 - a) + b;
                out.queries += 1;
                let common = target.query(l, r)?.is_some_and(|(_, freq)| freq == full + 1);
                if common && g.is_clique(&[(A, a), (B, b), (C, c)]) {
                    out.answer = true;
                }
            }
        }
        for _ in 0..non.len() {
            target.delete(middle)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), c)?;
    }
    Ok(out)
}

/// Points for parts `0..2d` on the half-axes, each vertex contributing a
/// neighbours-first permutation of part `labels`. Returns the points and
/// `ends[i][v]`, the half-axis position of the last neighbour of `v` in part `i`.
type LabelledPoints = Vec<(Vec<i64>, i64)>;

/// A tuple of vertices, its query box and the number of full permutations the box spans.
type TupleQuery = (Vec<usize>, Vec<(i64, i64)>, usize);

fn half_axis_points(g: &KPartiteGraph, d: usize, labels: usize) -> (LabelledPoints, Vec<Vec<i64>>) {
    let nl = g.size(labels);
    let mut points = Vec::new();
    let mut ends = Vec::with_capacity(2 * d);
    for part in 0..2 * d {
        let (axis, sign) = (part / 2, if part % 2 == 0 { 1 } else { -1 });
        let nbrs = neighbor_lists(g, part, labels);
        let mut part_ends = Vec::with_capacity(nbrs.len());
        for (v, n) in nbrs.iter().enumerate() {
            for (j, l) in split_permutation(n, nl, true).into_iter().enumerate() {
                let mut coords = vec![0; d];
                coords[axis] = sign * (v * nl + j + 1) as i64;
                points.push((coords, l));
            }
            part_ends.push((v * nl + n.len()) as i64);
        }
        ends.push(part_ends);
    }
    (points, ends)
}

/// Tuples of one vertex from each of parts `0..2d` whose neighbourhoods in
/// part `labels` are non-empty, with their query boxes and full-copy counts.
fn half_axis_queries(g: &KPartiteGraph, d: usize, labels: usize, ends: &[Vec<i64>]) -> Vec<TupleQuery> {
    let choices: Vec<Vec<usize>> =
        (0..2 * d).map(|p| (0..g.size(p)).filter(|&v| !g.neighbors_in((p, v), labels).is_empty()).collect()).collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut pick = vec![0usize; 2 * d];
    loop {
        let tuple: Vec<usize> = pick.iter().enumerate().map(|(p, &i)| choices[p][i]).collect();
        let ranges = (0..d).map(|t| (-ends[2 * t + 1][tuple[2 * t + 1]], ends[2 * t][tuple[2 * t]])).collect();
        let full = tuple.iter().sum();
        out.push((tuple, ranges, full));
        let mut p = 2 * d;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            pick[p] += 1;
            if pick[p] < choices[p].len() {
                break;
            }
            pick[p] = 0;
        }
    }
}

fn tuple_vertices(tuple: &[usize]) -> Vec<Vertex> {
    tuple.iter().enumerate().map(|(p, &v)| (p, v)).collect()
}

/// `(2d+1)`-clique detection through one batch of `d`-dimensional range mode queries.
///
/// Part `i < 2d` lives on half-axis `⌈(i+1)/2⌉`, positive for even `i`, with
/// one neighbours-first permutation of part `2d` per vertex. The box for a
/// tuple reaches each `v_i`'s last neighbour, so the mode frequency is
/// `F + 2d` exactly when the tuple has a common neighbour in part `2d`.
pub fn red_clique_batch_dmode<T: BatchModeTarget>(g: &KPartiteGraph, d: usize, target: &mut T) -> Result<Outcome<bool>> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    require_parts(g, 2 * d + 1)?;
    let mut out = Outcome::new(false);
    let labels = 2 * d;
    let (points, ends) = half_axis_points(g, d, labels);
    let tuples = half_axis_queries(g, d, labels, &ends);
    let boxes: Vec<Vec<(i64, i64)>> = tuples.iter().map(|t| t.1.clone()).collect();
    out.builds += 1;
    out.queries += boxes.len() as u64;
    let answers = target.solve(d, &points, &boxes)?;
    for ((tuple, _, full), ans) in tuples.iter().zip(answers) {
        if ans.is_some_and(|(_, f)| f == full + 2 * d) && g.is_clique(&tuple_vertices(tuple)) {
            out.answer = true;
        }
    }
    Ok(out)
}

/// `(2d+2)`-clique detection through dynamic `d`-dimensional range mode.
///
/// Parts `0..2d` are laid out as in the batch version with labels from part
/// `2d+1`. Phase `v ∈ V_{2d}` inserts one origin point per neighbour of `v`
/// in part `2d+1`; every box contains the origin.
pub fn red_clique_dyn_dmode<T: DynModeTarget>(g: &KPartiteGraph, d: usize, target: &mut T) -> Result<Outcome<bool>> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    require_parts(g, 2 * d + 2)?;
    let mut out = Outcome::new(false);
    let (phase_part, labels) = (2 * d, 2 * d + 1);
    let (points, ends) = half_axis_points(g, d, labels);
    let tuples = half_axis_queries(g, d, labels, &ends);
    target.build(d, points.len() + g.size(labels), &points)?;
    out.builds += 1;
    let origin = vec![0; d];
    for v in 0..g.size(phase_part) {
        let before = target.fingerprint();
        let nbrs = g.neighbors_in((phase_part, v), labels);
        for &l in &nbrs {
            target.insert(&origin, label(l))?;
            out.updates += 1;
        }
        for (tuple, ranges, full) in &tuples {
            out.queries += 1;
            let common = target.query(ranges)?.is_some_and(|(_, f)| f == full + 2 * d + 1);
            if common {
                let mut vs = tuple_vertices(tuple);
                vs.push((phase_part, v));
                if g.is_clique(&vs) {
                    out.answer = true;
                }
            }
        }
        for &l in &nbrs {
            target.delete(&origin, label(l))?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), v)?;
    }
    Ok(out)
}

/// Vertex numbering of the layered graph `s, V_B, U_B, U_D, U_C, V_C, t`.
struct SubConnLayout {
    na: usize,
    nb: usize,
    nc: usize,
}

impl SubConnLayout {
    fn s(&self) -> usize {
        0
    }
    fn vb(&self, b: usize) -> usize {
        1 + b
    }
    fn ub(&self, a: usize) -> usize {
        1 + self.nb + a
    }
    fn ud(&self, a: usize) -> usize {
        1 + self.nb + self.na + a
    }
    fn uc(&self, a: usize) -> usize {
        1 + self.nb + 2 * self.na + a
    }
    fn vc(&self, c: usize) -> usize {
        1 + self.nb + 3 * self.na + c
    }
    fn t(&self) -> usize {
        1 + self.nb + 3 * self.na + self.nc
    }
}

/// 4-clique detection through s–t subgraph connectivity.
///
/// One phase per `d ∈ D` activates `a^{U_D}` for the neighbours of `d`, then
/// for each neighbour `b` of `d` activates `b^{V_B}` alone and the `c^{V_C}`
/// adjacent to both `b` and `d`, and asks whether `s` reaches `t`. Returns at
/// the first positive query; phases leave the active set changed.
pub fn red_4clique_subconn<T: SubConnTarget>(g: &KPartiteGraph, target: &mut T) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let lay = SubConnLayout { na, nb, nc };
    let mut edges = Vec::new();
    for b in 0..nb {
        edges.push((lay.s(), lay.vb(b)));
    }
    for c in 0..nc {
        edges.push((lay.vc(c), lay.t()));
    }
    for a in 0..na {
        for b in g.neighbors_in((A, a), B) {
            edges.push((lay.vb(b), lay.ub(a)));
        }
        for c in g.neighbors_in((A, a), C) {
            edges.push((lay.uc(a), lay.vc(c)));
        }
        edges.push((lay.ub(a), lay.ud(a)));
        edges.push((lay.ud(a), lay.uc(a)));
    }
    let mut out = Outcome::new(false);
    target.build(lay.t() + 1, &edges, lay.s(), lay.t())?;
    out.builds += 1;
    for d in 0..nd {
        for a in 0..na {
            target.set_active(lay.ud(a), g.adjacent((A, a), (D, d)))?;
            out.updates += 1;
        }
        for b in g.neighbors_in((D, d), B) {
            target.set_active(lay.vb(b), true)?;
            out.updates += 1;
            for other in (0..nb).filter(|&x| x != b) {
                target.set_active(lay.vb(other), false)?;
                out.updates += 1;
            }
            for c in 0..nc {
                target.set_active(lay.vc(c), g.adjacent((C, c), (D, d)) && g.adjacent((C, c), (B, b)))?;
                out.updates += 1;
            }
            out.queries += 1;
            if target.query()? {
                out.answer = true;
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Symbol of `a ∈ A` and of `b ∈ B` in the document construction.
fn doc_symbols(na: usize) -> (impl Fn(usize) -> u32, impl Fn(usize) -> u32) {
    (|a: usize| a as u32, move |b: usize| (na + b) as u32)
}

/// 4-clique detection through dynamic 2-pattern document retrieval.
///
/// Document `d` lists the symbols of its neighbours in `A ∪ B`. Phase `c`
/// switches on the documents of `N_D(c)` and asks, for each `(a, b)`, how many
/// switched-on documents contain both symbols.
pub fn red_4clique_2pattern<T: DocTarget>(g: &KPartiteGraph, target: &mut T) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let (sym_a, sym_b) = doc_symbols(na);
    let docs: Vec<Vec<u32>> = (0..nd)
        .map(|d| {
            let mut s: Vec<u32> = g.neighbors_in((D, d), A).into_iter().map(&sym_a).collect();
            s.extend(g.neighbors_in((D, d), B).into_iter().map(&sym_b));
            s
        })
        .collect();
    let mut out = Outcome::new(false);
    target.build(&docs)?;
    out.builds += 1;
    for c in 0..nc {
        let before = target.fingerprint();
        let on = g.neighbors_in((C, c), D);
        for &d in &on {
            target.set_on(d, true)?;
            out.updates += 1;
        }
        for a in 0..na {
            for b in 0..nb {
                out.queries += 1;
                if target.query(sym_a(a), sym_b(b))? > 0 && g.is_clique(&[(A, a), (B, b), (C, c)]) {
                    out.answer = true;
                }
            }
        }
        for &d in &on {
            target.set_on(d, false)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), c)?;
    }
    Ok(out)
}

/// 4-clique detection through dynamic 2D distinct-colour counting.
///
/// A neighbour `d` of `a` is a colour-`d` point at `(a, |A|+1−a)`, one of `b`
/// at `(−b, −|B|−1+b)`. The rectangle spanned by those two corners contains
/// exactly the points of `a`, `b` and the origin, so inclusion–exclusion over
/// `q_abc, q_ab, q_ac, q_bc` and the degrees counts common neighbours.
/// `q_ab` is taken once up front unless `per_phase_qab` asks for it in every phase.
pub fn red_4clique_color<T: ColorTarget>(g: &KPartiteGraph, target: &mut T, per_phase_qab: bool) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let (ai, bi) = (na as i64, nb as i64);
    let pa = |a: usize| [a as i64 + 1, ai - a as i64];
    let pb = |b: usize| [-(b as i64 + 1), -bi + b as i64];
    let mut points = Vec::new();
    for d in 0..nd {
        for a in g.neighbors_in((D, d), A) {
            points.push((pa(a), label(d)));
        }
        for b in g.neighbors_in((D, d), B) {
            points.push((pb(b), label(d)));
        }
    }
    let rect = |lo: [i64; 2], hi: [i64; 2]| [(lo[0], hi[0]), (lo[1], hi[1])];
    let degree = |part: usize, v: usize| g.neighbors_in((part, v), D).len() as i64;
    let mut out = Outcome::new(false);
    target.build(&points, points.len() + nd)?;
    out.builds += 1;
    let mut q_ab = vec![vec![0i64; nb]; na];
    let fill_qab = |target: &mut T, out: &mut Outcome<bool>, q_ab: &mut Vec<Vec<i64>>| -> Result<()> {
        for (a, row) in q_ab.iter_mut().enumerate() {
            for (b, q) in row.iter_mut().enumerate() {
                out.queries += 1;
                *q = target.query(&rect(pb(b), pa(a)))? as i64;
            }
        }
        Ok(())
    };
    if !per_phase_qab {
        fill_qab(target, &mut out, &mut q_ab)?;
    }
    for c in 0..nc {
        let before = target.fingerprint();
        if per_phase_qab {
            fill_qab(target, &mut out, &mut q_ab)?;
        }
        let nbrs = g.neighbors_in((C, c), D);
        for &d in &nbrs {
            target.insert([0, 0], label(d))?;
            out.updates += 1;
        }
        let q_c = nbrs.len() as i64;
        for a in 0..na {
            for b in 0..nb {
                let q_abc = target.query(&rect(pb(b), pa(a)))? as i64;
                let q_ac = target.query(&rect([0, 0], pa(a)))? as i64;
                let q_bc = target.query(&rect(pb(b), [0, 0]))? as i64;
                out.queries += 3;
                let common = q_abc - q_ab[a][b] - q_bc - q_ac + degree(A, a) + degree(B, b) + q_c;
                if common > 0 && g.is_clique(&[(A, a), (B, b), (C, c)]) {
                    out.answer = true;
                }
            }
        }
        for &d in &nbrs {
            target.delete([0, 0], label(d))?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), c)?;
    }
    Ok(out)
}

/// 4-clique detection through s–t reachability in a layered digraph
/// `s, A₁, B₁, B₂, C₁, C₂, A₂, t`.
///
/// Static edges follow `A–B`, `B–C` and `C–A`. Phase `d` opens `B₁→B₂` and
/// `C₁→C₂` for the neighbours of `d`, then for each neighbour `a` of `d`
/// links `s→a₁` and `a₂→t` and asks whether `t` is reachable.
pub fn red_4clique_streach<T: StReachTarget>(g: &KPartiteGraph, target: &mut T) -> Result<Outcome<bool>> {
    require_parts(g, 4)?;
    let (na, nb, nc, nd) = (g.size(A), g.size(B), g.size(C), g.size(D));
    let a1 = |a: usize| 1 + a;
    let b1 = |b: usize| 1 + na + b;
    let b2 = |b: usize| 1 + na + nb + b;
    let c1 = |c: usize| 1 + na + 2 * nb + c;
    let c2 = |c: usize| 1 + na + 2 * nb + nc + c;
    let a2 = |a: usize| 1 + na + 2 * nb + 2 * nc + a;
    let (s, t) = (0, 1 + 2 * (na + nb + nc));
    let mut edges = Vec::new();
    for a in 0..na {
        edges.extend(g.neighbors_in((A, a), B).into_iter().map(|b| (a1(a), b1(b))));
    }
    for b in 0..nb {
        edges.extend(g.neighbors_in((B, b), C).into_iter().map(|c| (b2(b), c1(c))));
    }
    for c in 0..nc {
        edges.extend(g.neighbors_in((C, c), A).into_iter().map(|a| (c2(c), a2(a))));
    }
    let mut out = Outcome::new(false);
    target.build(t + 1, &edges, s, t)?;
    out.builds += 1;
    for d in 0..nd {
        let before = target.fingerprint();
        let mids: Vec<(usize, usize)> = g
            .neighbors_in((D, d), B)
            .into_iter()
            .map(|b| (b1(b), b2(b)))
            .chain(g.neighbors_in((D, d), C).into_iter().map(|c| (c1(c), c2(c))))
            .collect();
        for &(x, y) in &mids {
            target.insert_edge(x, y)?;
            out.updates += 1;
        }
        for a in g.neighbors_in((D, d), A) {
            target.insert_edge(s, a1(a))?;
            target.insert_edge(a2(a), t)?;
            out.queries += 1;
            if target.query()? {
                out.answer = true;
            }
            target.delete_edge(s, a1(a))?;
            target.delete_edge(a2(a), t)?;
            out.updates += 4;
        }
        for &(x, y) in &mids {
            target.delete_edge(x, y)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), d)?;
    }
    Ok(out)
}
