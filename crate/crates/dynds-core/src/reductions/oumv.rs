//! OuMv answered through skyline counting, unit-cube union volume, halfspace
//! containment, hyperclique detection, axis increments with maximum queries
//! and zero prefix sums.

use std::collections::BTreeSet;

use num_rational::Ratio;

use super::targets::{HalfspaceTarget, LangermanTarget, ReplayOp, ReplayTarget};
use super::{check_restored, Outcome};
use crate::error::{Error, Result};
use crate::geom::{PointD, ScaledInt};
use crate::geom_dyn::Halfspace;
use crate::tensor_ds::{EricksonSolver, HypercliqueSolver, OuMvInstance, Tensor};

fn require_k(inst: &OuMvInstance, min_k: usize) -> Result<()> {
    inst.validate()?;
    if inst.k < min_k {
        return Err(Error::InvalidArgument(format!("need k ≥ {min_k}, got {}", inst.k)));
    }
    Ok(())
}

/// `|M ∩ U^(1) × ⋯ × U^(k−1) × keep|` for last coordinates accepted by `keep`.
fn count_prefix_product(inst: &OuMvInstance, u: &[BTreeSet<usize>], keep: impl Fn(usize) -> bool) -> usize {
    let k = inst.k;
    inst.m.iter().filter(|t| keep(t[k - 1]) && (0..k - 1).all(|i| u[i].contains(&t[i]))).count()
}

/// Scale `S = 2(N+1)` for the perturbed first coordinate `a₁ − a_k/S`.
fn tuple_scale(n: usize) -> i64 {
    2 * (n as i64 + 1)
}

/// Raw corner `(a₁S − a_k, (R−a₁)S, a₂S, (R−a₂)S, …, a_{k−1}S, (R−a_{k−1})S, a_kS)` for mirror `R`.
fn tuple_corner(t: &[usize], n: usize, mirror: usize) -> Vec<i64> {
    let (s, n) = (tuple_scale(n), mirror as i64);
    let k = t.len();
    let mut raw = Vec::with_capacity(2 * k - 1);
    for (i, &a) in t[..k - 1].iter().enumerate() {
        let a = a as i64;
        raw.push(if i == 0 { a * s - t[k - 1] as i64 } else { a * s });
        raw.push((n - a) * s);
    }
    raw.push(t[k - 1] as i64 * s);
    raw
}

/// Points that fill every coordinate with `fill` except the pair `(j', R−j')` at axes `2i, 2i+1`.
fn blocker_corners(k: usize, n: usize, mirror: usize, u: &[BTreeSet<usize>], fill: i64) -> Vec<Vec<i64>> {
    let s = tuple_scale(n);
    let mut out = Vec::new();
    for (i, ui) in u.iter().enumerate().take(k - 1) {
        for j in (1..=n).filter(|j| !ui.contains(j)) {
            let mut raw = vec![fill; 2 * k - 1];
            raw[2 * i] = j as i64 * s;
            raw[2 * i + 1] = (mirror - j) as i64 * s;
            out.push(raw);
        }
    }
    out
}

fn to_point(raw: &[i64], scale: i64) -> Result<PointD> {
    PointD::from_raw(raw, scale)
}

/// OuMv through skyline counting in `ℝ^{2k−1}`.
///
/// Tuples of `M` become pairwise incomparable points. A query inserts, for
/// each `i < k` and `j' ∉ U^(i)`, a point dominating the tuples with
/// `a_i = j'`, then for `j = 0..=N` probes with a point dominating the tuples
/// with `a_k ≤ j`. The skyline sizes `c_j` drop by exactly the number of
/// surviving tuples with `a_k = j`; each `c_j` is also compared against that
/// closed form.
pub fn red_oumvk_skyline<T: ReplayTarget<Answer = usize>>(inst: &OuMvInstance, target: &mut T) -> Result<Outcome<Vec<bool>>> {
    require_k(inst, 2)?;
    let (k, n) = (inst.k, inst.n);
    let s = tuple_scale(n);
    let inf = 2 * n as i64 * s;
    let initial = inst.m.iter().map(|t| to_point(&tuple_corner(t, n, n), s)).collect::<Result<Vec<_>>>()?;
    let mut ops = Vec::new();
    let mut out = Outcome::new(Vec::new());
    for u in &inst.queries {
        let blockers = blocker_corners(k, n, n, u, inf).into_iter().map(|r| to_point(&r, s)).collect::<Result<Vec<_>>>()?;
        ops.extend(blockers.iter().cloned().map(ReplayOp::Insert));
        for j in 0..=n {
            let mut raw = vec![inf; 2 * k - 1];
            raw[2 * k - 2] = j as i64 * s;
            let probe = to_point(&raw, s)?;
            ops.push(ReplayOp::Insert(probe.clone()));
            ops.push(ReplayOp::Query);
            ops.push(ReplayOp::Delete(probe));
        }
        ops.extend(blockers.into_iter().map(ReplayOp::Delete));
    }
    out.updates = ops.iter().filter(|op| !matches!(op, ReplayOp::Query)).count() as u64;
    out.queries = ops.len() as u64 - out.updates;
    out.builds += 1;
    let counts = target.replay(&initial, &ops)?;
    if counts.len() != inst.queries.len() * (n + 1) {
        return Err(Error::InvalidArgument(format!("target answered {} of {} queries", counts.len(), out.queries)));
    }
    for (q, (u, c)) in inst.queries.iter().zip(counts.chunks(n + 1)).enumerate() {
        let removed: usize = u[..k - 1].iter().map(BTreeSet::len).sum();
        for (j, &cj) in c.iter().enumerate() {
            let expect = ((k - 1) * n + 1 - removed) + count_prefix_product(inst, u, |x| x > j);
            if cj != expect {
                return Err(Error::InvalidArgument(format!("query {q}: skyline count {cj} at j={j}, expected {expect}")));
            }
        }
        let total: usize = u[k - 1].iter().map(|&j| c[j - 1] - c[j]).sum();
        out.answer.push(total > 0);
    }
    Ok(out)
}

/// OuMv through the union volume of cubes of side `N` in `ℝ^{2k−1}`.
///
/// Cubes at the corners `{0,N}^{2k−1} ∖ {N}^{2k−1}` cover everything around
/// the non-negative orthant, tuples add cubes at the skyline corners and a
/// query adds blockers for `j' ∉ U^(i)`. Paired coordinates are mirrored as
/// `(a, N+1−a)` so that no tuple or blocker cube is flat inside the orthant. With `V_j` the volume after adding
/// the probe `(N, …, N, j)`, the slab `a_k = j < N` meets the query product
/// exactly when `V_j − V_{j−1} ≠ V_{j+1} − V_j`; the slab `a_k = N` is checked
/// directly.
pub fn red_oumvk_klee<T: ReplayTarget<Answer = Ratio<i128>>>(inst: &OuMvInstance, target: &mut T) -> Result<Outcome<Vec<bool>>> {
    require_k(inst, 2)?;
    let (k, n) = (inst.k, inst.n);
    let s = tuple_scale(n);
    let side = n as i64 * s;
    let dims = 2 * k - 1;
    let mut initial = Vec::new();
    for mask in 0..(1usize << dims) - 1 {
        let raw: Vec<i64> = (0..dims).map(|ax| if mask >> ax & 1 == 1 { side } else { 0 }).collect();
        initial.push(to_point(&raw, s)?);
    }
    for t in &inst.m {
        initial.push(to_point(&tuple_corner(t, n, n + 1), s)?);
    }
    let mut ops = Vec::new();
    for u in &inst.queries {
        let blockers = blocker_corners(k, n, n + 1, u, side).into_iter().map(|r| to_point(&r, s)).collect::<Result<Vec<_>>>()?;
        ops.extend(blockers.iter().cloned().map(ReplayOp::Insert));
        ops.push(ReplayOp::Query);
        for j in 1..=n {
            let mut raw = vec![side; dims];
            raw[dims - 1] = j as i64 * s;
            let probe = to_point(&raw, s)?;
            ops.push(ReplayOp::Insert(probe.clone()));
            ops.push(ReplayOp::Query);
            ops.push(ReplayOp::Delete(probe));
        }
        ops.extend(blockers.into_iter().map(ReplayOp::Delete));
    }
    let mut out = Outcome::new(Vec::new());
    out.updates = ops.iter().filter(|op| !matches!(op, ReplayOp::Query)).count() as u64;
    out.queries = ops.len() as u64 - out.updates;
    out.builds += 1;
    let volumes = target.replay(&initial, &ops)?;
    if volumes.len() != inst.queries.len() * (n + 1) {
        return Err(Error::InvalidArgument(format!("target answered {} of {} queries", volumes.len(), out.queries)));
    }
    for (u, v) in inst.queries.iter().zip(volumes.chunks(n + 1)) {
        let nonempty = |j: usize| {
            if j < n {
                v[j] - v[j - 1] != v[j + 1] - v[j]
            } else {
                count_prefix_product(inst, u, |x| x == n) > 0
            }
        };
        out.answer.push(u[k - 1].iter().any(|&j| nonempty(j)));
    }
    Ok(out)
}

/// OuMv through the minimum halfspace containment count over `M`.
///
/// For each `j ∈ U^(i)` the query inserts `x_i < j − ½` and `x_i > j + ½`, so
/// a tuple lies in `Σ|U^(i)|` halfspaces minus one per coordinate that hits
/// its `U^(i)`. The product meets `M` iff the minimum is `Σ(|U^(i)| − 1)`.
pub fn red_oumvk_halfspace<T: HalfspaceTarget>(inst: &OuMvInstance, target: &mut T) -> Result<Outcome<Vec<bool>>> {
    require_k(inst, 1)?;
    let k = inst.k;
    let mut out = Outcome::new(Vec::new());
    if inst.m.is_empty() {
        out.answer = vec![false; inst.queries.len()];
        return Ok(out);
    }
    let points: Vec<Vec<i64>> = inst.m.iter().map(|t| t.iter().map(|&a| 2 * a as i64).collect()).collect();
    target.build(k, 2, &points)?;
    out.builds += 1;
    for (q, u) in inst.queries.iter().enumerate() {
        let before = target.fingerprint();
        let mut inserted = Vec::new();
        for (i, ui) in u.iter().enumerate() {
            for &j in ui {
                let mut e = vec![0; k];
                e[i] = 1;
                let below = Halfspace::new(e.clone(), ScaledInt::new(2 * j as i64 - 1, 2)?, true);
                e[i] = -1;
                let above = Halfspace::new(e, ScaledInt::new(-(2 * j as i64 + 1), 2)?, true);
                for h in [below, above] {
                    target.insert_halfspace(h.clone())?;
                    inserted.push(h);
                    out.updates += 1;
                }
            }
        }
        out.queries += 1;
        let min = target.query_min()? as i64;
        let expect: i64 = u.iter().map(|ui| ui.len() as i64 - 1).sum();
        out.answer.push(min == expect);
        for h in &inserted {
            target.delete_halfspace(h)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), q)?;
    }
    Ok(out)
}

/// Hypergraph vertex of coordinate value `a` (1-based) on axis `i` (0-based); vertex 0 is `s`.
pub fn hyperclique_vertex(n: usize, a: usize, i: usize) -> usize {
    1 + i * n + (a - 1)
}

/// Vertex count `1 + kN` of the hypergraph built for an instance.
pub fn hyperclique_size(inst: &OuMvInstance) -> usize {
    1 + inst.k * inst.n
}

/// OuMv through detecting a `(k+1)`-hyperclique through `s` in a `k`-uniform hypergraph.
///
/// Tuples of `M` are static hyperedges. A query adds `{s} ∪ {(a_t, t) : t ∈ T}`
/// for every `(k−1)`-subset `T` of the axes and every choice `a_t ∈ U^(t)`,
/// asks about `s` and removes them again. The solver comes from
/// `make(k, 1 + kN, 0)`.
pub fn red_oumvk_hyperclique<H, F>(inst: &OuMvInstance, make: F) -> Result<(Outcome<Vec<bool>>, H)>
where
    H: HypercliqueSolver,
    F: FnOnce(usize, usize, usize) -> Result<H>,
{
    require_k(inst, 2)?;
    let (k, n) = (inst.k, inst.n);
    let mut solver = make(k, hyperclique_size(inst), 0)?;
    let mut out = Outcome::new(Vec::new());
    out.builds += 1;
    for t in &inst.m {
        let e: Vec<usize> = t.iter().enumerate().map(|(i, &a)| hyperclique_vertex(n, a, i)).collect();
        solver.insert_edge(&e)?;
    }
    for u in &inst.queries {
        let mut edges = Vec::new();
        for skip in 0..k {
            let axes: Vec<usize> = (0..k).filter(|&i| i != skip).collect();
            let mut partial = vec![vec![0usize]];
            for &i in &axes {
                partial = partial
                    .into_iter()
                    .flat_map(|e| u[i].iter().map(move |&a| {
                        let mut e = e.clone();
                        e.push(hyperclique_vertex(n, a, i));
                        e
                    }))
                    .collect();
            }
            edges.extend(partial);
        }
        for e in &edges {
            solver.insert_edge(e)?;
            out.updates += 1;
        }
        out.queries += 1;
        out.answer.push(solver.query_s());
        for e in &edges {
            solver.delete_edge(e)?;
            out.updates += 1;
        }
    }
    Ok((out, solver))
}

/// Order-`k` tensor of side `N` with ones at the tuples of `M`.
pub fn indicator_tensor(inst: &OuMvInstance) -> Result<Tensor> {
    let mut t = Tensor::zeros(inst.k, inst.n)?;
    for x in &inst.m {
        t.set(x, 1)?;
    }
    Ok(t)
}

/// OuMv through axis increments with maximum queries.
///
/// Query `f` (1-based) increments the slabs `x ∈ U^(i)` on every axis, asks
/// for the maximum, then increments the remaining slabs. Every entry gains
/// `k` per query, so before the `f`-th maximum an entry of `M` inside the
/// product reads `k + 1 + (f−1)k` and nothing else reaches it.
pub fn red_oumvk_erickson<E, F>(inst: &OuMvInstance, make: F) -> Result<(Outcome<Vec<bool>>, E)>
where
    E: EricksonSolver,
    F: FnOnce(Tensor) -> Result<E>,
{
    require_k(inst, 1)?;
    let (k, n) = (inst.k, inst.n);
    let mut solver = make(indicator_tensor(inst)?)?;
    let mut out = Outcome::new(Vec::new());
    out.builds += 1;
    for (f, u) in inst.queries.iter().enumerate() {
        for (i, ui) in u.iter().enumerate() {
            for &x in ui {
                solver.increment_axis(i + 1, x)?;
                out.updates += 1;
            }
        }
        out.queries += 1;
        let threshold = (k + 1 + f * k) as i64;
        out.answer.push(solver.query_max() == threshold);
        for (i, ui) in u.iter().enumerate() {
            for x in (1..=n).filter(|x| !ui.contains(x)) {
                solver.increment_axis(i + 1, x)?;
                out.updates += 1;
            }
        }
    }
    Ok((out, solver))
}

/// Exact integer `d`-th root of `n`.
fn exact_root(n: usize, d: u32) -> Option<usize> {
    let guess = (n as f64).powf(1.0 / d as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|b| b.checked_pow(d) == Some(n))
}

/// Tensor for the zero-prefix-sum construction of an order-`k` instance.
///
/// With `d = k−1`, `B = N^{1/d}` and `f(y) = 1 + Σ_i (y_i−1)B^i`, block `a ∈ [N]^d`
/// of side `B+1` holds the `d`-fold difference of the tensor `S_a` that
/// carries `a_k` at `f^{−1}(a_k)` for every `(a, a_k) ∈ M`. Prefix sums then
/// read `P[(B+1)(a−1) + y] = S_a[y]`. Returns the tensor and `B`.
pub fn langerman_tensor(inst: &OuMvInstance) -> Result<(Tensor, usize)> {
    require_k(inst, 2)?;
    let (k, n) = (inst.k, inst.n);
    let d = k - 1;
    let b = exact_root(n, d as u32)
        .ok_or_else(|| Error::InvalidArgument(format!("N = {n} is not a perfect {d}-th power")))?;
    let side = (b + 1) * n;
    let mut t = Tensor::zeros(d, side)?;
    for tuple in &inst.m {
        let last = tuple[d];
        let y = f_inverse(last, b, d);
        for mask in 0..1usize << d {
            let x: Vec<usize> = (0..d).map(|i| (b + 1) * (tuple[i] - 1) + y[i] + (mask >> i & 1)).collect();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            let v = t.get(&x)? + sign * last as i64;
            t.set(&x, v)?;
        }
    }
    if crate::debug_checks() || cfg!(debug_assertions) {
        check_langerman_identity(inst, &t, b)?;
    }
    Ok((t, b))
}

/// `f^{−1}(v)`: the base-`B` digits of `v − 1`, each plus one.
fn f_inverse(v: usize, b: usize, d: usize) -> Vec<usize> {
    let mut rest = v - 1;
    (0..d)
        .map(|_| {
            let digit = rest % b;
            rest /= b;
            digit + 1
        })
        .collect()
}

/// Every prefix sum of `t` equals the matching entry of its block's `S_a`.
fn check_langerman_identity(inst: &OuMvInstance, t: &Tensor, b: usize) -> Result<()> {
    let d = inst.k - 1;
    let p = t.prefix_sums()?;
    for off in 0..p.len() {
        let x = p.index_of(off);
        let a: Vec<usize> = x.iter().map(|&xi| (xi - 1) / (b + 1) + 1).collect();
        let y: Vec<usize> = x.iter().map(|&xi| (xi - 1) % (b + 1) + 1).collect();
        let expect = if y.iter().all(|&yi| yi <= b) {
            let f = 1 + y.iter().rev().fold(0, |acc, &yi| acc * b + (yi - 1));
            let mut tuple = a.clone();
            tuple.push(f);
            if inst.m.contains(&tuple) { f as i64 } else { 0 }
        } else {
            0
        };
        if p.values()[off] != expect {
            return Err(Error::InvalidArgument(format!("prefix sum at {x:?} is {}, expected {expect}", p.values()[off])));
        }
    }
    debug_assert_eq!(d, t.order());
    Ok(())
}

/// OuMv through zero prefix sums in a `(k−1)`-dimensional tensor.
///
/// A query adds `1000N` at the start of every block row `a_i = j ∉ U^(i)` and
/// `−1000N` at its end, so only blocks inside the product keep their prefix
/// sums. For each `j ∈ U^(k)` it then adds `−j` at the origin and asks
/// whether some prefix sum is zero, which happens exactly at a block `a` with
/// `(a, j) ∈ M`. Every change is reverted before the next query.
pub fn red_oumvk_langerman<T: LangermanTarget>(inst: &OuMvInstance, target: &mut T) -> Result<Outcome<Vec<bool>>> {
    let (t, b) = langerman_tensor(inst)?;
    let (d, n) = (inst.k - 1, inst.n);
    let big = 1000 * n as i64;
    let origin = vec![1; d];
    let mut out = Outcome::new(Vec::new());
    target.build(t)?;
    out.builds += 1;
    for (q, u) in inst.queries.iter().enumerate() {
        let before = target.fingerprint();
        let mut blockers = Vec::new();
        for (i, ui) in u.iter().enumerate().take(d) {
            for j in (1..=n).filter(|j| !ui.contains(j)) {
                let mut start = origin.clone();
                start[i] = (j - 1) * (b + 1) + 1;
                let mut end = origin.clone();
                end[i] = j * (b + 1);
                blockers.push((start, big));
                blockers.push((end, -big));
            }
        }
        for (x, delta) in &blockers {
            target.add(x, *delta)?;
            out.updates += 1;
        }
        let mut hit = false;
        for &j in &u[d] {
            target.add(&origin, -(j as i64))?;
            out.queries += 1;
            hit |= target.query()?;
            target.add(&origin, j as i64)?;
            out.updates += 2;
        }
        out.answer.push(hit);
        for (x, delta) in blockers.iter().rev() {
            target.add(x, -delta)?;
            out.updates += 1;
        }
        check_restored(before, target.fingerprint(), q)?;
    }
    Ok(out)
}
