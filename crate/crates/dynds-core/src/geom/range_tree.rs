//! Static-universe multi-dimensional range tree with activation flags.
//!
//! Each non-final axis is an iterative segment tree over the entries sorted by
//! that axis; every internal node owns a tree over the remaining axes. The
//! final axis keeps a Fenwick tree (count, emptiness) or a max segment tree.
//! Leaves of non-final axes hold a single entry and are checked directly.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::geom::{BoxD, PointD};

/// Library constant `c` in the per-query visit bound `c·(log₂u + 1)^d`, valid for `d ≤ 4`.
pub const VISIT_CONSTANT: f64 = 16.0;

/// Aggregate maintained by a [`RangeTree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AggregateMode {
    Count,
    Max,
    Emptiness,
}

/// Best `(value, witness)`: higher value wins, ties go to the smaller witness.
pub type MaxEntry = Option<(i64, u32)>;

pub(crate) fn better(a: MaxEntry, b: MaxEntry) -> MaxEntry {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if x.0 > y.0 || (x.0 == y.0 && x.1 < y.1) {
                Some(x)
            } else {
                Some(y)
            }
        }
    }
}

/// Answer of [`RangeTree::query`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryAnswer {
    Count(u64),
    /// `(value, witness entry key)` or `None` for an empty range.
    Max(Option<(i64, usize)>),
    Empty(bool),
}

/// Node-touch counter; relaxed atomics keep queries `&self` and `Sync`.
#[derive(Debug, Default)]
pub struct VisitCounter(AtomicU64);

impl VisitCounter {
    pub fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

impl Clone for VisitCounter {
    fn clone(&self) -> Self {
        Self(AtomicU64::new(self.get()))
    }
}

#[derive(Clone, Debug)]
struct Level {
    axis: usize,
    keys: Vec<(i64, u32)>,
    body: Body,
}

#[derive(Clone, Debug)]
enum Body {
    /// Sub-levels of internal segment-tree nodes `1..n`.
    Inner(Vec<Option<Box<Level>>>),
    /// Fenwick tree of active flags, 1-based.
    Count(Vec<u32>),
    /// Iterative max segment tree, leaves at `n..2n`.
    Max(Vec<MaxEntry>),
}

struct Ctx<'a> {
    dim: usize,
    coords: &'a [i64],
    values: &'a [i64],
    active: &'a [bool],
}

impl Ctx<'_> {
    fn coord(&self, id: u32, axis: usize) -> i64 {
        self.coords[id as usize * self.dim + axis]
    }
}

#[derive(Default)]
struct Acc {
    count: u64,
    max: MaxEntry,
    visits: u64,
    stop_at_first: bool,
}

impl Acc {
    fn done(&self) -> bool {
        self.stop_at_first && self.count > 0
    }
}

impl Level {
    fn build(ctx: &Ctx, mode: AggregateMode, axis: usize, ids: &[u32], copies: &mut u64) -> Level {
        let keys: Vec<(i64, u32)> = ids.iter().map(|&id| (ctx.coord(id, axis), id)).collect();
        let n = keys.len();
        *copies += n as u64;
        let body = if axis + 1 == ctx.dim {
            match mode {
                AggregateMode::Max => Body::Max(vec![None; 2 * n]),
                _ => Body::Count(vec![0; n + 1]),
            }
        } else {
            let next = axis + 1;
            let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
            for i in (1..n).rev() {
                let left = Self::node_ids(&lists, &keys, 2 * i);
                let right = Self::node_ids(&lists, &keys, 2 * i + 1);
                lists[i] = merge_by_axis(ctx, next, &left, &right);
            }
            let mut children: Vec<Option<Box<Level>>> = Vec::with_capacity(n);
            children.push(None);
            for list in lists.iter().skip(1) {
                children.push(Some(Box::new(Level::build(ctx, mode, next, list, copies))));
            }
            Body::Inner(children)
        };
        Level { axis, keys, body }
    }

    fn node_ids(lists: &[Vec<u32>], keys: &[(i64, u32)], node: usize) -> Vec<u32> {
        let n = keys.len();
        if node >= n {
            vec![keys[node - n].1]
        } else {
            lists[node].clone()
        }
    }

    fn query(&self, ctx: &Ctx, ranges: &[(i64, i64)], acc: &mut Acc) {
        let (lo, hi) = ranges[self.axis];
        let a = self.keys.partition_point(|k| k.0 < lo);
        let b = self.keys.partition_point(|k| k.0 <= hi);
        if a >= b {
            return;
        }
        let n = self.keys.len();
        match &self.body {
            Body::Inner(children) => {
                let (mut l, mut r) = (a + n, b + n);
                while l < r && !acc.done() {
                    if l & 1 == 1 {
                        self.visit_node(ctx, children, l, ranges, acc);
                        l += 1;
                    }
                    if r & 1 == 1 {
                        r -= 1;
                        self.visit_node(ctx, children, r, ranges, acc);
                    }
                    l >>= 1;
                    r >>= 1;
                }
            }
            Body::Count(fw) => {
                let hi_sum = fenwick_prefix(fw, b, &mut acc.visits);
                let lo_sum = fenwick_prefix(fw, a, &mut acc.visits);
                acc.count += u64::from(hi_sum - lo_sum);
            }
            Body::Max(seg) => {
                let (mut l, mut r) = (a + n, b + n);
                let mut best = None;
                while l < r {
                    if l & 1 == 1 {
                        acc.visits += 1;
                        best = better(best, seg[l]);
                        l += 1;
                    }
                    if r & 1 == 1 {
                        r -= 1;
                        acc.visits += 1;
                        best = better(best, seg[r]);
                    }
                    l >>= 1;
                    r >>= 1;
                }
                acc.max = better(acc.max, best);
            }
        }
    }

    fn visit_node(&self, ctx: &Ctx, children: &[Option<Box<Level>>], node: usize, ranges: &[(i64, i64)], acc: &mut Acc) {
        acc.visits += 1;
        let n = self.keys.len();
        if node >= n {
            let id = self.keys[node - n].1;
            if !ctx.active[id as usize] {
                return;
            }
            let inside = (self.axis + 1..ctx.dim).all(|ax| {
                let c = ctx.coord(id, ax);
                ranges[ax].0 <= c && c <= ranges[ax].1
            });
            if inside {
                acc.count += 1;
                acc.max = better(acc.max, Some((ctx.values[id as usize], id)));
            }
        } else if let Some(child) = &children[node] {
            child.query(ctx, ranges, acc);
        }
    }

    fn toggle(&mut self, ctx: &Ctx, id: u32, on: bool, visits: &mut u64) {
        let key = (ctx.coord(id, self.axis), id);
        let pos = self.keys.binary_search(&key).expect("entry present in every level on its path");
        let n = self.keys.len();
        match &mut self.body {
            Body::Inner(children) => {
                *visits += 1;
                let mut node = (pos + n) >> 1;
                while node >= 1 {
                    *visits += 1;
                    if let Some(child) = children[node].as_mut() {
                        child.toggle(ctx, id, on, visits);
                    }
                    node >>= 1;
                }
            }
            Body::Count(fw) => {
                let mut i = pos + 1;
                while i <= n {
                    *visits += 1;
                    if on {
                        fw[i] += 1;
                    } else {
                        fw[i] -= 1;
                    }
                    i += i & i.wrapping_neg();
                }
            }
            Body::Max(seg) => {
                let mut node = pos + n;
                seg[node] = if on { Some((ctx.values[id as usize], id)) } else { None };
                *visits += 1;
                node >>= 1;
                while node >= 1 {
                    *visits += 1;
                    seg[node] = better(seg[2 * node], seg[2 * node + 1]);
                    node >>= 1;
                }
            }
        }
    }
}

fn fenwick_prefix(fw: &[u32], mut i: usize, visits: &mut u64) -> u32 {
    let mut s = 0;
    while i > 0 {
        *visits += 1;
        s += fw[i];
        i &= i - 1;
    }
    s
}

fn merge_by_axis(ctx: &Ctx, axis: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if (ctx.coord(a[i], axis), a[i]) <= (ctx.coord(b[j], axis), b[j]) {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Multi-dimensional range tree over a universe declared at build time.
///
/// All entries start inactive. Entry keys are universe indices.
#[derive(Clone, Debug)]
pub struct RangeTree {
    dim: usize,
    scale: i64,
    mode: AggregateMode,
    coords: Vec<i64>,
    values: Vec<i64>,
    active: Vec<bool>,
    root: Level,
    build_cost: u64,
    visits: VisitCounter,
}

impl RangeTree {
    /// Build over `(point, value)` entries. An empty universe yields a tree
    /// that accepts boxes of any dimension and always answers empty.
    pub fn build(universe: &[(PointD, i64)], mode: AggregateMode) -> Result<Self> {
        let Some((first, _)) = universe.first() else {
            return Self::from_raw(0, 1, Vec::new(), Vec::new(), mode);
        };
        let (dim, scale) = (first.dim(), first.scale());
        let mut coords = Vec::with_capacity(universe.len() * dim);
        let mut values = Vec::with_capacity(universe.len());
        for (p, v) in universe {
            p.check_compatible(dim, scale)?;
            coords.extend(p.coords().iter().map(|c| c.raw()));
            values.push(*v);
        }
        Self::from_raw(dim, scale, coords, values, mode)
    }

    /// Build from entry-major raw coordinates (`coords.len() == dim · values.len()`).
    pub fn from_raw(dim: usize, scale: i64, coords: Vec<i64>, values: Vec<i64>, mode: AggregateMode) -> Result<Self> {
        let n = values.len();
        if coords.len() != n * dim {
            return Err(Error::InvalidArgument(format!("{} coordinates for {n} entries of dimension {dim}", coords.len())));
        }
        if n > u32::MAX as usize {
            return Err(Error::CapacityExceeded(u32::MAX as usize));
        }
        if scale <= 0 {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
        }
        let active = vec![false; n];
        let mut build_cost = 0;
        let root = if dim == 0 {
            Level { axis: 0, keys: Vec::new(), body: Body::Count(vec![0]) }
        } else {
            let ctx = Ctx { dim, coords: &coords, values: &values, active: &active };
            let mut ids: Vec<u32> = (0..n as u32).collect();
            ids.sort_by_key(|&id| (ctx.coord(id, 0), id));
            Level::build(&ctx, mode, 0, &ids, &mut build_cost)
        };
        Ok(Self { dim, scale, mode, coords, values, active, root, build_cost, visits: VisitCounter::default() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn mode(&self) -> AggregateMode {
        self.mode
    }

    /// Universe size.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of key copies made while building, a proxy for build work.
    pub fn build_cost(&self) -> u64 {
        self.build_cost
    }

    pub fn visits(&self) -> u64 {
        self.visits.get()
    }

    pub fn reset_visits(&self) {
        self.visits.reset();
    }

    pub fn is_active(&self, key: usize) -> bool {
        self.active.get(key).copied().unwrap_or(false)
    }

    pub fn value(&self, key: usize) -> i64 {
        self.values[key]
    }

    pub fn raw_point(&self, key: usize) -> &[i64] {
        &self.coords[key * self.dim..(key + 1) * self.dim]
    }

    pub fn point(&self, key: usize) -> PointD {
        PointD::from_raw(self.raw_point(key), self.scale).expect("stored points are valid")
    }

    /// Set the activation flag of `key`; repeated calls with the same flag are no-ops.
    pub fn toggle(&mut self, key: usize, active: bool) -> Result<()> {
        if key >= self.values.len() {
            return Err(Error::UnknownEntry(key as u64));
        }
        if self.active[key] == active {
            return Ok(());
        }
        self.active[key] = active;
        let ctx = Ctx { dim: self.dim, coords: &self.coords, values: &self.values, active: &self.active };
        let mut visits = 0;
        self.root.toggle(&ctx, key as u32, active, &mut visits);
        self.visits.add(visits);
        Ok(())
    }

    fn run(&self, ranges: &[(i64, i64)], stop_at_first: bool) -> Acc {
        let mut acc = Acc { stop_at_first, ..Acc::default() };
        if self.dim == 0 || ranges.iter().any(|&(l, h)| l > h) {
            return acc;
        }
        let ctx = Ctx { dim: self.dim, coords: &self.coords, values: &self.values, active: &self.active };
        self.root.query(&ctx, ranges, &mut acc);
        self.visits.add(acc.visits);
        acc
    }

    fn check_mode(&self, want_max: bool) -> Result<()> {
        if want_max != (self.mode == AggregateMode::Max) {
            return Err(Error::InvalidArgument(format!("query not supported in {:?} mode", self.mode)));
        }
        Ok(())
    }

    fn ranges(&self, b: &BoxD) -> Result<Vec<(i64, i64)>> {
        if self.dim == 0 {
            return Ok(vec![(1, 0)]);
        }
        b.raw_ranges(self.dim, self.scale)
    }

    /// Active entries whose raw coordinates lie in the inclusive ranges.
    pub fn count_raw(&self, ranges: &[(i64, i64)]) -> Result<u64> {
        self.check_mode(false)?;
        Ok(self.run(ranges, false).count)
    }

    /// Maximum `(value, key)` over active entries in the inclusive ranges.
    pub fn max_raw(&self, ranges: &[(i64, i64)]) -> Result<MaxEntry> {
        self.check_mode(true)?;
        Ok(self.run(ranges, false).max)
    }

    /// True if no active entry lies in the inclusive ranges.
    pub fn empty_raw(&self, ranges: &[(i64, i64)]) -> bool {
        match self.mode {
            AggregateMode::Max => self.run(ranges, false).max.is_none(),
            _ => self.run(ranges, true).count == 0,
        }
    }

    pub fn count(&self, b: &BoxD) -> Result<u64> {
        let r = self.ranges(b)?;
        self.count_raw(&r)
    }

    pub fn max(&self, b: &BoxD) -> Result<Option<(i64, usize)>> {
        let r = self.ranges(b)?;
        Ok(self.max_raw(&r)?.map(|(v, id)| (v, id as usize)))
    }

    pub fn is_empty_in(&self, b: &BoxD) -> Result<bool> {
        let r = self.ranges(b)?;
        Ok(self.empty_raw(&r))
    }

    /// Mode-dependent query.
    pub fn query(&self, b: &BoxD) -> Result<QueryAnswer> {
        Ok(match self.mode {
            AggregateMode::Count => QueryAnswer::Count(self.count(b)?),
            AggregateMode::Max => QueryAnswer::Max(self.max(b)?),
            AggregateMode::Emptiness => QueryAnswer::Empty(self.is_empty_in(b)?),
        })
    }

    /// Per-query visit bound `c·(log₂u + 1)^d`.
    pub fn visit_bound(&self) -> f64 {
        let u = self.len().max(1) as f64;
        VISIT_CONSTANT * (u.log2() + 1.0).powi(self.dim as i32)
    }
}
