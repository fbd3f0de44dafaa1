//! Target-problem interfaces used by the reductions, with adapters over
//! brute-force oracles and over the real structures.

use std::collections::{HashMap, HashSet};
use std::hash::{DefaultHasher, Hash, Hasher};

use num_rational::Ratio;

use super::graph::{StReachOracle, SubConnOracle};
use crate::colors::{color_count_oracle, docs_oracle, CommonColorsDS, DynColorCountDS, SymbolIndex};
use crate::error::{Error, Result};
use crate::geom::{BoxD, PointD, ScaledInt};
use crate::geom_dyn::{
    klee_unit_oracle, skyline_oracle, BlockProblem, Halfspace, HalfspaceSystem, OracleBlock, SemiOnlineEngine,
    SemiOnlineOp, Skyline3dBlock,
};
use crate::range_mode::{mode_oracle, DynRangeModeDS, SequenceAdapter, UpdateKind, VecSequence};
use crate::tensor_ds::{langerman_oracle, LangermanDS, Tensor};

fn fingerprint_of(value: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

fn not_built() -> Error {
    Error::InvalidArgument("target used before build".into())
}

/// Array under middle inserts and deletes answering a range statistic (mode or minority).
pub trait SequenceTarget {
    fn build(&mut self, values: &[i64], capacity: usize) -> Result<()>;

    /// Insert so that `value` becomes element `index` (1-based).
    fn insert(&mut self, index: usize, value: i64) -> Result<()>;

    fn delete(&mut self, index: usize) -> Result<()>;

    /// `(value, frequency)` of elements `l..=r`.
    fn query(&mut self, l: usize, r: usize) -> Result<Option<(i64, usize)>>;

    /// Hash of the observable state, for oracle adapters.
    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Scanning sequence answering mode or minority.
#[derive(Clone, Debug, Default)]
pub struct SeqScan {
    seq: VecSequence,
    minority: bool,
}

impl SeqScan {
    pub fn mode() -> Self {
        Self::default()
    }

    pub fn minority() -> Self {
        Self { minority: true, ..Self::default() }
    }
}

impl SequenceTarget for SeqScan {
    fn build(&mut self, values: &[i64], _capacity: usize) -> Result<()> {
        self.seq = VecSequence::new(values.to_vec());
        Ok(())
    }

    fn insert(&mut self, index: usize, value: i64) -> Result<()> {
        if !self.seq.insert(index, value) {
            return Err(Error::InvalidArgument(format!("insert position {index} out of range")));
        }
        Ok(())
    }

    fn delete(&mut self, index: usize) -> Result<()> {
        self.seq.delete(index).map(|_| ()).ok_or_else(|| Error::Absent(format!("position {index}")))
    }

    fn query(&mut self, l: usize, r: usize) -> Result<Option<(i64, usize)>> {
        Ok(if self.minority { self.seq.minority(l, r) } else { self.seq.mode(l, r) })
    }

    fn fingerprint(&self) -> Option<u64> {
        Some(fingerprint_of(&self.seq.values))
    }
}

/// Dynamic sequence range mode structure.
#[derive(Default)]
pub struct SeqMode {
    inner: Option<SequenceAdapter>,
}

impl SeqMode {
    pub fn visits(&self) -> u64 {
        self.inner.as_ref().map_or(0, SequenceAdapter::visits)
    }
}

impl SequenceTarget for SeqMode {
    fn build(&mut self, values: &[i64], capacity: usize) -> Result<()> {
        self.inner = Some(SequenceAdapter::from_values(capacity.max(1), None, values)?);
        Ok(())
    }

    fn insert(&mut self, index: usize, value: i64) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.insert(index, value)
    }

    fn delete(&mut self, index: usize) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.delete(index).map(|_| ())
    }

    fn query(&mut self, l: usize, r: usize) -> Result<Option<(i64, usize)>> {
        self.inner.as_mut().ok_or_else(not_built)?.query(l, r).map(Some)
    }
}

/// Static batch of orthogonal range mode queries.
pub trait BatchModeTarget {
    fn solve(
        &mut self,
        d: usize,
        points: &[(Vec<i64>, i64)],
        queries: &[Vec<(i64, i64)>],
    ) -> Result<Vec<Option<(i64, usize)>>>;
}

/// Scans the point set per query.
#[derive(Clone, Debug, Default)]
pub struct BatchScan;

impl BatchModeTarget for BatchScan {
    fn solve(
        &mut self,
        _d: usize,
        points: &[(Vec<i64>, i64)],
        queries: &[Vec<(i64, i64)>],
    ) -> Result<Vec<Option<(i64, usize)>>> {
        let pts: Vec<(PointD, i64)> = points.iter().map(|(c, l)| (PointD::ints(c), *l)).collect();
        queries.iter().map(|q| Ok(mode_oracle(&pts, &BoxD::closed_raw(q, 1)?))).collect()
    }
}

/// Bulk-loads the dynamic range mode structure and queries it.
#[derive(Clone, Debug, Default)]
pub struct BatchDynMode;

impl BatchModeTarget for BatchDynMode {
    fn solve(
        &mut self,
        d: usize,
        points: &[(Vec<i64>, i64)],
        queries: &[Vec<(i64, i64)>],
    ) -> Result<Vec<Option<(i64, usize)>>> {
        let mut ds = DynRangeModeDS::from_points(d, points.len().max(1), None, 1, points)?;
        queries.iter().map(|q| ds.query_raw(q)).collect()
    }
}

/// Labelled point set under inserts and deletes answering orthogonal range mode.
pub trait DynModeTarget {
    fn build(&mut self, d: usize, capacity: usize, points: &[(Vec<i64>, i64)]) -> Result<()>;

    fn insert(&mut self, coords: &[i64], label: i64) -> Result<()>;

    fn delete(&mut self, coords: &[i64], label: i64) -> Result<()>;

    fn query(&mut self, ranges: &[(i64, i64)]) -> Result<Option<(i64, usize)>>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Point list scanned per query.
#[derive(Clone, Debug, Default)]
pub struct DynModeScan {
    points: Vec<(PointD, i64)>,
}

impl DynModeTarget for DynModeScan {
    fn build(&mut self, _d: usize, _capacity: usize, points: &[(Vec<i64>, i64)]) -> Result<()> {
        self.points = points.iter().map(|(c, l)| (PointD::ints(c), *l)).collect();
        Ok(())
    }

    fn insert(&mut self, coords: &[i64], label: i64) -> Result<()> {
        self.points.push((PointD::ints(coords), label));
        Ok(())
    }

    fn delete(&mut self, coords: &[i64], label: i64) -> Result<()> {
        let p = PointD::ints(coords);
        let at = self
            .points
            .iter()
            .rposition(|(q, l)| *l == label && q.raw_coords() == p.raw_coords())
            .ok_or_else(|| Error::Absent(format!("point {coords:?} with label {label}")))?;
        self.points.remove(at);
        Ok(())
    }

    fn query(&mut self, ranges: &[(i64, i64)]) -> Result<Option<(i64, usize)>> {
        Ok(mode_oracle(&self.points, &BoxD::closed_raw(ranges, 1)?))
    }

    fn fingerprint(&self) -> Option<u64> {
        let mut items: Vec<(Vec<i64>, i64)> = self.points.iter().map(|(p, l)| (p.raw_coords(), *l)).collect();
        items.sort_unstable();
        Some(fingerprint_of(&items))
    }
}

/// Dynamic d-dimensional range mode structure.
#[derive(Default)]
pub struct DynModeReal {
    inner: Option<DynRangeModeDS>,
}

impl DynModeTarget for DynModeReal {
    fn build(&mut self, d: usize, capacity: usize, points: &[(Vec<i64>, i64)]) -> Result<()> {
        self.inner = Some(DynRangeModeDS::from_points(d, capacity.max(1), None, 1, points)?);
        Ok(())
    }

    fn insert(&mut self, coords: &[i64], label: i64) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.update_raw(coords, label, UpdateKind::Insert)
    }

    fn delete(&mut self, coords: &[i64], label: i64) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.update_raw(coords, label, UpdateKind::Delete)
    }

    fn query(&mut self, ranges: &[(i64, i64)]) -> Result<Option<(i64, usize)>> {
        self.inner.as_mut().ok_or_else(not_built)?.query_raw(ranges)
    }
}

/// Static undirected graph with a dynamic active vertex set; s–t connectivity queries.
pub trait SubConnTarget {
    /// All vertices start active.
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()>;

    fn set_active(&mut self, v: usize, on: bool) -> Result<()>;

    fn query(&mut self) -> Result<bool>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Breadth-first search per query.
#[derive(Clone, Debug, Default)]
pub struct SubConnScan {
    inner: Option<SubConnOracle>,
}

impl SubConnTarget for SubConnScan {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        self.inner = Some(SubConnOracle::new(n, edges, s, t)?);
        Ok(())
    }

    fn set_active(&mut self, v: usize, on: bool) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.set_active(v, on)
    }

    fn query(&mut self) -> Result<bool> {
        Ok(self.inner.as_mut().ok_or_else(not_built)?.query())
    }

    fn fingerprint(&self) -> Option<u64> {
        self.inner.as_ref().map(|g| fingerprint_of(&g.active()))
    }
}

/// Union-find over the active edges, recomputed per query.
#[derive(Clone, Debug, Default)]
pub struct SubConnUnionFind {
    n: usize,
    edges: Vec<(usize, usize)>,
    active: Vec<bool>,
    ends: (usize, usize),
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl SubConnTarget for SubConnUnionFind {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        if s >= n || t >= n || edges.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidArgument("vertex outside the graph".into()));
        }
        *self = Self { n, edges: edges.to_vec(), active: vec![true; n], ends: (s, t) };
        Ok(())
    }

    fn set_active(&mut self, v: usize, on: bool) -> Result<()> {
        *self.active.get_mut(v).ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {v}")))? = on;
        Ok(())
    }

    fn query(&mut self) -> Result<bool> {
        let (s, t) = self.ends;
        if !self.active[s] || !self.active[t] {
            return Ok(false);
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        for &(a, b) in &self.edges {
            if self.active[a] && self.active[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        Ok(find(&mut parent, s) == find(&mut parent, t))
    }

    fn fingerprint(&self) -> Option<u64> {
        Some(fingerprint_of(&self.active))
    }
}

/// Documents switched on and off; counts on documents containing two symbols.
pub trait DocTarget {
    /// All documents start off.
    fn build(&mut self, documents: &[Vec<u32>]) -> Result<()>;

    fn set_on(&mut self, doc: usize, on: bool) -> Result<()>;

    fn query(&mut self, t1: u32, t2: u32) -> Result<u64>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Scans every document per query.
#[derive(Clone, Debug, Default)]
pub struct DocScan {
    documents: Vec<Vec<u32>>,
    on: Vec<bool>,
}

impl DocTarget for DocScan {
    fn build(&mut self, documents: &[Vec<u32>]) -> Result<()> {
        self.documents = documents.to_vec();
        self.on = vec![false; documents.len()];
        Ok(())
    }

    fn set_on(&mut self, doc: usize, on: bool) -> Result<()> {
        *self.on.get_mut(doc).ok_or_else(|| Error::InvalidArgument(format!("unknown document {doc}")))? = on;
        Ok(())
    }

    fn query(&mut self, t1: u32, t2: u32) -> Result<u64> {
        Ok(docs_oracle(&self.documents, &self.on, t1, t2))
    }

    fn fingerprint(&self) -> Option<u64> {
        Some(fingerprint_of(&self.on))
    }
}

/// Symbol index array fed to the common-colours structure; document `i` is colour `i + 1`.
#[derive(Default)]
pub struct DocCommonColors {
    index: Option<SymbolIndex>,
    ds: Option<CommonColorsDS>,
}

impl DocCommonColors {
    pub fn visits(&self) -> u64 {
        self.ds.as_ref().map_or(0, CommonColorsDS::visits)
    }
}

impl DocTarget for DocCommonColors {
    fn build(&mut self, documents: &[Vec<u32>]) -> Result<()> {
        let index = SymbolIndex::new(documents);
        self.ds = Some(CommonColorsDS::build(&index.array, &HashSet::new(), None)?);
        self.index = Some(index);
        Ok(())
    }

    fn set_on(&mut self, doc: usize, on: bool) -> Result<()> {
        let ds = self.ds.as_mut().ok_or_else(not_built)?;
        match ds.toggle(doc as i64 + 1, on) {
            Err(Error::Absent(_)) => Ok(()),
            other => other,
        }
    }

    fn query(&mut self, t1: u32, t2: u32) -> Result<u64> {
        let index = self.index.as_ref().ok_or_else(not_built)?;
        match (index.interval(t1), index.interval(t2)) {
            (Some(i1), Some(i2)) => self.ds.as_mut().ok_or_else(not_built)?.query(i1, i2),
            _ => Ok(0),
        }
    }
}

/// Coloured 2D points under inserts and deletes answering distinct colours in a rectangle.
pub trait ColorTarget {
    fn build(&mut self, points: &[([i64; 2], i64)], capacity: usize) -> Result<()>;

    fn insert(&mut self, p: [i64; 2], color: i64) -> Result<()>;

    fn delete(&mut self, p: [i64; 2], color: i64) -> Result<()>;

    fn query(&mut self, ranges: &[(i64, i64); 2]) -> Result<u64>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Point list scanned per query.
#[derive(Clone, Debug, Default)]
pub struct ColorScan {
    points: Vec<([i64; 2], i64)>,
}

impl ColorTarget for ColorScan {
    fn build(&mut self, points: &[([i64; 2], i64)], _capacity: usize) -> Result<()> {
        self.points = points.to_vec();
        Ok(())
    }

    fn insert(&mut self, p: [i64; 2], color: i64) -> Result<()> {
        self.points.push((p, color));
        Ok(())
    }

    fn delete(&mut self, p: [i64; 2], color: i64) -> Result<()> {
        let at = self
            .points
            .iter()
            .rposition(|&x| x == (p, color))
            .ok_or_else(|| Error::Absent(format!("point {p:?} with colour {color}")))?;
        self.points.remove(at);
        Ok(())
    }

    fn query(&mut self, ranges: &[(i64, i64); 2]) -> Result<u64> {
        Ok(color_count_oracle(&self.points, ranges))
    }

    fn fingerprint(&self) -> Option<u64> {
        let mut items = self.points.clone();
        items.sort_unstable();
        Some(fingerprint_of(&items))
    }
}

/// Dynamic colour counting with periodic rebuilds.
#[derive(Default)]
pub struct ColorDyn {
    inner: Option<DynColorCountDS>,
}

impl ColorTarget for ColorDyn {
    fn build(&mut self, points: &[([i64; 2], i64)], capacity: usize) -> Result<()> {
        let mut ds = DynColorCountDS::new(capacity.max(1), None)?;
        for &(p, c) in points {
            ds.update_raw(p, c, UpdateKind::Insert)?;
        }
        self.inner = Some(ds);
        Ok(())
    }

    fn insert(&mut self, p: [i64; 2], color: i64) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.update_raw(p, color, UpdateKind::Insert)
    }

    fn delete(&mut self, p: [i64; 2], color: i64) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.update_raw(p, color, UpdateKind::Delete)
    }

    fn query(&mut self, ranges: &[(i64, i64); 2]) -> Result<u64> {
        self.inner.as_mut().ok_or_else(not_built)?.query_raw(ranges)
    }
}

/// Directed graph under edge updates answering s–t reachability.
pub trait StReachTarget {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()>;

    fn insert_edge(&mut self, a: usize, b: usize) -> Result<()>;

    fn delete_edge(&mut self, a: usize, b: usize) -> Result<()>;

    fn query(&mut self) -> Result<bool>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Forward search from `s` per query.
#[derive(Clone, Debug, Default)]
pub struct StReachScan {
    inner: Option<StReachOracle>,
}

impl StReachTarget for StReachScan {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        self.inner = Some(StReachOracle::new(n, edges, s, t)?);
        Ok(())
    }

    fn insert_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.insert_edge(a, b)
    }

    fn delete_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.delete_edge(a, b)
    }

    fn query(&mut self) -> Result<bool> {
        Ok(self.inner.as_mut().ok_or_else(not_built)?.query())
    }

    fn fingerprint(&self) -> Option<u64> {
        self.inner.as_ref().map(|g| fingerprint_of(&g.edges()))
    }
}

/// Backward search from `t` over in-edges per query.
#[derive(Clone, Debug, Default)]
pub struct StReachReverse {
    into: Vec<HashSet<usize>>,
    ends: (usize, usize),
}

impl StReachTarget for StReachReverse {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        if s >= n || t >= n {
            return Err(Error::InvalidArgument(format!("s={s} or t={t} outside 0..{n}")));
        }
        *self = Self { into: vec![HashSet::new(); n], ends: (s, t) };
        for &(a, b) in edges {
            self.insert_edge(a, b)?;
        }
        Ok(())
    }

    fn insert_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.into.len();
        if a >= n || b >= n || !self.into[b].insert(a) {
            return Err(Error::InvalidArgument(format!("cannot insert edge ({a},{b})")));
        }
        Ok(())
    }

    fn delete_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if !self.into.get_mut(b).is_some_and(|s| s.remove(&a)) {
            return Err(Error::Absent(format!("edge ({a},{b})")));
        }
        Ok(())
    }

    fn query(&mut self) -> Result<bool> {
        let (s, t) = self.ends;
        let mut seen = vec![false; self.into.len()];
        let mut stack = vec![t];
        seen[t] = true;
        while let Some(u) = stack.pop() {
            if u == s {
                return Ok(true);
            }
            for &v in &self.into[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        Ok(false)
    }
}

/// One operation replayed against a point-set target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayOp {
    Insert(PointD),
    Delete(PointD),
    Query,
}

/// Point-set problem answered over a whole operation list known in advance.
pub trait ReplayTarget {
    type Answer;

    /// Answers of the `Query` operations, in order, after preprocessing `initial`.
    fn replay(&mut self, initial: &[PointD], ops: &[ReplayOp]) -> Result<Vec<Self::Answer>>;
}

/// Keeps the live multiset and evaluates `f` on it per query.
pub struct ReplayScan<F> {
    f: F,
}

impl<F> ReplayScan<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

/// Scan target counting skyline points.
pub fn skyline_scan() -> ReplayScan<fn(&[PointD]) -> Result<usize>> {
    ReplayScan::new(skyline_oracle)
}

/// Scan target measuring the union of cubes of side `side`.
pub fn klee_scan(side: ScaledInt) -> ReplayScan<impl FnMut(&[PointD]) -> Result<Ratio<i128>>> {
    ReplayScan::new(move |pts: &[PointD]| klee_unit_oracle(pts, side))
}

impl<A, F: FnMut(&[PointD]) -> Result<A>> ReplayTarget for ReplayScan<F> {
    type Answer = A;

    fn replay(&mut self, initial: &[PointD], ops: &[ReplayOp]) -> Result<Vec<A>> {
        let mut live = initial.to_vec();
        let mut out = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            match op {
                ReplayOp::Insert(p) => live.push(p.clone()),
                ReplayOp::Delete(p) => {
                    let at = live.iter().rposition(|q| q == p).ok_or_else(|| Error::InvalidTrace {
                        index: i,
                        reason: "delete of a point that is not live".into(),
                    })?;
                    live.remove(at);
                }
                ReplayOp::Query => out.push((self.f)(&live)?),
            }
        }
        Ok(out)
    }
}

/// Semi-online engine over a block problem; deletion times are read off the operation list.
pub struct ReplayEngine<P: BlockProblem> {
    pub engine: SemiOnlineEngine<P>,
}

impl<P: BlockProblem> ReplayEngine<P> {
    pub fn new(problem: P, block: Option<usize>) -> Result<Self> {
        Ok(Self { engine: SemiOnlineEngine::new(problem, block)? })
    }
}

/// Semi-online 3D skyline counting.
pub fn skyline_engine() -> ReplayEngine<Skyline3dBlock> {
    ReplayEngine::new(Skyline3dBlock::new(), None).expect("default block size")
}

/// Semi-online engine answering unit-cube union volume by the exact oracle.
pub fn klee_engine(
    side: ScaledInt,
) -> ReplayEngine<OracleBlock<impl FnMut(&[PointD]) -> Result<Ratio<i128>>>> {
    ReplayEngine::new(OracleBlock::new(move |pts: &[PointD]| klee_unit_oracle(pts, side)), None)
        .expect("default block size")
}

/// Semi-online trace for `initial` followed by `ops`, pairing each delete with
/// the latest live insert of an equal point.
pub fn to_semi_online(initial: &[PointD], ops: &[ReplayOp]) -> Result<Vec<SemiOnlineOp>> {
    let base = initial.len();
    let total = base + ops.len();
    let mut death = vec![usize::MAX; total];
    let mut live: HashMap<(Vec<i64>, i64), Vec<usize>> = HashMap::new();
    let key = |p: &PointD| (p.raw_coords(), p.scale());
    for (i, p) in initial.iter().enumerate() {
        live.entry(key(p)).or_default().push(i);
    }
    for (j, op) in ops.iter().enumerate() {
        let i = base + j;
        match op {
            ReplayOp::Insert(p) => live.entry(key(p)).or_default().push(i),
            ReplayOp::Delete(p) => {
                let born = live.get_mut(&key(p)).and_then(Vec::pop).ok_or_else(|| Error::InvalidTrace {
                    index: j,
                    reason: "delete of a point that is not live".into(),
                })?;
                death[born] = i;
            }
            ReplayOp::Query => {}
        }
    }
    let mut trace = Vec::with_capacity(total);
    for (i, p) in initial.iter().enumerate() {
        trace.push(SemiOnlineOp::Insert { point: p.clone(), death: death[i].min(total) });
    }
    for (j, op) in ops.iter().enumerate() {
        trace.push(match op {
            ReplayOp::Insert(p) => SemiOnlineOp::Insert { point: p.clone(), death: death[base + j].min(total) },
            ReplayOp::Delete(_) => SemiOnlineOp::Delete,
            ReplayOp::Query => SemiOnlineOp::Query,
        });
    }
    Ok(trace)
}

impl<P: BlockProblem> ReplayTarget for ReplayEngine<P> {
    type Answer = P::Answer;

    fn replay(&mut self, initial: &[PointD], ops: &[ReplayOp]) -> Result<Vec<P::Answer>> {
        let trace = to_semi_online(initial, ops)?;
        self.engine.run(&trace)
    }
}

/// Points and halfspaces under updates answering `min_q c_H(q)`.
pub trait HalfspaceTarget {
    fn build(&mut self, dim: usize, scale: i64, points: &[Vec<i64>]) -> Result<()>;

    fn insert_halfspace(&mut self, h: Halfspace) -> Result<()>;

    fn delete_halfspace(&mut self, h: &Halfspace) -> Result<()>;

    fn query_min(&mut self) -> Result<u64>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Recounts every point against every halfspace per query.
#[derive(Clone, Debug, Default)]
pub struct HalfspaceScan {
    points: Vec<Vec<i64>>,
    halfspaces: Vec<Halfspace>,
}

impl HalfspaceTarget for HalfspaceScan {
    fn build(&mut self, _dim: usize, _scale: i64, points: &[Vec<i64>]) -> Result<()> {
        self.points = points.to_vec();
        self.halfspaces.clear();
        Ok(())
    }

    fn insert_halfspace(&mut self, h: Halfspace) -> Result<()> {
        self.halfspaces.push(h);
        Ok(())
    }

    fn delete_halfspace(&mut self, h: &Halfspace) -> Result<()> {
        let at = self.halfspaces.iter().rposition(|x| x == h).ok_or_else(|| Error::Absent("halfspace".into()))?;
        self.halfspaces.remove(at);
        Ok(())
    }

    fn query_min(&mut self) -> Result<u64> {
        self.points
            .iter()
            .map(|q| self.halfspaces.iter().filter(|h| h.contains_raw(q)).count() as u64)
            .min()
            .ok_or_else(|| Error::InvalidArgument("no points".into()))
    }

    fn fingerprint(&self) -> Option<u64> {
        let mut hs: Vec<(Vec<i64>, i64, bool)> =
            self.halfspaces.iter().map(|h| (h.normal.clone(), h.offset.raw(), h.strict)).collect();
        hs.sort_unstable();
        Some(fingerprint_of(&hs))
    }
}

/// Incrementally maintained containment counts.
#[derive(Default)]
pub struct HalfspaceReal {
    inner: Option<HalfspaceSystem>,
}

impl HalfspaceTarget for HalfspaceReal {
    fn build(&mut self, dim: usize, scale: i64, points: &[Vec<i64>]) -> Result<()> {
        let mut sys = HalfspaceSystem::new(dim, scale)?;
        for p in points {
            sys.insert_point(&PointD::from_raw(p, scale)?)?;
        }
        self.inner = Some(sys);
        Ok(())
    }

    fn insert_halfspace(&mut self, h: Halfspace) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.insert_halfspace(h)
    }

    fn delete_halfspace(&mut self, h: &Halfspace) -> Result<()> {
        self.inner.as_mut().ok_or_else(not_built)?.delete_halfspace(h)
    }

    fn query_min(&mut self) -> Result<u64> {
        self.inner.as_ref().ok_or_else(not_built)?.query_min()
    }
}

/// Tensor under additive entry updates answering whether some prefix sum is zero.
pub trait LangermanTarget {
    fn build(&mut self, t: Tensor) -> Result<()>;

    /// Add `delta` to the entry at the 1-based index `z`.
    fn add(&mut self, z: &[usize], delta: i64) -> Result<()>;

    fn query(&mut self) -> Result<bool>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Dense tensor; a query recomputes all prefix sums.
#[derive(Clone, Debug, Default)]
pub struct LangermanScan {
    t: Option<Tensor>,
}

impl LangermanTarget for LangermanScan {
    fn build(&mut self, t: Tensor) -> Result<()> {
        self.t = Some(t);
        Ok(())
    }

    fn add(&mut self, z: &[usize], delta: i64) -> Result<()> {
        let t = self.t.as_mut().ok_or_else(not_built)?;
        let v = t.get(z)?.checked_add(delta).ok_or(Error::Overflow)?;
        t.set(z, v)
    }

    fn query(&mut self) -> Result<bool> {
        langerman_oracle(self.t.as_ref().ok_or_else(not_built)?)
    }

    fn fingerprint(&self) -> Option<u64> {
        self.t.as_ref().map(|t| fingerprint_of(&t.values()))
    }
}

/// Block-decomposed prefix sums.
#[derive(Default)]
pub struct LangermanReal {
    inner: Option<LangermanDS>,
}

impl LangermanReal {
    pub fn visits(&self) -> u64 {
        self.inner.as_ref().map_or(0, LangermanDS::visits)
    }
}

impl LangermanTarget for LangermanReal {
    fn build(&mut self, t: Tensor) -> Result<()> {
        self.inner = Some(LangermanDS::build(t, None)?);
        Ok(())
    }

    fn add(&mut self, z: &[usize], delta: i64) -> Result<()> {
        let ds = self.inner.as_mut().ok_or_else(not_built)?;
        let v = ds.tensor().get(z)?.checked_add(delta).ok_or(Error::Overflow)?;
        ds.update(z, v)
    }

    fn query(&mut self) -> Result<bool> {
        Ok(self.inner.as_mut().ok_or_else(not_built)?.query())
    }
}

/// Wrapper that flips the answer of the first boolean query it sees.
#[derive(Clone, Debug, Default)]
pub struct FlipFirst<T> {
    pub inner: T,
    fired: bool,
}

impl<T> FlipFirst<T> {
    pub fn new(inner: T) -> Self {
        Self { inner, fired: false }
    }

    fn flip(&mut self, answer: bool) -> bool {
        if self.fired {
            answer
        } else {
            self.fired = true;
            !answer
        }
    }
}

impl<T: SubConnTarget> SubConnTarget for FlipFirst<T> {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        self.inner.build(n, edges, s, t)
    }

    fn set_active(&mut self, v: usize, on: bool) -> Result<()> {
        self.inner.set_active(v, on)
    }

    fn query(&mut self) -> Result<bool> {
        let a = self.inner.query()?;
        Ok(self.flip(a))
    }
}

impl<T: StReachTarget> StReachTarget for FlipFirst<T> {
    fn build(&mut self, n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<()> {
        self.inner.build(n, edges, s, t)
    }

    fn insert_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.inner.insert_edge(a, b)
    }

    fn delete_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.inner.delete_edge(a, b)
    }

    fn query(&mut self) -> Result<bool> {
        let a = self.inner.query()?;
        Ok(self.flip(a))
    }
}

impl<T: LangermanTarget> LangermanTarget for FlipFirst<T> {
    fn build(&mut self, t: Tensor) -> Result<()> {
        self.inner.build(t)
    }

    fn add(&mut self, z: &[usize], delta: i64) -> Result<()> {
        self.inner.add(z, delta)
    }

    fn query(&mut self) -> Result<bool> {
        let a = self.inner.query()?;
        Ok(self.flip(a))
    }
}

impl<T: crate::tensor_ds::HypercliqueSolver> crate::tensor_ds::HypercliqueSolver for FlipFirst<T> {
    fn insert_edge(&mut self, edge: &[usize]) -> Result<()> {
        self.inner.insert_edge(edge)
    }

    fn delete_edge(&mut self, edge: &[usize]) -> Result<()> {
        self.inner.delete_edge(edge)
    }

    fn query_s(&mut self) -> bool {
        let a = self.inner.query_s();
        self.flip(a)
    }

    fn visits(&self) -> u64 {
        self.inner.visits()
    }
}

