//! Replays an operation trace against a scan oracle or the dynamic structure.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use dynds_core::colors::{cc_oracle, color_count_oracle, CommonColorsDS, DynColorCountDS};
use dynds_core::geom_dyn::{
    skyline_oracle, validate_trace, Halfspace, HalfspaceSystem, OracleBlock, SemiOnlineEngine, SemiOnlineOp,
    Skyline3dBlock,
};
use dynds_core::range_mode::{mode_oracle, DynRangeModeDS, SequenceAdapter, UpdateKind, VecSequence};
use dynds_core::reductions::targets::{klee_engine, klee_scan, ReplayOp, ReplayTarget};
use dynds_core::tensor_ds::{langerman_oracle, CountingHyperclique, EagerErickson, EricksonSolver, HypercliqueSolver, LangermanDS, Tensor};
use dynds_core::{BoxD, Error, PointD, Result, ScaledInt};

use crate::trace::{Op, OpKind, OpTrace, Problem};

/// Which implementation answers the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureId {
    /// Brute-force scan over the live set.
    Oracle,
    /// The dynamic structure.
    Real,
}

impl StructureId {
    pub fn name(self) -> &'static str {
        match self {
            StructureId::Oracle => "oracle",
            StructureId::Real => "real",
        }
    }
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(StructureId::Oracle),
            "real" => Ok(StructureId::Real),
            _ => Err(Error::InvalidArgument(format!("unknown structure `{s}`"))),
        }
    }
}

/// Why a trace could not be completed.
#[derive(Debug)]
pub enum SolveError {
    /// The header does not describe a usable instance.
    Setup(Error),
    /// Operation `index` (0-based) failed.
    Op { index: usize, error: Error },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Setup(e) => write!(f, "invalid header: {e}"),
            SolveError::Op { index, error } => write!(f, "op {index}: {error}"),
        }
    }
}

/// Answers printed before any failure, and the failure.
#[derive(Debug)]
pub struct Solved {
    pub lines: Vec<String>,
    pub error: Option<SolveError>,
}

/// Run `trace` through `structure`, one output line per query.
pub fn solve(trace: &OpTrace, structure: StructureId) -> Solved {
    match trace.problem {
        Problem::Klee => batch(klee(trace, structure)),
        Problem::Skyline => batch(skyline(trace, structure)),
        _ => match stepper(trace, structure) {
            Ok(mut s) => {
                let mut lines = Vec::new();
                for (index, op) in trace.ops.iter().enumerate() {
                    match s.step(op) {
                        Ok(Some(line)) => lines.push(line),
                        Ok(None) => {}
                        Err(error) => return Solved { lines, error: Some(SolveError::Op { index, error }) },
                    }
                }
                Solved { lines, error: None }
            }
            Err(e) => Solved { lines: Vec::new(), error: Some(e) },
        },
    }
}

fn batch(r: std::result::Result<Vec<String>, SolveError>) -> Solved {
    match r {
        Ok(lines) => Solved { lines, error: None },
        Err(e) => Solved { lines: Vec::new(), error: Some(e) },
    }
}

trait Stepper {
    fn step(&mut self, op: &Op) -> Result<Option<String>>;
}

fn stepper(t: &OpTrace, s: StructureId) -> std::result::Result<Box<dyn Stepper>, SolveError> {
    let (d, cap, scale, th) = (t.dim(), t.capacity(), t.scale(), t.header.threshold);
    let setup = SolveError::Setup;
    Ok(match (t.problem, s) {
        (Problem::RangeMode, StructureId::Oracle) => Box::new(ModeScan { d, scale, cap, live: Vec::new() }),
        (Problem::RangeMode, StructureId::Real) => {
            Box::new(ModeReal { d, scale, ds: DynRangeModeDS::with_scale(d, cap, th, scale).map_err(setup)? })
        }
        (Problem::SequenceMode, StructureId::Oracle) => Box::new(SeqScan { cap, seq: VecSequence::default() }),
        (Problem::SequenceMode, StructureId::Real) => Box::new(SeqReal(SequenceAdapter::new(cap, th).map_err(setup)?)),
        (Problem::CommonColors, _) => {
            let a = t.header.array.clone().ok_or_else(|| setup(Error::InvalidArgument("missing `array`".into())))?;
            if let Some(&c) = a.iter().find(|&&c| c <= 0) {
                return Err(setup(Error::InvalidArgument(format!("colour {c} is not positive"))));
            }
            if s == StructureId::Oracle {
                let colors = a.iter().copied().collect();
                Box::new(CommonScan { a, colors, on: HashSet::new() })
            } else {
                Box::new(CommonReal(CommonColorsDS::build(&a, &HashSet::new(), th).map_err(setup)?))
            }
        }
        (Problem::ColorCount, StructureId::Oracle) => Box::new(ColorScan { cap, live: Vec::new() }),
        (Problem::ColorCount, StructureId::Real) => Box::new(ColorReal(DynColorCountDS::new(cap, th).map_err(setup)?)),
        (Problem::Halfspace, _) => {
            let sys = HalfspaceSystem::new(d, scale).map_err(setup)?;
            if s == StructureId::Oracle {
                Box::new(HalfspaceScan { d, scale, hs: Vec::new(), pts: Vec::new() })
            } else {
                Box::new(HalfspaceReal { d, scale, sys })
            }
        }
        (Problem::Langerman, _) => {
            let n = side(t)?;
            let zeros = Tensor::zeros(d, n).map_err(setup)?;
            if s == StructureId::Oracle {
                Box::new(LangermanScan(zeros))
            } else {
                Box::new(LangermanReal(LangermanDS::build(zeros, th).map_err(setup)?))
            }
        }
        (Problem::Erickson, _) => {
            let zeros = Tensor::zeros(d, side(t)?).map_err(setup)?;
            if s == StructureId::Oracle {
                Box::new(EricksonScan(zeros))
            } else {
                Box::new(EricksonReal(EagerErickson::new(zeros)))
            }
        }
        (Problem::Hyperclique, _) => {
            let (n, src) = (side(t)?, t.header.source.unwrap_or(0));
            let real = CountingHyperclique::new(d, n, src).map_err(setup)?;
            if s == StructureId::Oracle {
                Box::new(HypercliqueScan { k: d, n, s: src, edges: HashSet::new() })
            } else {
                Box::new(HypercliqueReal(real))
            }
        }
        (Problem::Klee | Problem::Skyline, _) => unreachable!("answered in batch"),
    })
}

fn side(t: &OpTrace) -> std::result::Result<usize, SolveError> {
    t.header.capacity.ok_or_else(|| SolveError::Setup(Error::InvalidArgument("missing `capacity` (tensor side)".into())))
}

fn index(v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("{v} is not a valid index")))
}

fn indices(v: &[i64]) -> Result<Vec<usize>> {
    v.iter().map(|&x| index(x)).collect()
}

fn label(v: i64) -> Result<i64> {
    if i32::try_from(v).is_err() {
        return Err(Error::InvalidArgument(format!("label {v} does not fit in 32 bits")));
    }
    Ok(v)
}

/// Closed ranges from flat `l1 r1 l2 r2 …`; empty ranges are rejected.
fn ranges(v: &[i64]) -> Result<Vec<(i64, i64)>> {
    let r: Vec<(i64, i64)> = v.chunks(2).map(|c| (c[0], c[1])).collect();
    if let Some(&(l, h)) = r.iter().find(|(l, h)| l > h) {
        return Err(Error::InvalidArgument(format!("empty range [{l},{h}]")));
    }
    Ok(r)
}

fn show_mode(m: Option<(i64, usize)>) -> String {
    m.map_or_else(|| "none".into(), |(v, f)| format!("({v},{f})"))
}

fn absent(what: String) -> Error {
    Error::Absent(what)
}

struct ModeScan {
    d: usize,
    scale: i64,
    cap: usize,
    live: Vec<(PointD, i64)>,
}

impl Stepper for ModeScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let d = self.d;
        match op.kind {
            OpKind::Ins => {
                let l = label(op.args[d])?;
                if self.live.len() >= self.cap {
                    return Err(Error::CapacityExceeded(self.cap));
                }
                self.live.push((PointD::from_raw(&op.args[..d], self.scale)?, l));
            }
            OpKind::Del => {
                let key = (PointD::from_raw(&op.args[..d], self.scale)?, label(op.args[d])?);
                let at = self.live.iter().rposition(|e| *e == key).ok_or_else(|| absent(format!("{op}")))?;
                self.live.remove(at);
            }
            _ => {
                let b = BoxD::closed_raw(&ranges(&op.args)?, self.scale)?;
                return Ok(Some(show_mode(mode_oracle(&self.live, &b))));
            }
        }
        Ok(None)
    }
}

struct ModeReal {
    d: usize,
    scale: i64,
    ds: DynRangeModeDS,
}

impl Stepper for ModeReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let d = self.d;
        match op.kind {
            OpKind::Ins => self.ds.update_raw(&op.args[..d], label(op.args[d])?, UpdateKind::Insert)?,
            OpKind::Del => self.ds.update_raw(&op.args[..d], label(op.args[d])?, UpdateKind::Delete)?,
            _ => {
                let r = ranges(&op.args)?;
                BoxD::closed_raw(&r, self.scale)?;
                return Ok(Some(show_mode(self.ds.query_raw(&r)?)));
            }
        }
        Ok(None)
    }
}

struct SeqScan {
    cap: usize,
    seq: VecSequence,
}

impl Stepper for SeqScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let len = self.seq.len();
        let bad = || Error::InvalidArgument(format!("{op}: position outside 1..={len}"));
        match op.kind {
            OpKind::Sins => {
                let v = label(op.args[1])?;
                if self.seq.len() >= self.cap {
                    return Err(Error::CapacityExceeded(self.cap));
                }
                if !self.seq.insert(index(op.args[0])?, v) {
                    return Err(bad());
                }
            }
            OpKind::Sdel => {
                self.seq.delete(index(op.args[0])?).ok_or_else(bad)?;
            }
            _ => {
                let m = self.seq.mode(index(op.args[0])?, index(op.args[1])?).ok_or_else(bad)?;
                return Ok(Some(show_mode(Some(m))));
            }
        }
        Ok(None)
    }
}

struct SeqReal(SequenceAdapter);

impl Stepper for SeqReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Sins => self.0.insert(index(op.args[0])?, label(op.args[1])?)?,
            OpKind::Sdel => {
                self.0.delete(index(op.args[0])?)?;
            }
            _ => return Ok(Some(show_mode(Some(self.0.query(index(op.args[0])?, index(op.args[1])?)?)))),
        }
        Ok(None)
    }
}

struct CommonScan {
    a: Vec<i64>,
    colors: HashSet<i64>,
    on: HashSet<i64>,
}

impl Stepper for CommonScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Con | OpKind::Coff => {
                let c = op.args[0];
                if !self.colors.contains(&c) {
                    return Err(absent(format!("colour {c}")));
                }
                if op.kind == OpKind::Con {
                    self.on.insert(c);
                } else {
                    self.on.remove(&c);
                }
                Ok(None)
            }
            _ => {
                let m = self.a.len();
                let iv = indices(&op.args)?;
                for (l, r) in [(iv[0], iv[1]), (iv[2], iv[3])] {
                    if l == 0 || l > r || r > m {
                        return Err(Error::InvalidArgument(format!("interval [{l},{r}] outside [1,{m}]")));
                    }
                }
                Ok(Some(cc_oracle(&self.a, &self.on, (iv[0], iv[1]), (iv[2], iv[3])).to_string()))
            }
        }
    }
}

struct CommonReal(CommonColorsDS);

impl Stepper for CommonReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Con => self.0.toggle(op.args[0], true)?,
            OpKind::Coff => self.0.toggle(op.args[0], false)?,
            _ => {
                let iv = indices(&op.args)?;
                return Ok(Some(self.0.query((iv[0], iv[1]), (iv[2], iv[3]))?.to_string()));
            }
        }
        Ok(None)
    }
}

fn color_ranges(args: &[i64]) -> Result<[(i64, i64); 2]> {
    let r = ranges(args)?;
    Ok([r[0], r[1]])
}

struct ColorScan {
    cap: usize,
    live: Vec<([i64; 2], i64)>,
}

impl Stepper for ColorScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let a = &op.args;
        match op.kind {
            OpKind::Pins => {
                if self.live.len() >= self.cap {
                    return Err(Error::CapacityExceeded(self.cap));
                }
                self.live.push(([a[0], a[1]], a[2]));
            }
            OpKind::Pdel => {
                let key = ([a[0], a[1]], a[2]);
                let at = self.live.iter().rposition(|e| *e == key).ok_or_else(|| absent(format!("{op}")))?;
                self.live.remove(at);
            }
            _ => return Ok(Some(color_count_oracle(&self.live, &color_ranges(a)?).to_string())),
        }
        Ok(None)
    }
}

struct ColorReal(DynColorCountDS);

impl Stepper for ColorReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let a = &op.args;
        match op.kind {
            OpKind::Pins => self.0.update_raw([a[0], a[1]], a[2], UpdateKind::Insert)?,
            OpKind::Pdel => self.0.update_raw([a[0], a[1]], a[2], UpdateKind::Delete)?,
            _ => return Ok(Some(self.0.query_raw(&color_ranges(a)?)?.to_string())),
        }
        Ok(None)
    }
}

fn halfspace(d: usize, scale: i64, a: &[i64]) -> Result<Halfspace> {
    Ok(Halfspace::new(a[..d].to_vec(), ScaledInt::new(a[d], scale)?, a[d + 1] == 1))
}

struct HalfspaceScan {
    d: usize,
    scale: i64,
    hs: Vec<Halfspace>,
    pts: Vec<Vec<i64>>,
}

impl Stepper for HalfspaceScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Hins => self.hs.push(halfspace(self.d, self.scale, &op.args)?),
            OpKind::Hdel => {
                let h = halfspace(self.d, self.scale, &op.args)?;
                let at = self.hs.iter().position(|x| *x == h).ok_or_else(|| absent(format!("{op}")))?;
                self.hs.swap_remove(at);
            }
            OpKind::Hpin => self.pts.push(op.args.clone()),
            OpKind::Hpdel => {
                let at = self.pts.iter().position(|x| *x == op.args).ok_or_else(|| absent(format!("{op}")))?;
                self.pts.swap_remove(at);
            }
            _ => {
                let min = self.pts.iter().map(|q| self.hs.iter().filter(|h| h.contains_raw(q)).count()).min();
                return Ok(Some(min.map_or_else(|| "none".into(), |m| m.to_string())));
            }
        }
        Ok(None)
    }
}

struct HalfspaceReal {
    d: usize,
    scale: i64,
    sys: HalfspaceSystem,
}

impl Stepper for HalfspaceReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Hins => self.sys.insert_halfspace(halfspace(self.d, self.scale, &op.args)?)?,
            OpKind::Hdel => self.sys.delete_halfspace(&halfspace(self.d, self.scale, &op.args)?)?,
            OpKind::Hpin => self.sys.insert_point(&PointD::from_raw(&op.args, self.scale)?)?,
            OpKind::Hpdel => self.sys.delete_point(&PointD::from_raw(&op.args, self.scale)?)?,
            _ => {
                if self.sys.num_points() == 0 {
                    return Ok(Some("none".into()));
                }
                return Ok(Some(self.sys.query_min()?.to_string()));
            }
        }
        Ok(None)
    }
}

struct LangermanScan(Tensor);

impl Stepper for LangermanScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        if op.kind == OpKind::Lset {
            let d = op.args.len() - 1;
            self.0.set(&indices(&op.args[..d])?, op.args[d])?;
            return Ok(None);
        }
        Ok(Some(langerman_oracle(&self.0)?.to_string()))
    }
}

struct LangermanReal(LangermanDS);

impl Stepper for LangermanReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        if op.kind == OpKind::Lset {
            let d = op.args.len() - 1;
            self.0.update(&indices(&op.args[..d])?, op.args[d])?;
            return Ok(None);
        }
        Ok(Some(self.0.query().to_string()))
    }
}

struct EricksonScan(Tensor);

impl Stepper for EricksonScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        let t = &mut self.0;
        if op.kind == OpKind::Einc {
            let (axis, x) = (index(op.args[0])?, index(op.args[1])?);
            if axis == 0 || axis > t.order() || x == 0 || x > t.side() {
                return Err(Error::InvalidArgument(format!("axis {axis}, value {x} out of range")));
            }
            for off in 0..t.len() {
                let idx = t.index_of(off);
                if idx[axis - 1] == x {
                    t.set(&idx, t.get(&idx)? + 1)?;
                }
            }
            return Ok(None);
        }
        Ok(Some(t.values().iter().max().copied().unwrap_or(0).to_string()))
    }
}

struct EricksonReal(EagerErickson);

impl Stepper for EricksonReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        if op.kind == OpKind::Einc {
            self.0.increment_axis(index(op.args[0])?, index(op.args[1])?)?;
            return Ok(None);
        }
        Ok(Some(self.0.query_max().to_string()))
    }
}

struct HypercliqueScan {
    k: usize,
    n: usize,
    s: usize,
    edges: HashSet<Vec<usize>>,
}

impl HypercliqueScan {
    fn edge(&self, a: &[i64]) -> Result<Vec<usize>> {
        let mut e = indices(a)?;
        e.sort_unstable();
        e.dedup();
        if e.len() != self.k || e.iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidArgument(format!("{a:?} is not a {}-subset of 0..{}", self.k, self.n)));
        }
        Ok(e)
    }

    /// Whether some `k` other vertices form a `(k+1)`-hyperclique with `s`.
    fn in_clique(&self) -> bool {
        let others: Vec<usize> = (0..self.n).filter(|&v| v != self.s).collect();
        let mut found = false;
        combinations(&others, self.k, &mut |t| {
            if found {
                return;
            }
            let mut clique = t.to_vec();
            clique.push(self.s);
            clique.sort_unstable();
            found = (0..clique.len()).all(|skip| {
                let sub: Vec<usize> = clique.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                self.edges.contains(&sub)
            });
        });
        found
    }
}

fn combinations(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

impl Stepper for HypercliqueScan {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Heins => {
                let e = self.edge(&op.args)?;
                if !self.edges.insert(e) {
                    return Err(Error::InvalidArgument(format!("{op}: edge already present")));
                }
            }
            OpKind::Hedel => {
                let e = self.edge(&op.args)?;
                if !self.edges.remove(&e) {
                    return Err(absent(format!("{op}")));
                }
            }
            _ => return Ok(Some(self.in_clique().to_string())),
        }
        Ok(None)
    }
}

struct HypercliqueReal(CountingHyperclique);

impl Stepper for HypercliqueReal {
    fn step(&mut self, op: &Op) -> Result<Option<String>> {
        match op.kind {
            OpKind::Heins => self.0.insert_edge(&indices(&op.args)?)?,
            OpKind::Hedel => self.0.delete_edge(&indices(&op.args)?)?,
            _ => return Ok(Some(self.0.query_s().to_string())),
        }
        Ok(None)
    }
}

/// Failure of a whole-trace run, attributed to an operation when possible.
fn at_op(e: Error) -> SolveError {
    match e {
        Error::InvalidTrace { index, reason } => SolveError::Op { index, error: Error::InvalidArgument(reason) },
        error => SolveError::Op { index: 0, error },
    }
}

fn klee(t: &OpTrace, s: StructureId) -> std::result::Result<Vec<String>, SolveError> {
    let scale = t.scale();
    let side = t.header.side.ok_or_else(|| SolveError::Setup(Error::InvalidArgument("missing `side`".into())))?;
    let side = ScaledInt::new(side, scale).map_err(SolveError::Setup)?;
    if side.raw() <= 0 {
        return Err(SolveError::Setup(Error::InvalidArgument("cube side must be positive".into())));
    }
    let mut ops = Vec::with_capacity(t.ops.len());
    for (index, op) in t.ops.iter().enumerate() {
        let point = || PointD::from_raw(&op.args, scale).map_err(|error| SolveError::Op { index, error });
        ops.push(match op.kind {
            OpKind::Kins => ReplayOp::Insert(point()?),
            OpKind::Kdel => ReplayOp::Delete(point()?),
            _ => ReplayOp::Query,
        });
    }
    let answers = match s {
        StructureId::Oracle => klee_scan(side).replay(&[], &ops),
        StructureId::Real => klee_engine(side).replay(&[], &ops),
    }
    .map_err(at_op)?;
    Ok(answers.into_iter().map(|v| v.to_string()).collect())
}

fn skyline(t: &OpTrace, s: StructureId) -> std::result::Result<Vec<String>, SolveError> {
    let (d, scale) = (t.dim(), t.scale());
    let mut trace = Vec::with_capacity(t.ops.len());
    for (at, op) in t.ops.iter().enumerate() {
        trace.push(match op.kind {
            OpKind::Soins => {
                let fail = |error| SolveError::Op { index: at, error };
                let point = PointD::from_raw(&op.args[..d], scale).map_err(fail)?;
                let death = index(op.args[d]).map_err(fail)?;
                SemiOnlineOp::Insert { point, death }
            }
            OpKind::Sodel => SemiOnlineOp::Delete,
            _ => SemiOnlineOp::Query,
        });
    }
    let answers = match s {
        StructureId::Oracle => skyline_scan(&trace),
        StructureId::Real if d == 3 => SemiOnlineEngine::new(Skyline3dBlock::new(), t.header.threshold)
            .and_then(|mut e| e.run(&trace)),
        StructureId::Real => {
            SemiOnlineEngine::new(OracleBlock::new(skyline_oracle), t.header.threshold).and_then(|mut e| e.run(&trace))
        }
    }
    .map_err(at_op)?;
    Ok(answers.into_iter().map(|v| v.to_string()).collect())
}

fn skyline_scan(trace: &[SemiOnlineOp]) -> Result<Vec<usize>> {
    validate_trace(trace)?;
    let mut live: HashMap<usize, PointD> = HashMap::new();
    let mut born = 0usize;
    let mut out = Vec::new();
    for (i, op) in trace.iter().enumerate() {
        match op {
            SemiOnlineOp::Insert { point, death } => {
                // Elements that never die get distinct keys past the trace.
                let key = if *death < trace.len() { *death } else { trace.len() + born };
                born += 1;
                live.insert(key, point.clone());
            }
            SemiOnlineOp::Delete => {
                live.remove(&i);
            }
            SemiOnlineOp::Query => {
                let pts: Vec<PointD> = live.values().cloned().collect();
                out.push(skyline_oracle(&pts)?);
            }
        }
    }
    Ok(out)
}
