//! Counter-based scaling workloads and least-squares exponent fitting.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::PointD;
use crate::geom_dyn::{SemiOnlineEngine, Skyline3dBlock};
use crate::range_mode::{default_threshold, DynRangeModeDS, SequenceAdapter, UpdateKind, VecSequence};
use crate::reductions::targets::{to_semi_online, ReplayOp};
use crate::tensor_ds::{LangermanDS, Tensor};

/// Default tolerance on the fitted exponent.
pub const DEFAULT_TOLERANCE: f64 = 0.20;

/// Measured operations per size, excluding the initial build.
pub const DEFAULT_OPS: usize = 200;

/// Structure and workload whose per-operation counter cost is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchStructure {
    /// Range mode over a sequence: inserts, deletes and queries by position.
    SequenceMode,
    /// Dynamic 2D range mode: point updates and box queries.
    Dmode2,
    /// Zero prefix sums over a length-n vector: entry updates, each followed by a query.
    Langerman1,
    /// Zero prefix sums over an n × n tensor.
    Langerman2,
    /// Semi-online 3D skyline counting over a trace of n operations.
    Skyline3,
    /// Sequence range mode answered by scanning the whole range.
    OracleScan,
}

impl BenchStructure {
    pub const ALL: [BenchStructure; 6] = [
        BenchStructure::SequenceMode,
        BenchStructure::Dmode2,
        BenchStructure::Langerman1,
        BenchStructure::Langerman2,
        BenchStructure::Skyline3,
        BenchStructure::OracleScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchStructure::SequenceMode => "sequence-mode",
            BenchStructure::Dmode2 => "dmode2",
            BenchStructure::Langerman1 => "langerman1",
            BenchStructure::Langerman2 => "langerman2",
            BenchStructure::Skyline3 => "skyline3",
            BenchStructure::OracleScan => "oracle-scan",
        }
    }

    /// Exponent of n expected for the counter cost per operation.
    pub fn target(self) -> f64 {
        match self {
            BenchStructure::SequenceMode => 2.0 / 3.0,
            BenchStructure::Dmode2 => 0.8,
            BenchStructure::Langerman1 => 0.5,
            BenchStructure::Langerman2 => 4.0 / 3.0,
            BenchStructure::Skyline3 => 0.5,
            BenchStructure::OracleScan => 1.0,
        }
    }

    /// Sizes used when none are given.
    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            BenchStructure::SequenceMode | BenchStructure::OracleScan => (5..=9).map(|e| 3usize.pow(e)).collect(),
            BenchStructure::Dmode2 => vec![128, 256, 512, 1024, 2048],
            BenchStructure::Langerman1 => (4..=10).map(|e| 1usize << e).collect(),
            BenchStructure::Langerman2 => vec![8, 16, 32, 64, 128],
            BenchStructure::Skyline3 => (9..=13).map(|e| 1usize << e).collect(),
        }
    }

    /// Counter total and operation count for one size.
    pub fn measure(self, n: usize, ops: usize, seed: u64) -> Result<BenchRow> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("size {n} is below 2")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        match self {
            BenchStructure::SequenceMode => sequence_mode(n, ops, &mut rng),
            BenchStructure::Dmode2 => dmode2(n, ops, &mut rng),
            BenchStructure::Langerman1 => langerman(1, n, ops, &mut rng),
            BenchStructure::Langerman2 => langerman(2, n, ops, &mut rng),
            BenchStructure::Skyline3 => skyline3(n, &mut rng),
            BenchStructure::OracleScan => oracle_scan(n, ops, &mut rng),
        }
    }
}

impl fmt::Display for BenchStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchStructure::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bench structure `{s}`")))
    }
}

/// One size of a scaling run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub ops: usize,
    pub visits: u64,
    pub ns: u128,
}

impl BenchRow {
    pub fn visits_per_op(&self) -> f64 {
        self.visits as f64 / self.ops.max(1) as f64
    }
}

/// Rows of a scaling run with the fitted exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub structure: BenchStructure,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub fit_exponent: f64,
    pub target: f64,
    pub tolerance: f64,
}

impl BenchReport {
    pub fn pass(&self) -> bool {
        (self.fit_exponent - self.target).abs() <= self.tolerance
    }

    /// CSV rows plus the fit trailer. With `with_time` false the `ns` column is zero.
    pub fn to_csv(&self, with_time: bool) -> String {
        let mut out = format!("# structure={} seed={}\nn,ops,visits,ns,visits_per_op\n", self.structure, self.seed);
        for r in &self.rows {
            let ns = if with_time { r.ns } else { 0 };
            out += &format!("{},{},{},{},{:.3}\n", r.n, r.ops, r.visits, ns, r.visits_per_op());
        }
        out += &format!(
            "fit_exponent={:.4} target={:.4} tol={:.2} pass={}\n",
            self.fit_exponent,
            self.target,
            self.tolerance,
            self.pass()
        );
        out
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidArgument("need at least two positive points to fit".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("sizes must not all be equal".into()));
    }
    Ok(sxy / sxx)
}

/// Measure every size and fit the exponent; at least four sizes are required.
pub fn run_bench(structure: BenchStructure, sizes: &[usize], seed: u64, tolerance: f64) -> Result<BenchReport> {
    if sizes.len() < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 sizes, got {}", sizes.len())));
    }
    let rows = sizes.iter().map(|&n| structure.measure(n, DEFAULT_OPS, seed)).collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.visits_per_op().max(1e-9))).collect();
    let fit_exponent = fit_exponent(&pts)?;
    Ok(BenchReport { structure, seed, rows, fit_exponent, target: structure.target(), tolerance })
}

/// Label sequence with about half the elements in labels of `2B` copies and
/// half in labels of `B/2` copies, shuffled.
fn mixed_labels(n: usize, b: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let heavy = 2 * b;
    let light = (b / 2).max(1);
    let mut out = Vec::with_capacity(n);
    let mut label = 0i64;
    while out.len() < n / 2 {
        out.extend(std::iter::repeat_n(label, heavy.min(n / 2 - out.len())));
        label += 1;
    }
    while out.len() < n {
        out.extend(std::iter::repeat_n(label, light.min(n - out.len())));
        label += 1;
    }
    for i in (1..out.len()).rev() {
        out.swap(i, rng.gen_range(0..=i));
    }
    out
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, u128)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_nanos()))
}

/// Alternating update/query pairs; updates alternate insert and delete so the size stays near n.
fn sequence_mode(n: usize, ops: usize, rng: &mut ChaCha8Rng) -> Result<BenchRow> {
    let cap = n + ops;
    let b = default_threshold(1, cap);
    let values = mixed_labels(n, b, rng);
    let labels = values.iter().max().copied().unwrap_or(0) + 1;
    let mut seq = SequenceAdapter::from_values(cap, None, &values)?;
    let before = seq.visits();
    let (_, ns) = timed(|| {
        for i in 0..ops {
            let len = seq.len();
            if i % 2 == 0 {
                if i % 4 == 0 {
                    seq.insert(rng.gen_range(1..=len + 1), rng.gen_range(0..labels))?;
                } else {
                    seq.delete(rng.gen_range(1..=len))?;
                }
            } else {
                let l = rng.gen_range(1..=len / 4 + 1);
                let r = rng.gen_range(3 * len / 4..=len).max(l);
                seq.query(l, r)?;
            }
        }
        Ok(())
    })?;
    Ok(BenchRow { n, ops, visits: seq.visits() - before, ns })
}

fn dmode2(n: usize, ops: usize, rng: &mut ChaCha8Rng) -> Result<BenchRow> {
    let cap = n + ops;
    let b = default_threshold(2, cap);
    let side = (n as f64).sqrt().ceil() as i64 * 4;
    let labels = mixed_labels(n, b, rng);
    let label_count = labels.iter().max().copied().unwrap_or(0) + 1;
    let mut live: Vec<(Vec<i64>, i64)> =
        labels.into_iter().map(|l| (vec![rng.gen_range(0..side), rng.gen_range(0..side)], l)).collect();
    let mut ds = DynRangeModeDS::from_points(2, cap, None, 1, &live)?;
    let before = ds.visits();
    let (_, ns) = timed(|| {
        for i in 0..ops {
            if i % 2 == 0 {
                if i % 4 == 0 {
                    let p = (vec![rng.gen_range(0..side), rng.gen_range(0..side)], rng.gen_range(0..label_count));
                    ds.update_raw(&p.0, p.1, UpdateKind::Insert)?;
                    live.push(p);
                } else {
                    let (c, l) = live.swap_remove(rng.gen_range(0..live.len()));
                    ds.update_raw(&c, l, UpdateKind::Delete)?;
                }
            } else {
                let lo = |rng: &mut ChaCha8Rng| rng.gen_range(0..side / 4 + 1);
                let hi = |rng: &mut ChaCha8Rng| rng.gen_range(3 * side / 4..side);
                let ranges = [(lo(rng), hi(rng)), (lo(rng), hi(rng))];
                ds.query_raw(&ranges)?;
            }
        }
        Ok(())
    })?;
    Ok(BenchRow { n, ops, visits: ds.visits() - before, ns })
}

/// Entries stay in `{-1, 0, 1}` so zero prefix sums keep occurring.
fn langerman(d: usize, n: usize, ops: usize, rng: &mut ChaCha8Rng) -> Result<BenchRow> {
    let mut t = Tensor::zeros(d, n)?;
    let len = t.len();
    for off in 0..len {
        let x = t.index_of(off);
        t.set(&x, rng.gen_range(-1..=1))?;
    }
    let mut ds = LangermanDS::build(t, None)?;
    let before = ds.visits();
    let (_, ns) = timed(|| {
        for _ in 0..ops {
            let x: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=n)).collect();
            ds.update(&x, rng.gen_range(-1..=1))?;
            ds.query();
        }
        Ok(())
    })?;
    Ok(BenchRow { n, ops, visits: ds.visits() - before, ns })
}

/// Random trace of n operations: inserts of points near a plane (large
/// skylines), deletes of random live points, and queries.
fn skyline3(n: usize, rng: &mut ChaCha8Rng) -> Result<BenchRow> {
    let side = 4 * n as i64;
    let mut ops = Vec::with_capacity(n);
    let mut live: Vec<PointD> = Vec::new();
    for _ in 0..n {
        let roll = rng.gen_range(0..10);
        if live.is_empty() || roll < 5 {
            let x = rng.gen_range(0..side);
            let y = rng.gen_range(0..side - x);
            let z = side - x - y - rng.gen_range(0..4);
            let p = PointD::ints(&[x, y, z]);
            live.push(p.clone());
            ops.push(ReplayOp::Insert(p));
        } else if roll < 7 {
            let p = live.swap_remove(rng.gen_range(0..live.len()));
            ops.push(ReplayOp::Delete(p));
        } else {
            ops.push(ReplayOp::Query);
        }
    }
    let trace = to_semi_online(&[], &ops)?;
    let mut engine = SemiOnlineEngine::new(Skyline3dBlock::new(), None)?;
    let (_, ns) = timed(|| engine.run(&trace))?;
    Ok(BenchRow { n, ops: n, visits: crate::geom_dyn::BlockProblem::visits(&engine.problem), ns })
}

fn oracle_scan(n: usize, ops: usize, rng: &mut ChaCha8Rng) -> Result<BenchRow> {
    let values = mixed_labels(n, default_threshold(1, n), rng);
    let mut seq = VecSequence::new(values);
    let labels = seq.values.iter().max().copied().unwrap_or(0) + 1;
    let before = seq.scanned();
    let (_, ns) = timed(|| {
        for i in 0..ops {
            let len = seq.len();
            if i % 2 == 0 {
                if i % 4 == 0 {
                    seq.insert(rng.gen_range(1..=len + 1), rng.gen_range(0..labels));
                } else {
                    seq.delete(rng.gen_range(1..=len));
                }
            } else {
                let l = rng.gen_range(1..=len / 4 + 1);
                let r = rng.gen_range(3 * len / 4..=len).max(l);
                seq.mode(l, r);
            }
        }
        Ok(())
    })?;
    Ok(BenchRow { n, ops, visits: seq.scanned() - before, ns })
}
