use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::clique::*;
use super::graph::{clique_bruteforce, KPartiteGraph};
use super::io::{graph_to_text, oumv_to_text};
use super::oumv::*;
use super::targets::*;
use super::Outcome;
use crate::error::{Error, Result};
use crate::geom::{PointD, ScaledInt};
use crate::geom_dyn::{skyline_oracle, OracleBlock};
use crate::tensor_ds::{
    oumv_bruteforce, CountingHyperclique, EagerErickson, LazyErickson, LazyHyperclique, OuMvInstance,
};

/// Reductions exercised by the cross-check suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionId {
    Mode,
    Minority,
    BatchDmode1,
    BatchDmode2,
    DynDmode1,
    SubConn,
    TwoPattern,
    Color,
    StReach,
    Skyline2,
    Skyline3,
    Klee2,
    Halfspace2,
    Halfspace3,
    Hyperclique2,
    Hyperclique3,
    Erickson2,
    Erickson3,
    Langerman2,
    Langerman3,
}

impl ReductionId {
    pub const ALL: [ReductionId; 20] = [
        Self::Mode,
        Self::Minority,
        Self::BatchDmode1,
        Self::BatchDmode2,
        Self::DynDmode1,
        Self::SubConn,
        Self::TwoPattern,
        Self::Color,
        Self::StReach,
        Self::Skyline2,
        Self::Skyline3,
        Self::Klee2,
        Self::Halfspace2,
        Self::Halfspace3,
        Self::Hyperclique2,
        Self::Hyperclique3,
        Self::Erickson2,
        Self::Erickson3,
        Self::Langerman2,
        Self::Langerman3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Mode => "mode",
            Self::Minority => "minority",
            Self::BatchDmode1 => "batch-dmode1",
            Self::BatchDmode2 => "batch-dmode2",
            Self::DynDmode1 => "dyn-dmode1",
            Self::SubConn => "subconn",
            Self::TwoPattern => "2pattern",
            Self::Color => "color",
            Self::StReach => "streach",
            Self::Skyline2 => "skyline2",
            Self::Skyline3 => "skyline3",
            Self::Klee2 => "klee2",
            Self::Halfspace2 => "halfspace2",
            Self::Halfspace3 => "halfspace3",
            Self::Hyperclique2 => "hyperclique2",
            Self::Hyperclique3 => "hyperclique3",
            Self::Erickson2 => "erickson2",
            Self::Erickson3 => "erickson3",
            Self::Langerman2 => "langerman2",
            Self::Langerman3 => "langerman3",
        }
    }

    /// Part count for graph reductions, `None` for OuMv reductions.
    pub fn graph_parts(self) -> Option<usize> {
        match self {
            Self::Mode | Self::Minority | Self::DynDmode1 | Self::SubConn | Self::TwoPattern | Self::Color | Self::StReach => {
                Some(4)
            }
            Self::BatchDmode1 => Some(3),
            Self::BatchDmode2 => Some(5),
            _ => None,
        }
    }

    /// Tuple order `k` for OuMv reductions.
    pub fn oumv_order(self) -> Option<usize> {
        match self {
            Self::Skyline2 | Self::Klee2 | Self::Halfspace2 | Self::Hyperclique2 | Self::Erickson2 | Self::Langerman2 => Some(2),
            Self::Skyline3 | Self::Halfspace3 | Self::Hyperclique3 | Self::Erickson3 | Self::Langerman3 => Some(3),
            _ => None,
        }
    }

    /// Largest part size (graphs) or `N` (OuMv) used by default.
    pub fn default_size(self) -> usize {
        match self {
            Self::BatchDmode2 => 3,
            Self::DynDmode1 | Self::Klee2 | Self::Langerman2 | Self::Langerman3 => 4,
            Self::Halfspace2 | Self::Halfspace3 => 6,
            _ => 5,
        }
    }

    pub fn supports(self, adapter: AdapterId) -> bool {
        match adapter {
            AdapterId::Oracle => true,
            AdapterId::Real => self != Self::Minority,
            AdapterId::Fault => matches!(
                self,
                Self::SubConn | Self::StReach | Self::Langerman2 | Self::Langerman3 | Self::Hyperclique2 | Self::Hyperclique3
            ),
        }
    }
}

impl fmt::Display for ReductionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown reduction {s:?}")))
    }
}

/// Which implementation backs the target problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdapterId {
    /// Brute-force scan.
    Oracle,
    /// The dynamic structure from this crate.
    Real,
    /// Scan that flips its first boolean answer.
    Fault,
}

impl AdapterId {
    pub fn name(self) -> &'static str {
        match self {
            Self::Oracle => "oracle",
            Self::Real => "real",
            Self::Fault => "fault",
        }
    }
}

impl fmt::Display for AdapterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdapterId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Self::Oracle),
            "real" => Ok(Self::Real),
            "fault" => Ok(Self::Fault),
            _ => Err(Error::InvalidArgument(format!("unknown adapter {s:?}"))),
        }
    }
}

/// Input of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(KPartiteGraph),
    OuMv(OuMvInstance),
}

impl Instance {
    pub fn to_text(&self) -> String {
        match self {
            Self::Graph(g) => graph_to_text(g),
            Self::OuMv(i) => oumv_to_text(i),
        }
    }

    /// Answers by direct detection: one boolean for graphs, one per query for OuMv.
    pub fn expected(&self) -> Vec<bool> {
        match self {
            Self::Graph(g) => vec![clique_bruteforce(g)],
            Self::OuMv(i) => oumv_bruteforce(i),
        }
    }
}

fn unsupported(id: ReductionId, adapter: AdapterId) -> Error {
    Error::InvalidArgument(format!("reduction {id} has no {adapter} adapter"))
}

fn wrong_instance(id: ReductionId) -> Error {
    Error::InvalidArgument(format!("instance does not match reduction {id}"))
}

fn single(o: Outcome<bool>) -> Outcome<Vec<bool>> {
    Outcome { answer: vec![o.answer], updates: o.updates, queries: o.queries, builds: o.builds }
}

fn skyline3_engine() -> Result<ReplayEngine<OracleBlock<fn(&[PointD]) -> Result<usize>>>> {
    ReplayEngine::new(OracleBlock::new(skyline_oracle as fn(&[PointD]) -> Result<usize>), None)
}

fn klee_side(n: usize) -> Result<ScaledInt> {
    let s = 2 * (n as i64 + 1);
    ScaledInt::new(n as i64 * s, s)
}

/// Run reduction `id` on `inst` with the chosen adapter.
pub fn run_reduction(id: ReductionId, adapter: AdapterId, inst: &Instance) -> Result<Outcome<Vec<bool>>> {
    use AdapterId::*;
    use ReductionId::*;
    if !id.supports(adapter) {
        return Err(unsupported(id, adapter));
    }
    match (id.graph_parts(), inst) {
        (Some(k), Instance::Graph(g)) => {
            if g.parts() != k {
                return Err(wrong_instance(id));
            }
            let out = match (id, adapter) {
                (Mode, Oracle) => red_4clique_range_mode(g, &mut SeqScan::mode())?,
                (Mode, _) => red_4clique_range_mode(g, &mut SeqMode::default())?,
                (Minority, _) => red_4clique_range_minority(g, &mut SeqScan::minority())?,
                (BatchDmode1 | BatchDmode2, a) => {
                    let d = if id == BatchDmode1 { 1 } else { 2 };
                    if a == Oracle {
                        red_clique_batch_dmode(g, d, &mut BatchScan)?
                    } else {
                        red_clique_batch_dmode(g, d, &mut BatchDynMode)?
                    }
                }
                (DynDmode1, Oracle) => red_clique_dyn_dmode(g, 1, &mut DynModeScan::default())?,
                (DynDmode1, _) => red_clique_dyn_dmode(g, 1, &mut DynModeReal::default())?,
                (SubConn, Oracle) => red_4clique_subconn(g, &mut SubConnScan::default())?,
                (SubConn, Real) => red_4clique_subconn(g, &mut SubConnUnionFind::default())?,
                (SubConn, Fault) => red_4clique_subconn(g, &mut FlipFirst::new(SubConnScan::default()))?,
                (TwoPattern, Oracle) => red_4clique_2pattern(g, &mut DocScan::default())?,
                (TwoPattern, _) => red_4clique_2pattern(g, &mut DocCommonColors::default())?,
                (Color, Oracle) => red_4clique_color(g, &mut ColorScan::default(), false)?,
                (Color, _) => red_4clique_color(g, &mut ColorDyn::default(), false)?,
                (StReach, Oracle) => red_4clique_streach(g, &mut StReachScan::default())?,
                (StReach, Real) => red_4clique_streach(g, &mut StReachReverse::default())?,
                (StReach, Fault) => red_4clique_streach(g, &mut FlipFirst::new(StReachScan::default()))?,
                _ => return Err(unsupported(id, adapter)),
            };
            Ok(single(out))
        }
        (None, Instance::OuMv(i)) => {
            if Some(i.k) != id.oumv_order() {
                return Err(wrong_instance(id));
            }
            Ok(match (id, adapter) {
                (Skyline2 | Skyline3, Oracle) => red_oumvk_skyline(i, &mut skyline_scan())?,
                (Skyline2, _) => red_oumvk_skyline(i, &mut skyline_engine())?,
                (Skyline3, _) => red_oumvk_skyline(i, &mut skyline3_engine()?)?,
                (Klee2, Oracle) => red_oumvk_klee(i, &mut klee_scan(klee_side(i.n)?))?,
                (Klee2, _) => red_oumvk_klee(i, &mut klee_engine(klee_side(i.n)?))?,
                (Halfspace2 | Halfspace3, Oracle) => red_oumvk_halfspace(i, &mut HalfspaceScan::default())?,
                (Halfspace2 | Halfspace3, _) => red_oumvk_halfspace(i, &mut HalfspaceReal::default())?,
                (Hyperclique2 | Hyperclique3, Oracle) => red_oumvk_hyperclique(i, LazyHyperclique::new)?.0,
                (Hyperclique2 | Hyperclique3, Real) => red_oumvk_hyperclique(i, CountingHyperclique::new)?.0,
                (Hyperclique2 | Hyperclique3, Fault) => {
                    red_oumvk_hyperclique(i, |k, n, s| LazyHyperclique::new(k, n, s).map(FlipFirst::new))?.0
                }
                (Erickson2 | Erickson3, Oracle) => red_oumvk_erickson(i, |t| Ok(LazyErickson::new(t)))?.0,
                (Erickson2 | Erickson3, _) => red_oumvk_erickson(i, |t| Ok(EagerErickson::new(t)))?.0,
                (Langerman2 | Langerman3, Oracle) => red_oumvk_langerman(i, &mut LangermanScan::default())?,
                (Langerman2 | Langerman3, Real) => red_oumvk_langerman(i, &mut LangermanReal::default())?,
                (Langerman2 | Langerman3, Fault) => red_oumvk_langerman(i, &mut FlipFirst::new(LangermanScan::default()))?,
                _ => return Err(unsupported(id, adapter)),
            })
        }
        _ => Err(wrong_instance(id)),
    }
}

/// Settings for [`crosscheck_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    /// Largest part size or `N`; each reduction's default when `None`.
    pub max_size: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 1, instances: 200, max_size: None }
    }
}

/// Per-reduction summary lines and reproduction traces for mismatches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub lines: Vec<String>,
    pub mismatches: usize,
    pub repros: Vec<String>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        for r in &self.repros {
            write!(f, "{r}")?;
        }
        writeln!(f, "total mismatches={}", self.mismatches)
    }
}

fn instance_seed(seed: u64, id: ReductionId) -> u64 {
    let salt = ReductionId::ALL.iter().position(|&r| r == id).expect("listed") as u64;
    seed ^ (salt + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_graph(rng: &mut ChaCha8Rng, parts: usize, max_size: usize) -> KPartiteGraph {
    let sizes: Vec<usize> = (0..parts).map(|_| rng.gen_range(1..=max_size.max(1))).collect();
    let p = rng.gen_range(0.3..0.9);
    KPartiteGraph::random(rng, &sizes, p)
}

fn random_oumv(rng: &mut ChaCha8Rng, k: usize, n: usize) -> OuMvInstance {
    let density = rng.gen_range(0.02..0.4);
    let mut m = BTreeSet::new();
    let mut t = vec![1; k];
    'outer: loop {
        if rng.gen_bool(density) {
            m.insert(t.clone());
        }
        for i in (0..k).rev() {
            if t[i] < n {
                t[i] += 1;
                continue 'outer;
            }
            t[i] = 1;
        }
        break;
    }
    let q = rng.gen_range(1..=n);
    let fill = rng.gen_range(0.3..0.8);
    let queries = (0..q).map(|_| (0..k).map(|_| (1..=n).filter(|_| rng.gen_bool(fill)).collect()).collect()).collect();
    OuMvInstance { k, n, m, queries }
}

/// Random instance for `id` drawn from `rng`.
pub fn random_instance(id: ReductionId, rng: &mut ChaCha8Rng, max_size: usize) -> Instance {
    if let Some(parts) = id.graph_parts() {
        return Instance::Graph(random_graph(rng, parts, max_size));
    }
    let k = id.oumv_order().expect("OuMv reduction");
    let n = match id {
        ReductionId::Langerman2 => rng.gen_range(2..=max_size.max(2)),
        ReductionId::Langerman3 => {
            let b = ((max_size as f64).sqrt().floor() as usize).max(1);
            b * b
        }
        _ => rng.gen_range(1..=max_size.max(1)),
    };
    Instance::OuMv(random_oumv(rng, k, n))
}

/// Seeded instances for each reduction run through the chosen adapter and
/// compared with direct detection.
pub fn crosscheck_suite(config: &SuiteConfig, reductions: &[ReductionId], adapter: AdapterId) -> SuiteReport {
    let mut report = SuiteReport::default();
    for &id in reductions {
        if !id.supports(adapter) {
            report.lines.push(format!("{id} {adapter} skipped (no adapter)"));
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(config.seed, id));
        let size = config.max_size.unwrap_or(id.default_size());
        let (mut bad, mut updates, mut queries, mut positives) = (0usize, 0u64, 0u64, 0usize);
        for idx in 0..config.instances {
            let inst = random_instance(id, &mut rng, size);
            let expected = inst.expected();
            positives += expected.iter().filter(|&&b| b).count();
            let got = run_reduction(id, adapter, &inst);
            let mismatch = match &got {
                Ok(o) => {
                    updates += o.updates;
                    queries += o.queries;
                    (o.answer != expected).then(|| format!("expected {expected:?}, got {:?}", o.answer))
                }
                Err(e) => Some(format!("error: {e}")),
            };
            if let Some(what) = mismatch {
                bad += 1;
                report.repros.push(format!(
                    "mismatch {id} {adapter} seed={} instance={idx}: {what}\n{}",
                    config.seed,
                    inst.to_text()
                ));
            }
        }
        report.mismatches += bad;
        report.lines.push(format!(
            "{id} {adapter} instances={} positives={positives} updates={updates} queries={queries} mismatches={bad}",
            config.instances
        ));
    }
    report
}
