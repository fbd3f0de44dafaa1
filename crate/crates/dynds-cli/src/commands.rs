//! The `reduce`, `crosscheck` and `bench` commands, independent of argument parsing.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynds_core::reductions::io::{parse_graph, parse_oumv};
use dynds_core::reductions::{crosscheck_suite, run_reduction, AdapterId, Instance, ReductionId, SuiteConfig};
use dynds_core::scaling::{run_bench, BenchReport, BenchStructure};
use dynds_core::Error;

use crate::gen::random_trace;
use crate::solve::{solve, SolveError, Solved, StructureId};
use crate::trace::Problem;

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Answers of `id` on the instance text, one boolean per line, then the call counts.
pub fn reduce(text: &str, id: ReductionId, adapter: AdapterId) -> Result<String, Failure> {
    let input = |e: Error| Failure::new(2, format!("invalid instance: {e}"));
    let inst = if let Some(parts) = id.graph_parts() {
        let g = parse_graph(text).map_err(input)?;
        if g.parts() != parts {
            return Err(Failure::new(2, format!("arity mismatch: {id} needs {parts} parts, file has {}", g.parts())));
        }
        Instance::Graph(g)
    } else {
        let k = id.oumv_order().expect("OuMv reduction");
        let inst = parse_oumv(text).map_err(input)?;
        if inst.k != k {
            return Err(Failure::new(2, format!("arity mismatch: {id} needs order {k}, file has {}", inst.k)));
        }
        Instance::OuMv(inst)
    };
    if !id.supports(adapter) {
        return Err(Failure::new(2, format!("reduction {id} has no {adapter} adapter")));
    }
    let out = run_reduction(id, adapter, &inst).map_err(|e| match e {
        Error::InvalidArgument(_) | Error::Parse { .. } => input(e),
        e => Failure::new(1, format!("reduction failed: {e}")),
    })?;
    let mut s = String::new();
    for b in &out.answer {
        s += &format!("{b}\n");
    }
    s += &format!("updates={} queries={} builds={}\n", out.updates, out.queries, out.builds);
    Ok(s)
}

/// What a crosscheck run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Reductions with oracle and real adapters, plus every structure against its oracle.
    Default,
    Reductions,
    Structures,
    /// Reductions through the answer-flipping adapter; mismatches are expected.
    Fault,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> dynds_core::Result<Self> {
        match s {
            "default" => Ok(Scope::Default),
            "reductions" => Ok(Scope::Reductions),
            "structures" => Ok(Scope::Structures),
            "fault" => Ok(Scope::Fault),
            _ => Err(Error::InvalidArgument(format!("unknown scope `{s}`"))),
        }
    }
}

/// Summary lines and mismatch reproductions of a structure suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub lines: Vec<String>,
    pub mismatches: usize,
    pub repros: Vec<String>,
}

fn failure_index(s: &Solved) -> Option<usize> {
    s.error.as_ref().map(|e| match e {
        SolveError::Setup(_) => usize::MAX,
        SolveError::Op { index, .. } => *index,
    })
}

/// Random traces for each problem answered by the oracle and the real structure.
pub fn structure_suite(seed: u64, traces: usize, problems: &[Problem]) -> StructureReport {
    let mut report = StructureReport::default();
    for (salt, &p) in problems.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (salt as u64 + 101).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let (mut bad, mut queries) = (0usize, 0usize);
        for i in 0..traces {
            let size = rng.gen_range(1..=12);
            let t = random_trace(p, &mut rng, size);
            let (a, b) = (solve(&t, StructureId::Oracle), solve(&t, StructureId::Real));
            queries += a.lines.len();
            if a.lines != b.lines || failure_index(&a) != failure_index(&b) {
                bad += 1;
                let err = |s: &Solved| s.error.as_ref().map_or("none".into(), |e| e.to_string());
                report.repros.push(format!(
                    "mismatch structure {p} seed={seed} trace={i}: oracle {:?} (error {}), real {:?} (error {})\n{}",
                    a.lines,
                    err(&a),
                    b.lines,
                    err(&b),
                    t.to_text()
                ));
            }
        }
        report.mismatches += bad;
        report.lines.push(format!("structure {p} traces={traces} queries={queries} mismatches={bad}"));
    }
    report
}

/// Report text and whether it recorded zero mismatches.
pub fn crosscheck(seed: u64, scope: Scope, instances: Option<usize>) -> (String, bool) {
    let config = SuiteConfig { seed, instances: instances.unwrap_or(SuiteConfig::default().instances), max_size: None };
    let mut text = format!("crosscheck seed={seed} scope={scope:?}\n").to_lowercase();
    let mut total = 0;
    let adapters: &[AdapterId] = match scope {
        Scope::Default | Scope::Reductions => &[AdapterId::Oracle, AdapterId::Real],
        Scope::Fault => &[AdapterId::Fault],
        Scope::Structures => &[],
    };
    for &a in adapters {
        let r = crosscheck_suite(&config, &ReductionId::ALL, a);
        total += r.mismatches;
        for l in &r.lines {
            text += &format!("{l}\n");
        }
        for r in &r.repros {
            text += r;
        }
    }
    if matches!(scope, Scope::Default | Scope::Structures) {
        let r = structure_suite(seed, config.instances, &Problem::ALL);
        total += r.mismatches;
        for l in &r.lines {
            text += &format!("{l}\n");
        }
        for r in &r.repros {
            text += r;
        }
    }
    text += &format!("total mismatches={total}\n");
    (text, total == 0)
}

/// Scaling run; fewer than four sizes is an input error.
pub fn bench(structure: BenchStructure, sizes: Option<&[usize]>, seed: u64, tol: f64) -> Result<BenchReport, Failure> {
    let defaults = structure.default_sizes();
    let sizes = sizes.unwrap_or(&defaults);
    if sizes.len() < 4 {
        return Err(Failure::new(2, format!("need at least 4 sizes, got {}", sizes.len())));
    }
    run_bench(structure, sizes, seed, tol).map_err(|e| Failure::new(2, format!("bench failed: {e}")))
}
