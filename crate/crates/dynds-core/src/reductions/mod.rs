//! Reductions from clique detection and OuMv to the dynamic problems, each
//! driving a pluggable target, plus the graph baselines and a seeded
//! cross-check suite comparing reduction outputs with direct detection.

mod clique;
mod graph;
pub mod io;
mod oumv;
mod suite;
pub mod targets;

pub use clique::{
    red_4clique_2pattern, red_4clique_color, red_4clique_range_minority, red_4clique_range_mode,
    red_4clique_streach, red_4clique_subconn, red_clique_batch_dmode, red_clique_dyn_dmode,
};
pub use graph::{clique_bruteforce, KPartiteGraph, StReachOracle, SubConnOracle, Vertex};
pub use oumv::{
    hyperclique_size, hyperclique_vertex, indicator_tensor, langerman_tensor, red_oumvk_erickson,
    red_oumvk_halfspace, red_oumvk_hyperclique, red_oumvk_klee, red_oumvk_langerman, red_oumvk_skyline,
};
pub use suite::{crosscheck_suite, random_instance, run_reduction, AdapterId, Instance, ReductionId, SuiteConfig, SuiteReport};

use crate::error::{Error, Result};

/// Reduction answer with the number of target calls it made.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome<A> {
    pub answer: A,
    pub updates: u64,
    pub queries: u64,
    pub builds: u64,
}

impl<A> Outcome<A> {
    pub fn new(answer: A) -> Self {
        Self { answer, updates: 0, queries: 0, builds: 0 }
    }
}

/// Fails when a phase changed a target that reports fingerprints.
pub(crate) fn check_restored(before: Option<u64>, after: Option<u64>, phase: usize) -> Result<()> {
    match (before, after) {
        (Some(b), Some(a)) if a != b => Err(Error::PhaseNotRestored(phase)),
        _ => Ok(()),
    }
}
