use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Set `M ⊆ [n]^k` with queries `U^(1) × ⋯ × U^(k)` asking whether the product meets `M`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OuMvInstance {
    pub k: usize,
    pub n: usize,
    pub m: BTreeSet<Vec<usize>>,
    pub queries: Vec<Vec<BTreeSet<usize>>>,
}

impl OuMvInstance {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n == 0 {
            return Err(Error::InvalidArgument("k and n must be positive".into()));
        }
        let in_range = |v: usize| (1..=self.n).contains(&v);
        for t in &self.m {
            if t.len() != self.k || !t.iter().all(|&v| in_range(v)) {
                return Err(Error::InvalidArgument(format!("tuple {t:?} not in [{}]^{}", self.n, self.k)));
            }
        }
        for (i, q) in self.queries.iter().enumerate() {
            if q.len() != self.k || !q.iter().flatten().all(|&v| in_range(v)) {
                return Err(Error::InvalidArgument(format!("query {i} is not {} subsets of [{}]", self.k, self.n)));
            }
        }
        Ok(())
    }
}

fn hits(m: &BTreeSet<Vec<usize>>, u: &[BTreeSet<usize>]) -> bool {
    m.iter().any(|t| t.iter().zip(u).all(|(v, s)| s.contains(v)))
}

/// Answer every query by scanning `M`.
pub fn oumv_bruteforce(inst: &OuMvInstance) -> Vec<bool> {
    inst.queries.iter().map(|u| hits(&inst.m, u)).collect()
}

/// Online solver for a fixed `M`.
pub trait OuMvSolver {
    fn query(&mut self, u: &[BTreeSet<usize>]) -> bool;

    fn visits(&self) -> u64 {
        0
    }
}

/// Scans `M` per query.
#[derive(Clone, Debug)]
pub struct ScanSolver {
    m: BTreeSet<Vec<usize>>,
    visits: u64,
}

impl ScanSolver {
    pub fn new(m: BTreeSet<Vec<usize>>) -> Self {
        Self { m, visits: 0 }
    }
}

impl OuMvSolver for ScanSolver {
    fn query(&mut self, u: &[BTreeSet<usize>]) -> bool {
        self.visits += self.m.len() as u64 + 1;
        hits(&self.m, u)
    }

    fn visits(&self) -> u64 {
        self.visits
    }
}

/// Counters from one batched run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchedRun {
    pub answers: Vec<bool>,
    pub sub_tensors: usize,
    pub inner_queries: u64,
    pub rebuilds: u64,
}

/// Answer `inst` by splitting `[N]^k` into sub-tensors of side `sub_side`.
///
/// Each sub-tensor gets its own solver from `factory(k, sub_side, M_sub)` with
/// `M_sub` translated to `[sub_side]^k`. A query is cut into per-sub-tensor
/// queries and the answers are OR-ed. Every `phase_size` queries all solvers
/// are rebuilt from scratch. When `sub_side` does not divide `N` the universe
/// is padded to the next multiple; padded coordinates never occur in `M`.
pub fn oumv_batched_driver<S, F>(
    inst: &OuMvInstance,
    sub_side: usize,
    phase_size: usize,
    mut factory: F,
) -> Result<BatchedRun>
where
    S: OuMvSolver,
    F: FnMut(usize, usize, &BTreeSet<Vec<usize>>) -> S,
{
    inst.validate()?;
    let (k, n) = (inst.k, inst.n);
    if sub_side == 0 || sub_side > n {
        return Err(Error::InvalidArgument(format!("sub-tensor side {sub_side} outside [1,{n}]")));
    }
    if phase_size == 0 || phase_size > n {
        return Err(Error::InvalidArgument(format!("phase size {phase_size} outside [1,{n}]")));
    }
    let per_axis = n.div_ceil(sub_side);
    let blocks = per_axis.checked_pow(k as u32).ok_or(Error::Overflow)?;
    let block_coords = |mut b: usize| -> Vec<usize> {
        let mut c = vec![0; k];
        for ax in (0..k).rev() {
            c[ax] = b % per_axis;
            b /= per_axis;
        }
        c
    };
    let mut parts: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); blocks];
    for t in &inst.m {
        let b = t.iter().fold(0, |acc, &v| acc * per_axis + (v - 1) / sub_side);
        parts[b].insert(t.iter().map(|&v| (v - 1) % sub_side + 1).collect());
    }
    let mut build = |parts: &[BTreeSet<Vec<usize>>]| -> Vec<S> { parts.iter().map(|p| factory(k, sub_side, p)).collect() };
    let mut solvers = build(&parts);
    let mut run = BatchedRun { sub_tensors: blocks, ..Default::default() };
    for (i, u) in inst.queries.iter().enumerate() {
        if i > 0 && i % phase_size == 0 {
            solvers = build(&parts);
            run.rebuilds += 1;
        }
        let mut answer = false;
        for (b, solver) in solvers.iter_mut().enumerate() {
            let c = block_coords(b);
            let sub: Vec<BTreeSet<usize>> = (0..k)
                .map(|ax| {
                    let lo = c[ax] * sub_side;
                    u[ax].range(lo + 1..=lo + sub_side).map(|&v| v - lo).collect()
                })
                .collect();
            if sub.iter().any(|s| s.is_empty()) {
                continue;
            }
            run.inner_queries += 1;
            answer |= solver.query(&sub);
        }
        run.answers.push(answer);
    }
    Ok(run)
}
