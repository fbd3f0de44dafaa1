use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{AggregateMode, OrthantUnion3D, PointD, RangeTree};
use crate::geom_dyn::semi_online::BlockProblem;

fn check_points(points: &[PointD], dim: Option<usize>) -> Result<(usize, i64)> {
    let Some(first) = points.first() else {
        return Ok((dim.unwrap_or(0), 1));
    };
    let (d, scale) = (dim.unwrap_or(first.dim()), first.scale());
    for p in points {
        p.check_compatible(d, scale)?;
    }
    Ok((d, scale))
}

/// Number of points not dominated by another point of the multiset.
///
/// `q` dominates `p` when `p_i ≤ q_i` on every axis; coincident copies
/// dominate each other, so a duplicated point is never counted.
pub fn skyline_oracle(points: &[PointD]) -> Result<usize> {
    check_points(points, None)?;
    let raw: Vec<Vec<i64>> = points.iter().map(PointD::raw_coords).collect();
    let count = (0..raw.len())
        .filter(|&i| !(0..raw.len()).any(|j| j != i && raw[i].iter().zip(&raw[j]).all(|(a, b)| a <= b)))
        .count();
    Ok(count)
}

/// Preprocessed core of the 3D skyline block problem.
#[derive(Clone, Debug)]
pub struct SkylineSummary {
    all: RangeTree,
    sky: RangeTree,
    sky_len: usize,
    scale: Option<i64>,
}

impl SkylineSummary {
    /// Skyline size of the core alone.
    pub fn core_skyline(&self) -> usize {
        self.sky_len
    }
}

fn count_tree(points: &[Vec<i64>], scale: i64) -> Result<RangeTree> {
    let coords: Vec<i64> = points.iter().flatten().copied().collect();
    let mut t = RangeTree::from_raw(3, scale, coords, vec![0; points.len()], AggregateMode::Count)?;
    for k in 0..points.len() {
        t.toggle(k, true)?;
    }
    Ok(t)
}

fn upper_orthant(p: &[i64]) -> [(i64, i64); 3] {
    [(p[0], i64::MAX), (p[1], i64::MAX), (p[2], i64::MAX)]
}

fn exact(p: &[i64]) -> [(i64, i64); 3] {
    [(p[0], p[0]), (p[1], p[1]), (p[2], p[2])]
}

/// Skyline counting in 3D as a block problem (`α = 1`, `β = 1`).
///
/// The core keeps its own skyline `S₀` in a counting tree. A block query
/// finds the buffer values not strictly dominated by anything, decomposes
/// the union of their lower orthants into disjoint boxes, and subtracts the
/// `S₀` points inside those boxes.
#[derive(Clone, Debug, Default)]
pub struct Skyline3dBlock {
    work: u64,
}

impl Skyline3dBlock {
    pub fn new() -> Self {
        Self::default()
    }

    fn charge(&mut self, trees: &[&RangeTree], before: u64) {
        let now: u64 = trees.iter().map(|t| t.visits()).sum();
        self.work += now - before;
    }
}

impl BlockProblem for Skyline3dBlock {
    type Summary = SkylineSummary;
    type Answer = usize;

    fn alpha(&self) -> f64 {
        1.0
    }

    fn beta(&self) -> f64 {
        1.0
    }

    fn preprocess(&mut self, core: &[PointD]) -> Result<SkylineSummary> {
        let (_, scale) = check_points(core, Some(3))?;
        let raw: Vec<Vec<i64>> = core.iter().map(PointD::raw_coords).collect();
        let all = count_tree(&raw, scale)?;
        let mut sky_pts = Vec::new();
        for p in &raw {
            if all.count_raw(&upper_orthant(p))? == 1 {
                sky_pts.push(p.clone());
            }
        }
        let sky = count_tree(&sky_pts, scale)?;
        self.work += all.visits() + all.build_cost() + sky.visits() + sky.build_cost();
        all.reset_visits();
        sky.reset_visits();
        let scale = (!core.is_empty()).then_some(scale);
        Ok(SkylineSummary { all, sky, sky_len: sky_pts.len(), scale })
    }

    fn block_query(&mut self, summary: &SkylineSummary, buffer: &[PointD]) -> Result<usize> {
        if buffer.is_empty() {
            return Ok(summary.sky_len);
        }
        let (_, scale) = check_points(buffer, Some(3))?;
        if let Some(core_scale) = summary.scale {
            if core_scale != scale {
                return Err(Error::ScaleMismatch { expected: core_scale, got: scale });
            }
        }
        let mut mult: HashMap<Vec<i64>, usize> = HashMap::new();
        for p in buffer {
            *mult.entry(p.raw_coords()).or_insert(0) += 1;
        }
        let mut distinct: Vec<Vec<i64>> = mult.keys().cloned().collect();
        distinct.sort_unstable();
        let local = count_tree(&distinct, scale)?;
        self.work += local.build_cost() + distinct.len() as u64;
        let before = summary.all.visits() + summary.sky.visits() + local.visits();

        let mut fresh = 0;
        let mut maximal = Vec::new();
        for v in &distinct {
            let up = upper_orthant(v);
            let in_core_at = summary.all.count_raw(&exact(v))?;
            let strictly_above = summary.all.count_raw(&up)? - in_core_at + local.count_raw(&up)? - 1;
            if strictly_above == 0 {
                if mult[v] == 1 && in_core_at == 0 {
                    fresh += 1;
                }
                maximal.push(PointD::from_raw(v, scale)?);
            }
        }
        let boxes = OrthantUnion3D::new(maximal).decompose()?;
        let mut covered = 0;
        if summary.sky_len > 0 {
            for b in &boxes {
                covered += summary.sky.count(b)?;
            }
        }
        self.work += boxes.len() as u64;
        self.charge(&[&summary.all, &summary.sky, &local], before);
        Ok(fresh + summary.sky_len - covered as usize)
    }

    fn visits(&self) -> u64 {
        self.work
    }
}
