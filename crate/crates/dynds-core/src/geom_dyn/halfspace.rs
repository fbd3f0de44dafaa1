use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::geom::{PointD, ScaledInt};

/// `normal · q < offset` when strict, `normal · q ≤ offset` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: ScaledInt,
    pub strict: bool,
}

impl Halfspace {
    pub fn new(normal: Vec<i64>, offset: ScaledInt, strict: bool) -> Self {
        Self { normal, offset, strict }
    }

    /// Membership on raw coordinates sharing the offset's scale.
    pub fn contains_raw(&self, q: &[i64]) -> bool {
        let dot: i128 = self.normal.iter().zip(q).map(|(&a, &b)| a as i128 * b as i128).sum();
        let off = self.offset.raw() as i128;
        if self.strict {
            dot < off
        } else {
            dot <= off
        }
    }

    pub fn contains(&self, q: &PointD) -> Result<bool> {
        q.check_compatible(self.normal.len(), self.offset.scale())?;
        Ok(self.contains_raw(&q.raw_coords()))
    }
}

/// Halfspaces `H` and points `Q` with every `c_H(q)` kept current.
///
/// Both sets are multisets keyed by value. A halfspace update touches every
/// distinct point and a point update touches every distinct halfspace.
#[derive(Clone, Debug)]
pub struct HalfspaceSystem {
    dim: usize,
    scale: i64,
    halfspaces: HashMap<Halfspace, usize>,
    /// Distinct point → (multiplicity, containment count).
    points: HashMap<Vec<i64>, (usize, u64)>,
    /// Containment count → number of point copies with that count.
    counts: BTreeMap<u64, usize>,
    work: u64,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, scale: i64) -> Result<Self> {
        if dim == 0 || scale <= 0 {
            return Err(Error::InvalidArgument("dimension and scale must be positive".into()));
        }
        Ok(Self { dim, scale, halfspaces: HashMap::new(), points: HashMap::new(), counts: BTreeMap::new(), work: 0 })
    }

    pub fn visits(&self) -> u64 {
        self.work
    }

    pub fn num_halfspaces(&self) -> usize {
        self.halfspaces.values().sum()
    }

    pub fn num_points(&self) -> usize {
        self.points.values().map(|(m, _)| m).sum()
    }

    fn check_halfspace(&self, h: &Halfspace) -> Result<()> {
        if h.normal.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: h.normal.len() });
        }
        if h.offset.scale() != self.scale {
            return Err(Error::ScaleMismatch { expected: self.scale, got: h.offset.scale() });
        }
        Ok(())
    }

    fn shift(counts: &mut BTreeMap<u64, usize>, from: u64, to: u64, copies: usize) {
        let slot = counts.get_mut(&from).expect("count present");
        *slot -= copies;
        if *slot == 0 {
            counts.remove(&from);
        }
        *counts.entry(to).or_insert(0) += copies;
    }

    fn apply_halfspace(&mut self, h: &Halfspace, add: bool) {
        for (q, (mult, c)) in self.points.iter_mut() {
            self.work += 1;
            if h.contains_raw(q) {
                let next = if add { *c + 1 } else { *c - 1 };
                Self::shift(&mut self.counts, *c, next, *mult);
                *c = next;
            }
        }
    }

    pub fn insert_halfspace(&mut self, h: Halfspace) -> Result<()> {
        self.check_halfspace(&h)?;
        self.apply_halfspace(&h, true);
        *self.halfspaces.entry(h).or_insert(0) += 1;
        Ok(())
    }

    pub fn delete_halfspace(&mut self, h: &Halfspace) -> Result<()> {
        let slot = self.halfspaces.get_mut(h).ok_or_else(|| Error::Absent(format!("halfspace {h:?}")))?;
        *slot -= 1;
        if *slot == 0 {
            self.halfspaces.remove(h);
        }
        self.apply_halfspace(h, false);
        Ok(())
    }

    pub fn insert_point(&mut self, q: &PointD) -> Result<()> {
        q.check_compatible(self.dim, self.scale)?;
        let raw = q.raw_coords();
        let c = match self.points.get_mut(&raw) {
            Some((mult, c)) => {
                *mult += 1;
                self.work += 1;
                *c
            }
            None => {
                self.work += self.halfspaces.len() as u64;
                let c = self.halfspaces.iter().filter(|(h, _)| h.contains_raw(&raw)).map(|(_, &m)| m as u64).sum();
                self.points.insert(raw, (1, c));
                c
            }
        };
        *self.counts.entry(c).or_insert(0) += 1;
        Ok(())
    }

    pub fn delete_point(&mut self, q: &PointD) -> Result<()> {
        q.check_compatible(self.dim, self.scale)?;
        let raw = q.raw_coords();
        let (mult, c) = self.points.get_mut(&raw).ok_or_else(|| Error::Absent(format!("point {raw:?}")))?;
        let c = *c;
        *mult -= 1;
        if *mult == 0 {
            self.points.remove(&raw);
        }
        let slot = self.counts.get_mut(&c).expect("count present");
        *slot -= 1;
        if *slot == 0 {
            self.counts.remove(&c);
        }
        self.work += 1;
        Ok(())
    }

    /// `c_H(q)` of a live point.
    pub fn count_of(&self, q: &PointD) -> Option<u64> {
        self.points.get(&q.raw_coords()).map(|&(_, c)| c)
    }

    /// `min_{q ∈ Q} c_H(q)`.
    pub fn query_min(&self) -> Result<u64> {
        self.counts.keys().next().copied().ok_or_else(|| Error::InvalidArgument("point set is empty".into()))
    }
}
