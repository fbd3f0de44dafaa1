use crate::error::{Error, Result};
use crate::geom::ScaledInt;

/// A point with `d ≥ 1` coordinates sharing one scale.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointD {
    coords: Vec<ScaledInt>,
    pub payload: Option<u64>,
}

impl PointD {
    pub fn new(coords: Vec<ScaledInt>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::InvalidArgument("point needs d >= 1".into()))?;
        for c in &coords {
            if c.scale() != first.scale() {
                return Err(Error::ScaleMismatch { expected: first.scale(), got: c.scale() });
            }
        }
        Ok(Self { coords, payload: None })
    }

    pub fn from_raw(raw: &[i64], scale: i64) -> Result<Self> {
        let coords = raw.iter().map(|&r| ScaledInt::new(r, scale)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    /// Point with integer coordinates at scale 1.
    pub fn ints(values: &[i64]) -> Self {
        Self::from_raw(values, 1).expect("non-empty integer point")
    }

    pub fn with_payload(mut self, payload: u64) -> Self {
        self.payload = Some(payload);
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self) -> i64 {
        self.coords[0].scale()
    }

    pub fn coords(&self) -> &[ScaledInt] {
        &self.coords
    }

    pub fn raw(&self, axis: usize) -> i64 {
        self.coords[axis].raw()
    }

    pub fn raw_coords(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.raw()).collect()
    }

    pub(crate) fn check_compatible(&self, dim: usize, scale: i64) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        if self.scale() != scale {
            return Err(Error::ScaleMismatch { expected: scale, got: self.scale() });
        }
        Ok(())
    }
}

/// One side of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    PosInf,
    Closed(ScaledInt),
    Open(ScaledInt),
}

impl Bound {
    fn finite(self) -> Option<ScaledInt> {
        match self {
            Bound::Closed(v) | Bound::Open(v) => Some(v),
            _ => None,
        }
    }

    /// Smallest raw value admitted by this lower bound, `None` if nothing is.
    fn lower_raw(self) -> Option<i64> {
        match self {
            Bound::NegInf => Some(i64::MIN),
            Bound::Closed(v) => Some(v.raw()),
            Bound::Open(v) => v.raw().checked_add(1),
            Bound::PosInf => None,
        }
    }

    /// Largest raw value admitted by this upper bound, `None` if nothing is.
    fn upper_raw(self) -> Option<i64> {
        match self {
            Bound::PosInf => Some(i64::MAX),
            Bound::Closed(v) => Some(v.raw()),
            Bound::Open(v) => v.raw().checked_sub(1),
            Bound::NegInf => None,
        }
    }
}

/// Axis interval between two bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn closed(lo: ScaledInt, hi: ScaledInt) -> Self {
        Self { lo: Bound::Closed(lo), hi: Bound::Closed(hi) }
    }

    pub fn everything() -> Self {
        Self { lo: Bound::NegInf, hi: Bound::PosInf }
    }

    pub fn contains(&self, v: ScaledInt) -> bool {
        let above = match self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Closed(l) => v >= l,
            Bound::Open(l) => v > l,
        };
        let below = match self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Closed(h) => v <= h,
            Bound::Open(h) => v < h,
        };
        above && below
    }

    fn validate(&self) -> Result<()> {
        if matches!(self.lo, Bound::PosInf) || matches!(self.hi, Bound::NegInf) {
            return Err(Error::InvalidBox("infinite bound on the wrong side".into()));
        }
        if let (Some(l), Some(h)) = (self.lo.finite(), self.hi.finite()) {
            match l.cmp_exact(h)? {
                std::cmp::Ordering::Greater => {
                    return Err(Error::InvalidBox(format!("lower {l} above upper {h}")));
                }
                std::cmp::Ordering::Equal => {
                    if !matches!((self.lo, self.hi), (Bound::Closed(_), Bound::Closed(_))) {
                        return Err(Error::InvalidBox(format!("degenerate interval at {l} must be closed")));
                    }
                }
                std::cmp::Ordering::Less => {}
            }
        }
        Ok(())
    }

    /// True if the intervals share a point of the real line.
    pub fn intersects(&self, other: &Interval) -> bool {
        // Lower bounds as (value, excluded); larger wins. NegInf is below everything.
        let lo = |b: Bound| match b {
            Bound::Closed(v) => Some((v, false)),
            Bound::Open(v) => Some((v, true)),
            _ => None,
        };
        let (l1, l2, h1, h2) = (lo(self.lo), lo(other.lo), lo(self.hi), lo(other.hi));
        let l = match (l1, l2) {
            (Some(a), Some(b)) => Some(if (a.0, a.1) >= (b.0, b.1) { a } else { b }),
            (a, b) => a.or(b),
        };
        let h = match (h1, h2) {
            (Some(a), Some(b)) => Some(if (a.0, !a.1) <= (b.0, !b.1) { a } else { b }),
            (a, b) => a.or(b),
        };
        match (l, h) {
            (Some((lv, lopen)), Some((hv, hopen))) => lv < hv || (lv == hv && !lopen && !hopen),
            _ => true,
        }
    }

    /// Inclusive raw range; `lo > hi` encodes an interval with no integer raw value.
    pub fn raw_range(&self) -> (i64, i64) {
        match (self.lo.lower_raw(), self.hi.upper_raw()) {
            (Some(l), Some(h)) => (l, h),
            _ => (1, 0),
        }
    }
}

/// Axis-aligned box with per-axis open/closed/infinite bounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxD {
    axes: Vec<Interval>,
}

impl BoxD {
    pub fn new(axes: Vec<Interval>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidBox("box needs d >= 1".into()));
        }
        let mut scale = None;
        for a in &axes {
            a.validate()?;
            for v in [a.lo.finite(), a.hi.finite()].into_iter().flatten() {
                match scale {
                    None => scale = Some(v.scale()),
                    Some(s) if s != v.scale() => return Err(Error::ScaleMismatch { expected: s, got: v.scale() }),
                    _ => {}
                }
            }
        }
        Ok(Self { axes })
    }

    /// Closed box `[lo_i, hi_i]` from raw values.
    pub fn closed_raw(ranges: &[(i64, i64)], scale: i64) -> Result<Self> {
        let axes = ranges
            .iter()
            .map(|&(l, h)| Ok(Interval::closed(ScaledInt::new(l, scale)?, ScaledInt::new(h, scale)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Interval] {
        &self.axes
    }

    /// Scale of the finite bounds, if any.
    pub fn scale(&self) -> Option<i64> {
        self.axes.iter().flat_map(|a| [a.lo.finite(), a.hi.finite()]).flatten().map(|v| v.scale()).next()
    }

    pub fn contains(&self, p: &PointD) -> bool {
        p.dim() == self.dim() && self.axes.iter().zip(p.coords()).all(|(a, &c)| a.contains(c))
    }

    /// Per-axis inclusive raw ranges after checking dimension and scale.
    pub fn raw_ranges(&self, dim: usize, scale: i64) -> Result<Vec<(i64, i64)>> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        if let Some(s) = self.scale() {
            if s != scale {
                return Err(Error::ScaleMismatch { expected: scale, got: s });
            }
        }
        Ok(self.axes.iter().map(Interval::raw_range).collect())
    }

    /// True if the boxes share a point of real space.
    pub fn intersects(&self, other: &BoxD) -> bool {
        self.axes.iter().zip(&other.axes).all(|(a, b)| a.intersects(b))
    }
}

/// True iff `q` dominates `p`: `p_i ≤ q_i` on every axis and `p ≠ q`.
pub fn dominates(p: &PointD, q: &PointD) -> Result<bool> {
    q.check_compatible(p.dim(), p.scale())?;
    let weakly = p.coords().iter().zip(q.coords()).all(|(a, b)| a <= b);
    Ok(weakly && p.coords() != q.coords())
}
