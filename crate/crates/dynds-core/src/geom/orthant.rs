use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Unbounded};

use crate::error::Result;
use crate::geom::{Bound, BoxD, Interval, PointD, ScaledInt};

/// Union of lower orthants `Q(p) = (−∞,x]×(−∞,y]×(−∞,z]`.
#[derive(Clone, Debug, Default)]
pub struct OrthantUnion3D {
    pub corners: Vec<PointD>,
}

#[derive(Clone, Copy, Debug)]
struct Step {
    y: i64,
    left: Option<i64>,
    birth_z: i64,
}

impl OrthantUnion3D {
    pub fn new(corners: Vec<PointD>) -> Self {
        Self { corners }
    }

    /// Pairwise-disjoint boxes covering the union, at most `2·|corners|`.
    ///
    /// Sweeps corners by decreasing z while maintaining the (x, y) staircase.
    /// A step of the staircase is the strip `(left, x] × (−∞, y]`; each step
    /// becomes one box spanning the z-range over which it stayed unchanged.
    pub fn decompose(&self) -> Result<Vec<BoxD>> {
        let Some(first) = self.corners.first() else {
            return Ok(Vec::new());
        };
        let scale = first.scale();
        let mut pts = Vec::with_capacity(self.corners.len());
        for c in &self.corners {
            c.check_compatible(3, scale)?;
            pts.push((c.raw(0), c.raw(1), c.raw(2)));
        }
        pts.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));

        let mut stairs: BTreeMap<i64, Step> = BTreeMap::new();
        let mut out = Vec::new();
        let mut i = 0;
        while i < pts.len() {
            let z = pts[i].2;
            while i < pts.len() && pts[i].2 == z {
                let (x, y, _) = pts[i];
                i += 1;
                if stairs.range(x..).next().is_some_and(|(_, s)| s.y >= y) {
                    continue;
                }
                let dominated: Vec<i64> = stairs.range(..=x).rev().take_while(|(_, s)| s.y <= y).map(|(&k, _)| k).collect();
                for k in dominated {
                    let s = stairs.remove(&k).expect("key just listed");
                    emit(&mut out, k, s, Some(z), scale)?;
                }
                let left = stairs.range(..x).next_back().map(|(&k, _)| k);
                if let Some((&kx, &succ)) = stairs.range((Excluded(x), Unbounded)).next() {
                    emit(&mut out, kx, succ, Some(z), scale)?;
                    stairs.insert(kx, Step { y: succ.y, left: Some(x), birth_z: z });
                }
                stairs.insert(x, Step { y, left, birth_z: z });
            }
        }
        for (k, s) in stairs {
            emit(&mut out, k, s, None, scale)?;
        }
        Ok(out)
    }
}

/// Emit the box of a step that lived over `(death_z, birth_z]`.
fn emit(out: &mut Vec<BoxD>, x: i64, s: Step, death_z: Option<i64>, scale: i64) -> Result<()> {
    if death_z == Some(s.birth_z) {
        return Ok(());
    }
    let v = |r: i64| ScaledInt::new(r, scale);
    let lo_x = match s.left {
        Some(l) => Bound::Open(v(l)?),
        None => Bound::NegInf,
    };
    let lo_z = match death_z {
        Some(d) => Bound::Open(v(d)?),
        None => Bound::NegInf,
    };
    out.push(BoxD::new(vec![
        Interval { lo: lo_x, hi: Bound::Closed(v(x)?) },
        Interval { lo: Bound::NegInf, hi: Bound::Closed(v(s.y)?) },
        Interval { lo: lo_z, hi: Bound::Closed(v(s.birth_z)?) },
    ])?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        assert!(OrthantUnion3D::default().decompose().unwrap().is_empty());
    }

    #[test]
    fn single_corner_is_one_orthant() {
        let boxes = OrthantUnion3D::new(vec![PointD::ints(&[1, 1, 1])]).decompose().unwrap();
        assert_eq!(boxes.len(), 1);
        let one = ScaledInt::new(1, 1).unwrap();
        let expect = Interval { lo: Bound::NegInf, hi: Bound::Closed(one) };
        assert!(boxes[0].axes().iter().all(|a| *a == expect));
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(OrthantUnion3D::new(vec![PointD::ints(&[1, 1])]).decompose().is_err());
    }
}
