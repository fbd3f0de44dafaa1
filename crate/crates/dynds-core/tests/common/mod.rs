//! Helpers shared by integration tests.
#![allow(dead_code)]

use dynds_core::geom::{Bound, BoxD, OrthantUnion3D, PointD};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Length of the interval clipped to `[lo, hi]`.
pub fn clipped_len(a: &dynds_core::geom::Interval, lo: i64, hi: i64) -> i64 {
    let l = match a.lo {
        Bound::Closed(v) | Bound::Open(v) => v.raw().max(lo),
        _ => lo,
    };
    let h = match a.hi {
        Bound::Closed(v) | Bound::Open(v) => v.raw().min(hi),
        _ => hi,
    };
    (h - l).max(0)
}

pub fn clipped_volume(b: &BoxD, lo: i64, hi: i64) -> i64 {
    b.axes().iter().map(|a| clipped_len(a, lo, hi)).product()
}

/// Union volume of lower orthants clipped to `[lo, hi]^3`, by compressed cell scan.
pub fn grid_union_volume(corners: &[[i64; 3]], lo: i64, hi: i64) -> i64 {
    let mut cuts: Vec<Vec<i64>> = (0..3)
        .map(|ax| {
            let mut v: Vec<i64> = corners.iter().map(|c| c[ax].clamp(lo, hi)).chain([lo, hi]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let (xs, ys, zs) = (cuts.remove(0), cuts.remove(0), cuts.remove(0));
    let mut vol = 0;
    for wx in xs.windows(2) {
        for wy in ys.windows(2) {
            for wz in zs.windows(2) {
                let mid = [wx[0] + wx[1], wy[0] + wy[1], wz[0] + wz[1]];
                if corners.iter().any(|c| (0..3).all(|i| mid[i] <= 2 * c[i])) {
                    vol += (wx[1] - wx[0]) * (wy[1] - wy[0]) * (wz[1] - wz[0]);
                }
            }
        }
    }
    vol
}

/// Disjointness, at most two boxes per corner, clipped volume and coverage
/// of half-integer samples in `[-2, 23]^3`.
pub fn check_decomposition(corners: &[[i64; 3]], rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pts: Vec<PointD> = corners.iter().map(|c| PointD::ints(c)).collect();
    let boxes = OrthantUnion3D::new(pts).decompose().map_err(|e| e.to_string())?;
    if boxes.len() > 2 * corners.len() {
        return Err(format!("{} boxes for {} corners", boxes.len(), corners.len()));
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].intersects(&boxes[j]) {
                return Err(format!("boxes {i} and {j} overlap"));
            }
        }
    }
    let total: i64 = boxes.iter().map(|b| clipped_volume(b, 0, 20)).sum();
    let want = grid_union_volume(corners, 0, 20);
    if total != want {
        return Err(format!("clipped volume {total}, expected {want}"));
    }
    // Half-integer samples see open/closed faces exactly.
    let halves: Vec<BoxD> = boxes.iter().map(double).collect();
    for _ in 0..1000 {
        let s = [rng.gen_range(-4..46), rng.gen_range(-4..46), rng.gen_range(-4..46)];
        let in_union = corners.iter().any(|c| (0..3).all(|i| s[i] <= 2 * c[i]));
        let p = PointD::from_raw(&s, 2).unwrap();
        let hits = halves.iter().filter(|b| b.contains(&p)).count();
        if hits != usize::from(in_union) {
            return Err(format!("sample {s:?} lies in {hits} boxes"));
        }
    }
    Ok(())
}

/// Same box at scale 2.
pub fn double(b: &BoxD) -> BoxD {
    use dynds_core::geom::{Interval, ScaledInt};
    let f = |bd: Bound| match bd {
        Bound::Closed(v) => Bound::Closed(ScaledInt::new(2 * v.raw(), 2).unwrap()),
        Bound::Open(v) => Bound::Open(ScaledInt::new(2 * v.raw(), 2).unwrap()),
        other => other,
    };
    BoxD::new(b.axes().iter().map(|a| Interval { lo: f(a.lo), hi: f(a.hi) }).collect()).unwrap()
}

