use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::geom::{PointD, ScaledInt};

/// Largest compressed grid the unit-cube oracle accepts.
pub const KLEE_GRID_LIMIT: u128 = 100_000_000;

/// Exact volume of the union of closed cubes `[c − side, c]^d`, each given by its largest corner `c`.
///
/// Coordinates are compressed per axis; each cube marks a block of grid cells
/// in a d-dimensional difference array and the covered cells' volumes are summed.
pub fn klee_unit_oracle(corners: &[PointD], side: ScaledInt) -> Result<Ratio<i128>> {
    let Some(first) = corners.first() else {
        return Ok(Ratio::from_integer(0));
    };
    let (d, scale) = (first.dim(), side.scale());
    if side.raw() <= 0 {
        return Err(Error::InvalidArgument(format!("cube side {side} is not positive")));
    }
    for c in corners {
        c.check_compatible(d, scale)?;
    }
    let lo_of = |c: &PointD, ax: usize| c.coords()[ax].checked_sub(side).map(ScaledInt::raw);
    let mut axes: Vec<Vec<i64>> = Vec::with_capacity(d);
    for ax in 0..d {
        let mut v = Vec::with_capacity(2 * corners.len());
        for c in corners {
            v.push(lo_of(c, ax)?);
            v.push(c.raw(ax));
        }
        v.sort_unstable();
        v.dedup();
        axes.push(v);
    }
    let cells: u128 = axes.iter().map(|a| a.len() as u128).product();
    if cells > KLEE_GRID_LIMIT {
        return Err(Error::GridTooLarge(cells));
    }
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let mut strides = vec![1usize; d];
    for ax in 1..d {
        strides[ax] = strides[ax - 1] * dims[ax - 1];
    }
    let mut diff = vec![0i32; cells as usize];
    for c in corners {
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for ax in 0..d {
            let l = lo_of(c, ax)?;
            lo.push(axes[ax].binary_search(&l).expect("own coordinate"));
            hi.push(axes[ax].binary_search(&c.raw(ax)).expect("own coordinate"));
        }
        // Cell i spans axes[i]..axes[i+1]; the cube covers cells lo..hi on each axis.
        for corner in 0..(1usize << d) {
            let mut idx = 0;
            let mut sign = 1;
            for ax in 0..d {
                if corner >> ax & 1 == 1 {
                    idx += hi[ax] * strides[ax];
                    sign = -sign;
                } else {
                    idx += lo[ax] * strides[ax];
                }
            }
            diff[idx] += sign;
        }
    }
    for ax in 0..d {
        for i in 0..diff.len() {
            if (i / strides[ax]) % dims[ax] > 0 {
                diff[i] += diff[i - strides[ax]];
            }
        }
    }
    let mut total: i128 = 0;
    'cells: for (i, &cover) in diff.iter().enumerate() {
        if cover <= 0 {
            continue;
        }
        let mut vol: i128 = 1;
        for ax in 0..d {
            let k = (i / strides[ax]) % dims[ax];
            if k + 1 >= dims[ax] {
                continue 'cells;
            }
            let w = axes[ax][k + 1] as i128 - axes[ax][k] as i128;
            vol = vol.checked_mul(w).ok_or(Error::Overflow)?;
        }
        total = total.checked_add(vol).ok_or(Error::Overflow)?;
    }
    let denom = (scale as i128).checked_pow(d as u32).ok_or(Error::Overflow)?;
    Ok(Ratio::new(total, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_unions() {
        let one = ScaledInt::from_int(1, 1).unwrap();
        assert_eq!(klee_unit_oracle(&[PointD::ints(&[1, 1, 1])], one).unwrap(), Ratio::from_integer(1));
        let half = ScaledInt::from_int(1, 2).unwrap();
        let cubes = [PointD::from_raw(&[2, 2, 2], 2).unwrap(), PointD::from_raw(&[3, 2, 2], 2).unwrap()];
        assert_eq!(klee_unit_oracle(&cubes, half).unwrap(), Ratio::new(3, 2));
        assert_eq!(klee_unit_oracle(&[], one).unwrap(), Ratio::from_integer(0));
        assert!(klee_unit_oracle(&[PointD::ints(&[1])], ScaledInt::from_int(0, 1).unwrap()).is_err());
    }

    #[test]
    fn grid_guard() {
        let one = ScaledInt::from_int(1, 1).unwrap();
        let cubes: Vec<PointD> = (0..300).map(|i| PointD::ints(&[3 * i, 3 * i, 3 * i, 3 * i])).collect();
        assert!(matches!(klee_unit_oracle(&cubes, one), Err(Error::GridTooLarge(_))));
    }
}
