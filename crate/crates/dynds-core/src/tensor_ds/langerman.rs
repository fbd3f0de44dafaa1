use std::collections::HashMap;

use super::tensor::{for_each_index, Tensor};
use crate::error::{Error, Result};

/// Default block side `round(n^{1/(d+1)})`, at least 1.
pub fn default_block_side(d: usize, n: usize) -> usize {
    ((n as f64).powf(1.0 / (d as f64 + 1.0)).round() as usize).max(1)
}

/// Dynamic zero-prefix-sum detection over a `d`-dimensional tensor.
///
/// Prefix sums are split as `P[x] = P[anchor(x)] + r[x]` with
/// `anchor(x) = B·⌊x/B⌋` per coordinate and `P = 0` whenever a coordinate is
/// zero. Anchor prefix sums live on the coarse grid, residuals per cell, and
/// each block of cells sharing an anchor keeps a multiset of its residuals. A
/// zero prefix exists iff some block holds the residual `−P[anchor]`. The last
/// block along an axis may be partial, so no padding is needed.
#[derive(Clone, Debug)]
pub struct LangermanDS {
    d: usize,
    n: usize,
    b: usize,
    t: Tensor,
    /// Side of the coarse grid: block indices `0..=n/B` per axis.
    g: usize,
    anchors: Vec<i64>,
    residual: Vec<i64>,
    blocks: Vec<HashMap<i64, u32>>,
    visits: u64,
}

impl LangermanDS {
    pub fn build(t: Tensor, block_side: Option<usize>) -> Result<Self> {
        let (d, n) = (t.order(), t.side());
        let b = match block_side {
            Some(0) => return Err(Error::InvalidArgument("block side must be positive".into())),
            Some(b) => b.min(n),
            None => default_block_side(d, n),
        };
        let g = n / b + 1;
        let cells = g.checked_pow(d as u32).ok_or(Error::Overflow)?;
        let p = t.prefix_sums()?;
        let mut ds = Self {
            d,
            n,
            b,
            g,
            anchors: vec![0; cells],
            residual: vec![0; t.len()],
            blocks: vec![HashMap::new(); cells],
            t,
            visits: 0,
        };
        for y in 0..cells {
            let coords = ds.block_coords(y);
            if coords.iter().all(|&c| c > 0) {
                let x: Vec<usize> = coords.iter().map(|&c| c * b).collect();
                ds.anchors[y] = p.get(&x)?;
            }
        }
        for off in 0..ds.t.len() {
            let x = ds.t.index_of(off);
            let blk = ds.block_of(&x);
            let r = p.values()[off].checked_sub(ds.anchors[blk]).ok_or(Error::Overflow)?;
            ds.residual[off] = r;
            *ds.blocks[blk].entry(r).or_insert(0) += 1;
        }
        Ok(ds)
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn block_side(&self) -> usize {
        self.b
    }

    pub fn tensor(&self) -> &Tensor {
        &self.t
    }

    pub fn visits(&self) -> u64 {
        self.visits
    }

    fn block_coords(&self, mut y: usize) -> Vec<usize> {
        let mut c = vec![0; self.d];
        for ax in (0..self.d).rev() {
            c[ax] = y % self.g;
            y /= self.g;
        }
        c
    }

    fn block_of(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &c| acc * self.g + c / self.b)
    }

    /// Anchor prefix sums `P[B·y]` for block indices `y ≥ 1` on every axis.
    pub fn anchor_values(&self) -> Vec<(Vec<usize>, i64)> {
        (0..self.anchors.len())
            .map(|y| (self.block_coords(y), self.anchors[y]))
            .filter(|(c, _)| c.iter().all(|&v| v > 0))
            .map(|(c, v)| (c.iter().map(|&v| v * self.b).collect(), v))
            .collect()
    }

    /// `P[x]` recomputed from the anchor grid and the residual.
    pub fn prefix_at(&self, x: &[usize]) -> Result<i64> {
        let off = self.t.offset(x)?;
        self.anchors[self.block_of(x)].checked_add(self.residual[off]).ok_or(Error::Overflow)
    }

    /// Set `T[z] = value`.
    pub fn update(&mut self, z: &[usize], value: i64) -> Result<()> {
        let zoff = self.t.offset(z)?;
        let delta = value.checked_sub(self.t.values()[zoff]).ok_or(Error::Overflow)?;
        if delta == 0 {
            return Ok(());
        }
        self.t.set(z, value)?;
        let (b, n, g) = (self.b, self.n, self.g);

        let coarse: Vec<(usize, usize)> = z.iter().map(|&c| (c.div_ceil(b), g - 1)).collect();
        let mut err = None;
        for_each_index(&coarse, |y| {
            self.visits += 1;
            let idx = y.iter().fold(0, |acc, &c| acc * g + c);
            match self.anchors[idx].checked_add(delta) {
                Some(v) => self.anchors[idx] = v,
                None => err = Some(Error::Overflow),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }

        let near = |ax: usize, c: usize| c + b >= z[ax] && c <= z[ax] + b;
        for slab in 0..self.d {
            let ranges: Vec<(usize, usize)> = (0..self.d)
                .map(|ax| if ax == slab { (z[ax].saturating_sub(b).max(1), (z[ax] + b).min(n)) } else { (1, n) })
                .collect();
            let mut touched = Vec::new();
            for_each_index(&ranges, |x| {
                if (0..slab).any(|ax| near(ax, x[ax])) {
                    return;
                }
                self.visits += 1;
                let dominated = x.iter().zip(z).all(|(&xc, &zc)| xc >= zc);
                let anchor_dominated = x.iter().zip(z).all(|(&xc, &zc)| b * (xc / b) >= zc);
                if dominated && !anchor_dominated {
                    touched.push(x.to_vec());
                }
            });
            for x in touched {
                self.visits += 1;
                let off = self.t.offset(&x)?;
                let blk = self.block_of(&x);
                let old = self.residual[off];
                let new = old.checked_add(delta).ok_or(Error::Overflow)?;
                self.residual[off] = new;
                let set = &mut self.blocks[blk];
                let cnt = set.get_mut(&old).expect("residual tracked in block multiset");
                *cnt -= 1;
                if *cnt == 0 {
                    set.remove(&old);
                }
                *set.entry(new).or_insert(0) += 1;
            }
        }
        if crate::debug_checks() {
            self.check_consistency()?;
        }
        Ok(())
    }

    /// Whether some prefix sum is zero.
    pub fn query(&mut self) -> bool {
        let mut found = false;
        for (blk, set) in self.blocks.iter().enumerate() {
            self.visits += 1;
            if let Some(target) = self.anchors[blk].checked_neg() {
                if set.contains_key(&target) {
                    found = true;
                    break;
                }
            }
        }
        found
    }

    /// Compare every recomputed prefix sum and block multiset with a fresh prefix summation.
    pub fn check_consistency(&self) -> Result<()> {
        let p = self.t.prefix_sums()?;
        let mut expect: Vec<HashMap<i64, u32>> = vec![HashMap::new(); self.blocks.len()];
        for off in 0..self.t.len() {
            let x = self.t.index_of(off);
            let got = self.prefix_at(&x)?;
            if got != p.values()[off] {
                return Err(Error::InvalidArgument(format!("prefix at {x:?} is {got}, expected {}", p.values()[off])));
            }
            *expect[self.block_of(&x)].entry(self.residual[off]).or_insert(0) += 1;
        }
        if expect != self.blocks {
            return Err(Error::InvalidArgument("block residual multisets out of sync".into()));
        }
        Ok(())
    }
}
