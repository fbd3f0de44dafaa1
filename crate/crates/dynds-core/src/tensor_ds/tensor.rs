use crate::error::{Error, Result};

/// Largest number of entries a dense tensor may hold.
pub const TENSOR_LIMIT: u128 = 100_000_000;

/// Dense `n × ⋯ × n` integer tensor of order `d`, indexed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    d: usize,
    n: usize,
    data: Vec<i64>,
}

impl Tensor {
    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("order and side must be positive".into()));
        }
        let size = (n as u128).checked_pow(d as u32).filter(|&s| s <= TENSOR_LIMIT).ok_or_else(|| {
            Error::InvalidArgument(format!("tensor of side {n} and order {d} exceeds {TENSOR_LIMIT} entries"))
        })?;
        Ok(Self { d, n, data: vec![0; size as usize] })
    }

    /// Tensor from entries listed with the last axis varying fastest.
    pub fn from_vec(d: usize, n: usize, data: Vec<i64>) -> Result<Self> {
        let mut t = Self::zeros(d, n)?;
        if data.len() != t.data.len() {
            return Err(Error::InvalidArgument(format!("expected {} entries, got {}", t.data.len(), data.len())));
        }
        t.data = data;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.data
    }

    /// Linear offset of a 1-based index.
    pub fn offset(&self, x: &[usize]) -> Result<usize> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x.len() });
        }
        let mut off = 0;
        for &c in x {
            if c == 0 || c > self.n {
                return Err(Error::InvalidArgument(format!("index {x:?} outside [1,{}]^{}", self.n, self.d)));
            }
            off = off * self.n + (c - 1);
        }
        Ok(off)
    }

    /// 1-based index of a linear offset.
    pub fn index_of(&self, mut off: usize) -> Vec<usize> {
        let mut x = vec![0; self.d];
        for ax in (0..self.d).rev() {
            x[ax] = off % self.n + 1;
            off /= self.n;
        }
        x
    }

    pub fn get(&self, x: &[usize]) -> Result<i64> {
        Ok(self.data[self.offset(x)?])
    }

    pub fn set(&mut self, x: &[usize], v: i64) -> Result<()> {
        let off = self.offset(x)?;
        self.data[off] = v;
        Ok(())
    }

    /// `P[x] = Σ_{y ≤ x} T[y]` for every `x`.
    pub fn prefix_sums(&self) -> Result<Tensor> {
        let mut p = self.clone();
        let mut stride = 1;
        for _ in 0..self.d {
            for off in 0..p.data.len() {
                if (off / stride) % self.n > 0 {
                    p.data[off] = p.data[off].checked_add(p.data[off - stride]).ok_or(Error::Overflow)?;
                }
            }
            stride *= self.n;
        }
        Ok(p)
    }
}

/// Whether some prefix sum `P[x]` is zero, by full prefix summation.
pub fn langerman_oracle(t: &Tensor) -> Result<bool> {
    Ok(t.prefix_sums()?.values().contains(&0))
}

/// Iterate all 1-based indices in `[lo_i, hi_i]` per axis, last axis fastest.
pub(crate) fn for_each_index(ranges: &[(usize, usize)], mut f: impl FnMut(&[usize])) {
    if ranges.iter().any(|&(l, h)| l > h) {
        return;
    }
    let mut x: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&x);
        let mut ax = ranges.len();
        loop {
            if ax == 0 {
                return;
            }
            ax -= 1;
            if x[ax] < ranges[ax].1 {
                x[ax] += 1;
                break;
            }
            x[ax] = ranges[ax].0;
        }
    }
}
