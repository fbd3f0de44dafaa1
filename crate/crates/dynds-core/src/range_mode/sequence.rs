use crate::error::{Error, Result};
use crate::range_mode::dmode::{DynRangeModeDS, UpdateKind};

/// Keys are `raw / 2^62`, kept strictly inside `(0, 1)`.
const KEY_SPACE: i64 = 1 << 62;

/// Array with insertion/deletion by position and range-mode queries.
///
/// Each slot carries a dyadic key; a new slot takes the midpoint of its
/// neighbours' keys. When two neighbours are adjacent at denominator `2^62`
/// all keys are re-spaced uniformly and the backing structure is rebuilt.
#[derive(Clone, Debug)]
pub struct SequenceAdapter {
    keys: Vec<i64>,
    values: Vec<i64>,
    ds: DynRangeModeDS,
    n_cap: usize,
    b_override: Option<usize>,
    rebuilds: u64,
    retired_visits: u64,
}

impl SequenceAdapter {
    pub fn new(n_cap: usize, b_override: Option<usize>) -> Result<Self> {
        Ok(Self {
            keys: Vec::new(),
            values: Vec::new(),
            ds: DynRangeModeDS::with_scale(1, n_cap, b_override, KEY_SPACE)?,
            n_cap,
            b_override,
            rebuilds: 0,
            retired_visits: 0,
        })
    }

    /// Adapter preloaded with `values`, keys uniformly spaced.
    pub fn from_values(n_cap: usize, b_override: Option<usize>, values: &[i64]) -> Result<Self> {
        let mut s = Self::new(n_cap, b_override)?;
        if values.len() > n_cap {
            return Err(Error::CapacityExceeded(n_cap));
        }
        s.values = values.to_vec();
        s.respace()?;
        s.rebuilds = 0;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn threshold(&self) -> usize {
        self.ds.threshold()
    }

    /// Number of global key re-spacings so far.
    pub fn rebuilds(&self) -> u64 {
        self.rebuilds
    }

    pub fn visits(&self) -> u64 {
        self.retired_visits + self.ds.visits()
    }

    fn respace(&mut self) -> Result<()> {
        let spacing = KEY_SPACE / (self.values.len() as i64 + 1);
        self.keys = (1..=self.values.len() as i64).map(|i| i * spacing).collect();
        let points: Vec<(Vec<i64>, i64)> = self.keys.iter().zip(&self.values).map(|(&k, &v)| (vec![k], v)).collect();
        self.retired_visits += self.ds.visits() + points.len() as u64;
        self.ds = DynRangeModeDS::from_points(1, self.n_cap, self.b_override, KEY_SPACE, &points)?;
        self.rebuilds += 1;
        Ok(())
    }

    /// Insert `value` so that it becomes element `index` (1-based).
    pub fn insert(&mut self, index: usize, value: i64) -> Result<()> {
        if index == 0 || index > self.values.len() + 1 {
            return Err(Error::InvalidArgument(format!("insert index {index} outside 1..={}", self.values.len() + 1)));
        }
        if self.values.len() >= self.n_cap {
            return Err(Error::CapacityExceeded(self.n_cap));
        }
        let lo = if index >= 2 { self.keys[index - 2] } else { 0 };
        let hi = if index <= self.keys.len() { self.keys[index - 1] } else { KEY_SPACE };
        self.values.insert(index - 1, value);
        if hi - lo < 2 {
            self.keys.insert(index - 1, lo);
            return self.respace();
        }
        let key = lo + (hi - lo) / 2;
        self.keys.insert(index - 1, key);
        self.ds.update_raw(&[key], value, UpdateKind::Insert)
    }

    /// Remove element `index` (1-based), returning its value.
    pub fn delete(&mut self, index: usize) -> Result<i64> {
        if index == 0 || index > self.values.len() {
            return Err(Error::InvalidArgument(format!("delete index {index} outside 1..={}", self.values.len())));
        }
        let key = self.keys.remove(index - 1);
        let value = self.values.remove(index - 1);
        self.ds.update_raw(&[key], value, UpdateKind::Delete)?;
        Ok(value)
    }

    /// Most frequent value among elements `l..=r` (1-based), smallest value on ties.
    pub fn query(&mut self, l: usize, r: usize) -> Result<(i64, usize)> {
        if l == 0 || l > r || r > self.values.len() {
            return Err(Error::InvalidArgument(format!("query range {l}..={r} outside 1..={}", self.values.len())));
        }
        let ranges = [(self.keys[l - 1], self.keys[r - 1])];
        let ans = self.ds.query_raw(&ranges)?;
        Ok(ans.expect("non-empty range has a mode"))
    }
}
