use std::collections::BTreeMap;

use super::tensor::{for_each_index, Tensor};
use crate::error::{Error, Result};

/// Axis increments and maximum queries over a `k`-dimensional tensor.
pub trait EricksonSolver {
    /// Add 1 to every entry whose `axis`-th coordinate is `x` (both 1-based).
    fn increment_axis(&mut self, axis: usize, x: usize) -> Result<()>;

    fn query_max(&mut self) -> i64;

    fn visits(&self) -> u64;
}

fn check_axis(t: &Tensor, axis: usize, x: usize) -> Result<()> {
    if axis == 0 || axis > t.order() || x == 0 || x > t.side() {
        return Err(Error::InvalidArgument(format!(
            "axis {axis}, value {x} outside [1,{}] × [1,{}]",
            t.order(),
            t.side()
        )));
    }
    Ok(())
}

/// Constant-time increments; a query scans every entry.
#[derive(Clone, Debug)]
pub struct LazyErickson {
    t: Tensor,
    inc: Vec<Vec<i64>>,
    visits: u64,
}

impl LazyErickson {
    pub fn new(t: Tensor) -> Self {
        let inc = vec![vec![0; t.side()]; t.order()];
        Self { t, inc, visits: 0 }
    }

    /// Current value at a 1-based index.
    pub fn value(&self, x: &[usize]) -> Result<i64> {
        let base = self.t.get(x)?;
        Ok(base + x.iter().enumerate().map(|(ax, &c)| self.inc[ax][c - 1]).sum::<i64>())
    }
}

impl EricksonSolver for LazyErickson {
    fn increment_axis(&mut self, axis: usize, x: usize) -> Result<()> {
        check_axis(&self.t, axis, x)?;
        self.visits += 1;
        self.inc[axis - 1][x - 1] += 1;
        Ok(())
    }

    fn query_max(&mut self) -> i64 {
        let (n, k) = (self.t.side(), self.t.order());
        let mut best = i64::MIN;
        for (off, &v) in self.t.values().iter().enumerate() {
            let mut rest = off;
            let mut total = v;
            for ax in (0..k).rev() {
                total += self.inc[ax][rest % n];
                rest /= n;
            }
            best = best.max(total);
        }
        self.visits += self.t.len() as u64;
        best
    }

    fn visits(&self) -> u64 {
        self.visits
    }
}

/// Materialized entries with a value multiset; an increment rewrites one slab.
#[derive(Clone, Debug)]
pub struct EagerErickson {
    t: Tensor,
    values: BTreeMap<i64, usize>,
    visits: u64,
}

impl EagerErickson {
    pub fn new(t: Tensor) -> Self {
        let mut values = BTreeMap::new();
        for &v in t.values() {
            *values.entry(v).or_insert(0) += 1;
        }
        Self { t, values, visits: 0 }
    }

    pub fn value(&self, x: &[usize]) -> Result<i64> {
        self.t.get(x)
    }
}

impl EricksonSolver for EagerErickson {
    fn increment_axis(&mut self, axis: usize, x: usize) -> Result<()> {
        check_axis(&self.t, axis, x)?;
        let ranges: Vec<(usize, usize)> =
            (1..=self.t.order()).map(|ax| if ax == axis { (x, x) } else { (1, self.t.side()) }).collect();
        let mut updates = Vec::new();
        for_each_index(&ranges, |idx| updates.push(idx.to_vec()));
        for idx in updates {
            self.visits += 1;
            let old = self.t.get(&idx)?;
            let new = old.checked_add(1).ok_or(Error::Overflow)?;
            self.t.set(&idx, new)?;
            let cnt = self.values.get_mut(&old).expect("value tracked");
            *cnt -= 1;
            if *cnt == 0 {
                self.values.remove(&old);
            }
            *self.values.entry(new).or_insert(0) += 1;
        }
        Ok(())
    }

    fn query_max(&mut self) -> i64 {
        self.visits += 1;
        *self.values.keys().next_back().expect("tensor is non-empty")
    }

    fn visits(&self) -> u64 {
        self.visits
    }
}
