use std::collections::BTreeMap;

use crate::geom::{BoxD, PointD};

/// Label frequencies inside `b`, ordered by label.
fn frequencies(points: &[(PointD, i64)], b: &BoxD) -> BTreeMap<i64, usize> {
    let mut freq = BTreeMap::new();
    for (p, label) in points {
        if b.contains(p) {
            *freq.entry(*label).or_insert(0) += 1;
        }
    }
    freq
}

/// Most frequent label in `b`, smallest label on ties; `None` if `b` is empty.
pub fn mode_oracle(points: &[(PointD, i64)], b: &BoxD) -> Option<(i64, usize)> {
    mode_of(frequencies(points, b))
}

/// Least frequent label present in `b`, smallest label on ties.
pub fn minority_oracle(points: &[(PointD, i64)], b: &BoxD) -> Option<(i64, usize)> {
    minority_of(frequencies(points, b))
}

/// Mode of every query box over a fixed point set.
pub fn batch_dmode_oracle(points: &[(PointD, i64)], queries: &[BoxD]) -> Vec<Option<(i64, usize)>> {
    queries.iter().map(|q| mode_oracle(points, q)).collect()
}

fn mode_of(freq: BTreeMap<i64, usize>) -> Option<(i64, usize)> {
    freq.into_iter().fold(None, |best, (l, f)| match best {
        Some((_, bf)) if bf >= f => best,
        _ => Some((l, f)),
    })
}

fn minority_of(freq: BTreeMap<i64, usize>) -> Option<(i64, usize)> {
    freq.into_iter().fold(None, |best, (l, f)| match best {
        Some((_, bf)) if bf <= f => best,
        _ => Some((l, f)),
    })
}

/// Vector-backed sequence answering mode and minority by scanning.
#[derive(Clone, Debug, Default)]
pub struct VecSequence {
    pub values: Vec<i64>,
    scanned: u64,
}

impl VecSequence {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values, scanned: 0 }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elements examined by queries so far.
    pub fn scanned(&self) -> u64 {
        self.scanned
    }

    /// Insert so that `value` becomes element `index` (1-based).
    pub fn insert(&mut self, index: usize, value: i64) -> bool {
        if index == 0 || index > self.values.len() + 1 {
            return false;
        }
        self.values.insert(index - 1, value);
        true
    }

    pub fn delete(&mut self, index: usize) -> Option<i64> {
        if index == 0 || index > self.values.len() {
            return None;
        }
        Some(self.values.remove(index - 1))
    }

    fn window(&mut self, l: usize, r: usize) -> Option<BTreeMap<i64, usize>> {
        if l == 0 || l > r || r > self.values.len() {
            return None;
        }
        self.scanned += (r - l + 1) as u64;
        let mut freq = BTreeMap::new();
        for &v in &self.values[l - 1..r] {
            *freq.entry(v).or_insert(0) += 1;
        }
        Some(freq)
    }

    /// Mode of elements `l..=r` (1-based).
    pub fn mode(&mut self, l: usize, r: usize) -> Option<(i64, usize)> {
        self.window(l, r).and_then(mode_of)
    }

    /// Minority of elements `l..=r` (1-based).
    pub fn minority(&mut self, l: usize, r: usize) -> Option<(i64, usize)> {
        self.window(l, r).and_then(minority_of)
    }
}
