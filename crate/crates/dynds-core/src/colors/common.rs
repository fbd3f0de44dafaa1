use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::geom::{AggregateMode, RangeTree};

/// Default light/heavy threshold `round(m^{1/3})`, at least 1.
pub fn default_color_threshold(m: usize) -> usize {
    ((m as f64).cbrt().round() as usize).max(1)
}

#[derive(Clone, Debug)]
struct ColorInfo {
    occurrences: Vec<usize>,
    /// Key range of this colour's quadruples in the 4D tree; empty for heavy colours.
    keys: std::ops::Range<usize>,
    on: bool,
}

/// Common-colours counting over a fixed colour array with colours toggled on and off.
///
/// A light colour with occurrences `i_1 < … < i_k` (and `i_{k+1} = m+1`)
/// stores the quadruples `(i_a, i_{a+1}, i_b, i_{b+1})` for all `a, b ≤ k`.
/// The quadruple with `i_a` the last occurrence inside `I_1` and `i_b` the last
/// inside `I_2` is the only one inside the query box, so the box count equals the
/// number of light on colours common to both intervals. Heavy on colours are
/// checked one by one with binary search on their occurrences.
#[derive(Clone, Debug)]
pub struct CommonColorsDS {
    m: usize,
    threshold: usize,
    colors: BTreeMap<i64, ColorInfo>,
    heavy_on: BTreeSet<i64>,
    tree: RangeTree,
    active_quads: usize,
    work: u64,
}

impl CommonColorsDS {
    /// `a` is 1-indexed by position: `a[0]` is position 1.
    pub fn build(a: &[i64], on: &HashSet<i64>, threshold: Option<usize>) -> Result<Self> {
        if let Some(&c) = a.iter().find(|&&c| c <= 0) {
            return Err(Error::InvalidArgument(format!("colour {c} is not positive")));
        }
        let m = a.len();
        let threshold = match threshold {
            Some(0) => return Err(Error::InvalidArgument("threshold must be positive".into())),
            Some(t) => t,
            None => default_color_threshold(m),
        };
        let mut occ: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &c) in a.iter().enumerate() {
            occ.entry(c).or_default().push(i + 1);
        }
        let mut coords = Vec::new();
        let mut colors = BTreeMap::new();
        for (c, occurrences) in occ {
            let start = coords.len() / 4;
            if occurrences.len() <= threshold {
                let next = |j: usize| occurrences.get(j + 1).map_or(m as i64 + 1, |&x| x as i64);
                for j1 in 0..occurrences.len() {
                    for j2 in 0..occurrences.len() {
                        coords.extend([occurrences[j1] as i64, next(j1), occurrences[j2] as i64, next(j2)]);
                    }
                }
            }
            let keys = start..coords.len() / 4;
            colors.insert(c, ColorInfo { occurrences, keys, on: false });
        }
        let values = vec![0; coords.len() / 4];
        let tree = RangeTree::from_raw(4, 1, coords, values, AggregateMode::Count)?;
        let mut ds = Self { m, threshold, colors, heavy_on: BTreeSet::new(), tree, active_quads: 0, work: 0 };
        let mut initial: Vec<i64> = on.iter().copied().filter(|c| ds.colors.contains_key(c)).collect();
        initial.sort_unstable();
        for c in initial {
            ds.toggle(c, true)?;
        }
        ds.tree.reset_visits();
        ds.work = 0;
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn is_heavy(&self, color: i64) -> bool {
        self.colors.get(&color).is_some_and(|c| c.occurrences.len() > self.threshold)
    }

    pub fn is_on(&self, color: i64) -> bool {
        self.colors.get(&color).is_some_and(|c| c.on)
    }

    /// Number of quadruples stored for `color` (zero for heavy colours).
    pub fn quadruples_of(&self, color: i64) -> usize {
        self.colors.get(&color).map_or(0, |c| c.keys.len())
    }

    pub fn active_quadruples(&self) -> usize {
        self.active_quads
    }

    /// Tree node touches plus heavy-colour binary-search steps.
    pub fn visits(&self) -> u64 {
        self.tree.visits() + self.work
    }

    pub fn toggle(&mut self, color: i64, on: bool) -> Result<()> {
        let threshold = self.threshold;
        let info = self.colors.get_mut(&color).ok_or_else(|| Error::Absent(format!("colour {color}")))?;
        if info.on == on {
            return Ok(());
        }
        info.on = on;
        if info.occurrences.len() > threshold {
            self.work += 1;
            if on {
                self.heavy_on.insert(color);
            } else {
                self.heavy_on.remove(&color);
            }
        } else {
            let keys = info.keys.clone();
            for k in keys.clone() {
                self.tree.toggle(k, on)?;
            }
            if on {
                self.active_quads += keys.len();
            } else {
                self.active_quads -= keys.len();
            }
        }
        if crate::debug_checks() {
            self.check_invariants()?;
        }
        Ok(())
    }

    fn check_interval(&self, (l, r): (usize, usize)) -> Result<()> {
        if l == 0 || l > r || r > self.m {
            return Err(Error::InvalidArgument(format!("interval [{l},{r}] outside [1,{}]", self.m)));
        }
        Ok(())
    }

    /// Number of on colours occurring in both `[l1,r1]` and `[l2,r2]` (1-based, inclusive).
    pub fn query(&mut self, i1: (usize, usize), i2: (usize, usize)) -> Result<u64> {
        self.check_interval(i1)?;
        self.check_interval(i2)?;
        let (l1, r1) = (i1.0 as i64, i1.1 as i64);
        let (l2, r2) = (i2.0 as i64, i2.1 as i64);
        let mut total = self.tree.count_raw(&[(l1, r1), (r1 + 1, i64::MAX), (l2, r2), (r2 + 1, i64::MAX)])?;
        let mut steps = 0u64;
        for c in &self.heavy_on {
            let occ = &self.colors[c].occurrences;
            let hit = |(l, r): (usize, usize), steps: &mut u64| {
                *steps += (occ.len() as f64).log2().ceil() as u64 + 1;
                let i = occ.partition_point(|&x| x < l);
                i < occ.len() && occ[i] <= r
            };
            if hit(i1, &mut steps) && hit(i2, &mut steps) {
                total += 1;
            }
        }
        self.work += steps + self.heavy_on.len() as u64;
        Ok(total)
    }

    /// Active tree entries must equal the sum of squared occurrence counts of light on colours.
    pub fn check_invariants(&self) -> Result<()> {
        let expect: usize = self
            .colors
            .values()
            .filter(|c| c.on && c.occurrences.len() <= self.threshold)
            .map(|c| c.occurrences.len().pow(2))
            .sum();
        let active = (0..self.tree.len()).filter(|&k| self.tree.is_active(k)).count();
        if expect != active || expect != self.active_quads {
            return Err(Error::InvalidArgument(format!(
                "invariant violated: {active} active quadruples, expected {expect}"
            )));
        }
        Ok(())
    }
}

/// Number of on colours occurring in both 1-based inclusive intervals, by scanning.
pub fn cc_oracle(a: &[i64], on: &HashSet<i64>, i1: (usize, usize), i2: (usize, usize)) -> u64 {
    let window = |(l, r): (usize, usize)| -> HashSet<i64> {
        if l == 0 || l > r || r > a.len() {
            return HashSet::new();
        }
        a[l - 1..r].iter().copied().filter(|c| on.contains(c)).collect()
    };
    window(i1).intersection(&window(i2)).count() as u64
}

/// Number of on documents containing both symbols.
pub fn docs_oracle(documents: &[Vec<u32>], on: &[bool], t1: u32, t2: u32) -> u64 {
    documents.iter().zip(on).filter(|(doc, &on)| on && doc.contains(&t1) && doc.contains(&t2)).count() as u64
}

/// Colour array for single-symbol document retrieval.
///
/// For each symbol in increasing order, the array lists the (1-based) ids of
/// the documents containing it. A symbol then maps to one interval and two
/// symbols share exactly the documents containing both.
#[derive(Clone, Debug)]
pub struct SymbolIndex {
    pub array: Vec<i64>,
    intervals: BTreeMap<u32, (usize, usize)>,
}

impl SymbolIndex {
    pub fn new(documents: &[Vec<u32>]) -> Self {
        let mut by_symbol: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
        for (i, doc) in documents.iter().enumerate() {
            for &s in doc {
                by_symbol.entry(s).or_default().insert(i + 1);
            }
        }
        let mut array = Vec::new();
        let mut intervals = BTreeMap::new();
        for (s, docs) in by_symbol {
            let l = array.len() + 1;
            array.extend(docs.into_iter().map(|d| d as i64));
            intervals.insert(s, (l, array.len()));
        }
        Self { array, intervals }
    }

    /// Interval of `symbol`, `None` if no document contains it.
    pub fn interval(&self, symbol: u32) -> Option<(usize, usize)> {
        self.intervals.get(&symbol).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_on(a: &[i64]) -> HashSet<i64> {
        a.iter().copied().collect()
    }

    #[test]
    fn heavy_color_has_no_quadruples() {
        let a = [1, 1];
        let ds = CommonColorsDS::build(&a, &all_on(&a), Some(1)).unwrap();
        assert!(ds.is_heavy(1));
        assert_eq!(ds.active_quadruples(), 0);
    }

    #[test]
    fn single_occurrence_quadruples() {
        let a = [1, 2];
        let ds = CommonColorsDS::build(&a, &all_on(&a), Some(1)).unwrap();
        assert_eq!(ds.quadruples_of(1), 1);
        assert_eq!(ds.tree.raw_point(0), &[1, 3, 1, 3]);
        assert_eq!(ds.tree.raw_point(1), &[2, 3, 2, 3]);
    }

    #[test]
    fn small_queries() {
        let a = [1, 2, 1, 2];
        for b in [1, 4] {
            let mut ds = CommonColorsDS::build(&a, &all_on(&a), Some(b)).unwrap();
            assert_eq!(ds.query((1, 2), (3, 4)).unwrap(), 2);
            ds.toggle(2, false).unwrap();
            assert_eq!(ds.query((1, 2), (3, 4)).unwrap(), 1);
            ds.toggle(1, false).unwrap();
            assert_eq!(ds.query((1, 4), (1, 4)).unwrap(), 0);
            assert!(ds.query((0, 2), (3, 4)).is_err());
            assert!(ds.query((2, 1), (3, 4)).is_err());
            assert!(ds.toggle(9, true).is_err());
        }
        assert!(CommonColorsDS::build(&[0], &HashSet::new(), None).is_err());
    }

    #[test]
    fn symbol_index_maps_documents() {
        let docs = vec![vec![0, 1], vec![1], vec![0, 2]];
        let idx = SymbolIndex::new(&docs);
        assert_eq!(idx.array, vec![1, 3, 1, 2, 3]);
        assert_eq!(idx.interval(1), Some((3, 4)));
        assert_eq!(idx.interval(7), None);
        assert_eq!(docs_oracle(&docs, &[true, true, true], 0, 1), 1);
        assert_eq!(docs_oracle(&docs, &[false, true, true], 0, 1), 0);
    }
}
