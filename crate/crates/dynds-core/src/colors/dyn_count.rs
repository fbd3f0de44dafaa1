use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::geom::{AggregateMode, BoxD, DynamicRangeTree, Handle, PointD};
use crate::range_mode::UpdateKind;

/// Default rebuild period `round(n^{2/3})`, at least 1.
pub fn default_rebuild_period(n_cap: usize) -> usize {
    ((n_cap as f64).powf(2.0 / 3.0).round() as usize).max(1)
}

/// Static distinct-colour counter rebuilt from a snapshot of the point set.
pub trait ColorCountBackend {
    fn build(points: &[([i64; 2], i64)]) -> Result<Self>
    where
        Self: Sized;

    /// Distinct colours among snapshot points in `[x1,x2] × [y1,y2]`.
    fn count(&self, ranges: &[(i64, i64); 2]) -> Result<u64>;

    fn visits(&self) -> u64;
}

/// One emptiness tree per colour; a query asks every colour.
#[derive(Clone, Debug)]
pub struct PerColorTrees {
    trees: Vec<DynamicRangeTree>,
    extra: u64,
}

impl ColorCountBackend for PerColorTrees {
    fn build(points: &[([i64; 2], i64)]) -> Result<Self> {
        let mut by_color: BTreeMap<i64, Vec<(Vec<i64>, i64)>> = BTreeMap::new();
        for (p, c) in points {
            by_color.entry(*c).or_default().push((p.to_vec(), 0));
        }
        let trees = by_color
            .values()
            .map(|pts| DynamicRangeTree::with_entries(2, 1, AggregateMode::Emptiness, pts).map(|(t, _)| t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { trees, extra: points.len() as u64 })
    }

    fn count(&self, ranges: &[(i64, i64); 2]) -> Result<u64> {
        Ok(self.trees.iter().filter(|t| !t.empty_raw(ranges)).count() as u64)
    }

    fn visits(&self) -> u64 {
        self.extra + self.trees.iter().map(|t| t.visits()).sum::<u64>()
    }
}

/// Linear scan over the snapshot.
#[derive(Clone, Debug)]
pub struct ScanBackend {
    points: Vec<([i64; 2], i64)>,
    scanned: std::cell::Cell<u64>,
}

impl ColorCountBackend for ScanBackend {
    fn build(points: &[([i64; 2], i64)]) -> Result<Self> {
        Ok(Self { points: points.to_vec(), scanned: std::cell::Cell::new(0) })
    }

    fn count(&self, ranges: &[(i64, i64); 2]) -> Result<u64> {
        self.scanned.set(self.scanned.get() + self.points.len() as u64);
        Ok(distinct_in(self.points.iter().map(|(p, c)| (p, *c)), ranges))
    }

    fn visits(&self) -> u64 {
        self.scanned.get()
    }
}

fn distinct_in<'a>(points: impl Iterator<Item = (&'a [i64; 2], i64)>, ranges: &[(i64, i64); 2]) -> u64 {
    let inside = |p: &[i64; 2]| (0..2).all(|ax| ranges[ax].0 <= p[ax] && p[ax] <= ranges[ax].1);
    points.filter(|(p, _)| inside(p)).map(|(_, c)| c).collect::<HashSet<_>>().len() as u64
}

/// Distinct colours among `points` inside `[x1,x2] × [y1,y2]`, by scanning.
pub fn color_count_oracle(points: &[([i64; 2], i64)], ranges: &[(i64, i64); 2]) -> u64 {
    distinct_in(points.iter().map(|(p, c)| (p, *c)), ranges)
}

#[derive(Clone, Debug)]
struct ColorState {
    tree: DynamicRangeTree,
    old: Option<DynamicRangeTree>,
    occurrences: HashMap<[i64; 2], Vec<Handle>>,
}

/// Dynamic 2D distinct-colour counting by periodic static rebuilds.
///
/// Every `R` updates the back end is rebuilt from the live points and the
/// touched colours' trees are snapshotted. A query takes the back end's
/// stale count and corrects it for each colour touched since the rebuild by
/// comparing its current and snapshot trees.
pub struct DynColorCountDS<B: ColorCountBackend = PerColorTrees> {
    n_cap: usize,
    period: usize,
    backend: B,
    colors: HashMap<i64, ColorState>,
    dirty: BTreeSet<i64>,
    since_rebuild: usize,
    live: usize,
    rebuilds: u64,
    retired_visits: u64,
    work: u64,
}

impl DynColorCountDS<PerColorTrees> {
    pub fn new(n_cap: usize, period: Option<usize>) -> Result<Self> {
        Self::with_backend(n_cap, period)
    }
}

impl<B: ColorCountBackend> DynColorCountDS<B> {
    pub fn with_backend(n_cap: usize, period: Option<usize>) -> Result<Self> {
        if n_cap == 0 {
            return Err(Error::InvalidArgument("capacity must be at least 1".into()));
        }
        let period = match period {
            Some(0) => return Err(Error::InvalidArgument("rebuild period must be positive".into())),
            Some(r) => r,
            None => default_rebuild_period(n_cap),
        };
        Ok(Self {
            n_cap,
            period,
            backend: B::build(&[])?,
            colors: HashMap::new(),
            dirty: BTreeSet::new(),
            since_rebuild: 0,
            live: 0,
            rebuilds: 0,
            retired_visits: 0,
            work: 0,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn rebuilds(&self) -> u64 {
        self.rebuilds
    }

    /// Colours touched since the last rebuild.
    pub fn dirty_colors(&self) -> usize {
        self.dirty.len()
    }

    pub fn visits(&self) -> u64 {
        let trees: u64 = self.colors.values().map(|s| s.tree.visits() + s.old.as_ref().map_or(0, |t| t.visits())).sum();
        self.retired_visits + self.work + self.backend.visits() + trees
    }

    /// Live points as `([x, y], colour)`.
    pub fn points(&self) -> Vec<([i64; 2], i64)> {
        let mut out = Vec::with_capacity(self.live);
        for (&c, s) in &self.colors {
            for (p, hs) in &s.occurrences {
                out.extend(std::iter::repeat_n((*p, c), hs.len()));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn update(&mut self, point: &PointD, color: i64, kind: UpdateKind) -> Result<()> {
        point.check_compatible(2, 1)?;
        self.update_raw([point.raw(0), point.raw(1)], color, kind)
    }

    pub fn update_raw(&mut self, p: [i64; 2], color: i64, kind: UpdateKind) -> Result<()> {
        match kind {
            UpdateKind::Insert => {
                if self.live >= self.n_cap {
                    return Err(Error::CapacityExceeded(self.n_cap));
                }
                let state = match self.colors.entry(color) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => v.insert(ColorState {
                        tree: DynamicRangeTree::new(2, 1, AggregateMode::Emptiness)?,
                        old: None,
                        occurrences: HashMap::new(),
                    }),
                };
                let h = state.tree.insert(&p, 0)?;
                state.occurrences.entry(p).or_default().push(h);
                self.live += 1;
            }
            UpdateKind::Delete => {
                let absent = || Error::Absent(format!("point {p:?} with colour {color}"));
                let state = self.colors.get_mut(&color).ok_or_else(absent)?;
                let slot = state.occurrences.get_mut(&p).ok_or_else(absent)?;
                let h = slot.pop().ok_or_else(absent)?;
                if slot.is_empty() {
                    state.occurrences.remove(&p);
                }
                state.tree.remove(h)?;
                self.live -= 1;
            }
        }
        self.dirty.insert(color);
        self.since_rebuild += 1;
        if self.since_rebuild >= self.period {
            self.rebuild()?;
        }
        Ok(())
    }

    /// Rebuild the back end from the live points, snapshot touched colours and clear the dirty set.
    pub fn rebuild(&mut self) -> Result<()> {
        let points = self.points();
        self.retired_visits += self.backend.visits() + points.len() as u64;
        self.backend = B::build(&points)?;
        for c in std::mem::take(&mut self.dirty) {
            let state = self.colors.get_mut(&c).expect("dirty colour registered");
            if let Some(old) = state.old.take() {
                self.retired_visits += old.visits();
            }
            if state.occurrences.is_empty() {
                self.retired_visits += state.tree.visits();
                self.colors.remove(&c);
                continue;
            }
            let entries: Vec<(Vec<i64>, i64)> =
                state.occurrences.iter().flat_map(|(p, hs)| std::iter::repeat_n((p.to_vec(), 0), hs.len())).collect();
            self.work += entries.len() as u64;
            state.old = Some(DynamicRangeTree::with_entries(2, 1, AggregateMode::Emptiness, &entries)?.0);
        }
        self.since_rebuild = 0;
        self.rebuilds += 1;
        Ok(())
    }

    pub fn query(&mut self, b: &BoxD) -> Result<u64> {
        let r = b.raw_ranges(2, 1)?;
        self.query_raw(&[r[0], r[1]])
    }

    /// Distinct colours in `[x1,x2] × [y1,y2]`.
    pub fn query_raw(&mut self, ranges: &[(i64, i64); 2]) -> Result<u64> {
        let mut count = self.backend.count(ranges)? as i64;
        for c in &self.dirty {
            let now = self.colors.get(c).is_some_and(|s| !s.tree.empty_raw(ranges));
            let before = self.colors.get(c).and_then(|s| s.old.as_ref()).is_some_and(|t| !t.empty_raw(ranges));
            count += now as i64 - before as i64;
        }
        self.work += self.dirty.len() as u64;
        Ok(count as u64)
    }
}
