//! Dynamic d-dimensional orthogonal range mode.
//!
//! Labels with more than `B` live points are heavy and answered by counting
//! in their own d-dimensional tree. Every light label contributes all boxes
//! whose faces lie on its own point coordinates to one global 2d-dimensional
//! max tree, keyed by the box faces, valued by the number of its points inside.
//! A box lies inside the query iff its lower faces are above the query's lower
//! faces and its upper faces below the query's upper faces, which is a
//! dominance query on the 2d face coordinates.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geom::{AggregateMode, BoxD, DynamicRangeTree, Handle, PointD};

/// Insert or delete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateKind {
    Insert,
    Delete,
}

#[derive(Clone, Debug)]
struct LabelState {
    tree: DynamicRangeTree,
    occurrences: HashMap<Vec<i64>, Vec<Handle>>,
    count: usize,
    boxes: Vec<Handle>,
}

/// Threshold `round(n^{1/(2d+1)})`, at least 1.
pub fn default_threshold(d: usize, n_cap: usize) -> usize {
    ((n_cap as f64).powf(1.0 / (2 * d + 1) as f64).round() as usize).max(1)
}

// Max-tree values order by (count, smaller label).
const LABEL_BIAS: i64 = 1 << 31;
const LABEL_MASK: i64 = (1 << 32) - 1;

fn encode(count: usize, label: i64) -> i64 {
    ((count as i64) << 32) + (LABEL_MASK - (label + LABEL_BIAS))
}

fn decode(value: i64) -> (i64, usize) {
    let label = LABEL_MASK - (value & LABEL_MASK) - LABEL_BIAS;
    (label, (value >> 32) as usize)
}

fn check_label(label: i64) -> Result<()> {
    if !(i32::MIN as i64..=i32::MAX as i64).contains(&label) {
        return Err(Error::InvalidArgument(format!("label {label} outside the 32-bit range")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DynRangeModeDS {
    dim: usize,
    scale: i64,
    n_cap: usize,
    b: usize,
    labels: HashMap<i64, LabelState>,
    heavy: BTreeSet<i64>,
    boxes: DynamicRangeTree,
    box_label: HashMap<Handle, i64>,
    live: usize,
    work: u64,
}

impl DynRangeModeDS {
    /// Empty structure over integer coordinates.
    pub fn new(d: usize, n_cap: usize, b_override: Option<usize>) -> Result<Self> {
        Self::with_scale(d, n_cap, b_override, 1)
    }

    pub fn with_scale(d: usize, n_cap: usize, b_override: Option<usize>, scale: i64) -> Result<Self> {
        if d == 0 || n_cap == 0 {
            return Err(Error::InvalidArgument("dimension and capacity must be at least 1".into()));
        }
        let b = match b_override {
            Some(0) => return Err(Error::InvalidArgument("threshold override must be positive".into())),
            Some(b) => b,
            None => default_threshold(d, n_cap),
        };
        Ok(Self {
            dim: d,
            scale,
            n_cap,
            b,
            labels: HashMap::new(),
            heavy: BTreeSet::new(),
            boxes: DynamicRangeTree::new(2 * d, scale, AggregateMode::Max)?,
            box_label: HashMap::new(),
            live: 0,
            work: 0,
        })
    }

    /// Bulk-load labelled points.
    pub fn from_points(d: usize, n_cap: usize, b_override: Option<usize>, scale: i64, points: &[(Vec<i64>, i64)]) -> Result<Self> {
        let mut ds = Self::with_scale(d, n_cap, b_override, scale)?;
        if points.len() > n_cap {
            return Err(Error::CapacityExceeded(n_cap));
        }
        let mut grouped: HashMap<i64, Vec<Vec<i64>>> = HashMap::new();
        for (coords, label) in points {
            check_label(*label)?;
            if coords.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: coords.len() });
            }
            grouped.entry(*label).or_default().push(coords.clone());
        }
        let mut labels: Vec<i64> = grouped.keys().copied().collect();
        labels.sort_unstable();
        let mut all_boxes = Vec::new();
        let mut owners = Vec::new();
        for label in labels {
            let pts = &grouped[&label];
            let entries: Vec<(Vec<i64>, i64)> = pts.iter().map(|c| (c.clone(), 0)).collect();
            let (tree, handles) = DynamicRangeTree::with_entries(d, scale, AggregateMode::Count, &entries)?;
            let mut occurrences: HashMap<Vec<i64>, Vec<Handle>> = HashMap::new();
            for (c, h) in pts.iter().zip(handles) {
                occurrences.entry(c.clone()).or_default().push(h);
            }
            if pts.len() > ds.b {
                ds.heavy.insert(label);
            } else {
                for (faces, count) in ds.label_boxes(pts) {
                    all_boxes.push((faces, encode(count, label)));
                    owners.push(label);
                }
            }
            ds.labels.insert(label, LabelState { tree, occurrences, count: pts.len(), boxes: Vec::new() });
        }
        let (boxes, handles) = DynamicRangeTree::with_entries(2 * d, scale, AggregateMode::Max, &all_boxes)?;
        ds.boxes = boxes;
        for (h, label) in handles.into_iter().zip(owners) {
            ds.box_label.insert(h, label);
            ds.labels.get_mut(&label).expect("label registered").boxes.push(h);
        }
        ds.live = points.len();
        Ok(ds)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn threshold(&self) -> usize {
        self.b
    }

    pub fn capacity(&self) -> usize {
        self.n_cap
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn is_heavy(&self, label: i64) -> bool {
        self.heavy.contains(&label)
    }

    pub fn heavy_labels(&self) -> impl Iterator<Item = i64> + '_ {
        self.heavy.iter().copied()
    }

    /// Live occurrences of `label`.
    pub fn label_count(&self, label: i64) -> usize {
        self.labels.get(&label).map_or(0, |s| s.count)
    }

    /// Entries of `label` currently held in the global box tree.
    pub fn boxes_of(&self, label: i64) -> usize {
        self.labels.get(&label).map_or(0, |s| s.boxes.len())
    }

    /// Total visit counter: tree node touches plus heavy scans and generated boxes.
    pub fn visits(&self) -> u64 {
        self.work + self.boxes.visits() + self.labels.values().map(|s| s.tree.visits()).sum::<u64>()
    }

    pub fn update(&mut self, point: &PointD, label: i64, kind: UpdateKind) -> Result<()> {
        point.check_compatible(self.dim, self.scale)?;
        self.update_raw(&point.raw_coords(), label, kind)
    }

    pub fn insert(&mut self, point: &PointD, label: i64) -> Result<()> {
        self.update(point, label, UpdateKind::Insert)
    }

    pub fn delete(&mut self, point: &PointD, label: i64) -> Result<()> {
        self.update(point, label, UpdateKind::Delete)
    }

    pub fn update_raw(&mut self, coords: &[i64], label: i64, kind: UpdateKind) -> Result<()> {
        check_label(label)?;
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coords.len() });
        }
        match kind {
            UpdateKind::Insert => {
                if self.live >= self.n_cap {
                    return Err(Error::CapacityExceeded(self.n_cap));
                }
                let (dim, scale) = (self.dim, self.scale);
                let state = match self.labels.entry(label) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => v.insert(LabelState {
                        tree: DynamicRangeTree::new(dim, scale, AggregateMode::Count)?,
                        occurrences: HashMap::new(),
                        count: 0,
                        boxes: Vec::new(),
                    }),
                };
                let h = state.tree.insert(coords, 0)?;
                state.occurrences.entry(coords.to_vec()).or_default().push(h);
                state.count += 1;
                self.live += 1;
            }
            UpdateKind::Delete => {
                let absent = || Error::Absent(format!("point {coords:?} with label {label}"));
                let state = self.labels.get_mut(&label).ok_or_else(absent)?;
                let slot = state.occurrences.get_mut(coords).ok_or_else(absent)?;
                let h = slot.pop().ok_or_else(absent)?;
                if slot.is_empty() {
                    state.occurrences.remove(coords);
                }
                state.tree.remove(h)?;
                state.count -= 1;
                self.live -= 1;
            }
        }
        self.refresh_label(label)?;
        if crate::debug_checks() {
            self.check_invariants()?;
        }
        Ok(())
    }

    /// Re-derive heavy membership and the box contribution of `label`.
    fn refresh_label(&mut self, label: i64) -> Result<()> {
        let state = self.labels.get_mut(&label).expect("label present after update");
        let old: Vec<Handle> = std::mem::take(&mut state.boxes);
        let count = state.count;
        for h in old {
            self.boxes.remove(h)?;
            self.box_label.remove(&h);
        }
        if count > self.b {
            self.heavy.insert(label);
            return Ok(());
        }
        self.heavy.remove(&label);
        let points: Vec<Vec<i64>> = self.labels[&label]
            .occurrences
            .iter()
            .flat_map(|(c, hs)| std::iter::repeat_n(c.clone(), hs.len()))
            .collect();
        let mut fresh = Vec::new();
        for (faces, count) in self.label_boxes(&points) {
            let h = self.boxes.insert(&faces, encode(count, label))?;
            self.box_label.insert(h, label);
            fresh.push(h);
        }
        self.labels.get_mut(&label).expect("label present").boxes = fresh;
        Ok(())
    }

    /// All boxes with faces on the points' coordinates holding at least one
    /// point, as `(l_1, r_1, …, l_d, r_d)` with their point counts.
    fn label_boxes(&mut self, points: &[Vec<i64>]) -> Vec<(Vec<i64>, usize)> {
        let d = self.dim;
        if points.is_empty() {
            return Vec::new();
        }
        let axes: Vec<Vec<i64>> = (0..d)
            .map(|ax| {
                let mut v: Vec<i64> = points.iter().map(|p| p[ax]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        // Exclusive prefix sums over the (|X_i|+1)-sized grid.
        let dims: Vec<usize> = axes.iter().map(|a| a.len() + 1).collect();
        let mut strides = vec![1usize; d];
        for ax in 1..d {
            strides[ax] = strides[ax - 1] * dims[ax - 1];
        }
        let mut sums = vec![0i64; strides[d - 1] * dims[d - 1]];
        for p in points {
            let idx: usize = (0..d).map(|ax| (axes[ax].binary_search(&p[ax]).expect("own coordinate") + 1) * strides[ax]).sum();
            sums[idx] += 1;
        }
        for ax in 0..d {
            for i in 0..sums.len() {
                if (i / strides[ax]) % dims[ax] > 0 {
                    sums[i] += sums[i - strides[ax]];
                }
            }
        }
        let pairs: Vec<Vec<(usize, usize)>> =
            axes.iter().map(|a| (0..a.len()).flat_map(|l| (l..a.len()).map(move |r| (l, r))).collect()).collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; d];
        loop {
            let mut count = 0i64;
            for corner in 0..(1usize << d) {
                let mut idx = 0;
                let mut sign = 1;
                for ax in 0..d {
                    let (l, r) = pairs[ax][pick[ax]];
                    if corner >> ax & 1 == 1 {
                        idx += (r + 1) * strides[ax];
                    } else {
                        idx += l * strides[ax];
                        sign = -sign;
                    }
                }
                count += sign * sums[idx];
            }
            self.work += 1;
            if count > 0 {
                let faces = (0..d)
                    .flat_map(|ax| {
                        let (l, r) = pairs[ax][pick[ax]];
                        [axes[ax][l], axes[ax][r]]
                    })
                    .collect();
                out.push((faces, count as usize));
            }
            let mut ax = 0;
            loop {
                if ax == d {
                    return out;
                }
                pick[ax] += 1;
                if pick[ax] < pairs[ax].len() {
                    break;
                }
                pick[ax] = 0;
                ax += 1;
            }
        }
    }

    /// Most frequent label in `b` (smallest label on ties), `None` if empty.
    pub fn query(&mut self, b: &BoxD) -> Result<Option<(i64, usize)>> {
        let ranges = b.raw_ranges(self.dim, self.scale)?;
        self.query_raw(&ranges)
    }

    /// As [`query`](Self::query) with inclusive raw ranges.
    pub fn query_raw(&mut self, ranges: &[(i64, i64)]) -> Result<Option<(i64, usize)>> {
        let mut best: Option<(i64, usize)> = None;
        let consider = |cand: (i64, usize), best: &mut Option<(i64, usize)>| {
            if cand.1 == 0 {
                return;
            }
            match *best {
                Some((bl, bf)) if bf > cand.1 || (bf == cand.1 && bl <= cand.0) => {}
                _ => *best = Some(cand),
            }
        };
        for &label in &self.heavy {
            let c = self.labels[&label].tree.count_raw(ranges)?;
            consider((label, c as usize), &mut best);
        }
        self.work += self.heavy.len() as u64;
        if ranges.iter().all(|&(l, h)| l <= h) {
            let faces: Vec<(i64, i64)> = ranges.iter().flat_map(|&(l, h)| [(l, i64::MAX), (i64::MIN, h)]).collect();
            if let Some((value, _)) = self.boxes.max_raw(&faces)? {
                consider(decode(value), &mut best);
            }
        }
        Ok(best)
    }

    /// Exhaustive check of the heavy/light partition and the box tree contents.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidArgument(format!("invariant violated: {m}")));
        let mut total = 0;
        for (&label, s) in &self.labels {
            total += s.count;
            if (s.count > self.b) != self.heavy.contains(&label) {
                return fail(format!("label {label} has {} points, threshold {}", s.count, self.b));
            }
            if s.tree.len() != s.count {
                return fail(format!("label {label} tree holds {} of {}", s.tree.len(), s.count));
            }
            let mut stored: Vec<(Vec<i64>, i64)> =
                s.boxes.iter().map(|&h| self.boxes.entry(h).map(|(c, v)| (c.to_vec(), v))).collect::<Option<Vec<_>>>().unwrap_or_default();
            if stored.len() != s.boxes.len() {
                return fail(format!("label {label} references missing boxes"));
            }
            let mut expect = Vec::new();
            if s.count <= self.b {
                let points: Vec<&Vec<i64>> = s.occurrences.iter().flat_map(|(c, hs)| std::iter::repeat_n(c, hs.len())).collect();
                let faces = |ax: usize| {
                    let mut v: Vec<i64> = points.iter().map(|p| p[ax]).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                let axes: Vec<Vec<i64>> = (0..self.dim).map(faces).collect();
                let mut boxes: Vec<Vec<i64>> = vec![Vec::new()];
                for a in &axes {
                    let mut next = Vec::new();
                    for prefix in &boxes {
                        for (i, &l) in a.iter().enumerate() {
                            for &r in &a[i..] {
                                let mut v = prefix.clone();
                                v.extend([l, r]);
                                next.push(v);
                            }
                        }
                    }
                    boxes = next;
                }
                for bx in boxes {
                    let c = points.iter().filter(|p| (0..self.dim).all(|ax| bx[2 * ax] <= p[ax] && p[ax] <= bx[2 * ax + 1])).count();
                    if c > 0 {
                        expect.push((bx, encode(c, label)));
                    }
                }
            }
            stored.sort();
            expect.sort();
            if stored != expect {
                return fail(format!("label {label} boxes differ from regeneration"));
            }
        }
        if total != self.live || self.heavy.len() * self.b > self.n_cap {
            return fail("live count or heavy-set size".into());
        }
        Ok(())
    }
}
