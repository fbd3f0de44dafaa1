//! Insert/remove front end over static [`RangeTree`] blocks.
//!
//! Entries live in blocks of at most `2^i` entries at level `i`. An insert
//! merges the live entries of the occupied low levels into one rebuilt block;
//! a remove deactivates the entry in place. When dead entries outnumber live
//! ones everything is rebuilt into a single block. Build work is charged to
//! the visit counter.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::range_tree::{AggregateMode, MaxEntry, RangeTree};

/// Opaque handle of an entry in a [`DynamicRangeTree`].
pub type Handle = u64;

#[derive(Clone, Debug)]
struct Block {
    tree: RangeTree,
    handles: Vec<Handle>,
    live: usize,
}

#[derive(Clone, Debug)]
pub struct DynamicRangeTree {
    dim: usize,
    scale: i64,
    mode: AggregateMode,
    levels: Vec<Option<Block>>,
    loc: HashMap<Handle, (u32, u32)>,
    next_handle: Handle,
    live: usize,
    slots: usize,
    retired_visits: u64,
}

struct Staged {
    handle: Handle,
    coords: Vec<i64>,
    value: i64,
}

impl DynamicRangeTree {
    pub fn new(dim: usize, scale: i64, mode: AggregateMode) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if scale <= 0 {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
        }
        Ok(Self {
            dim,
            scale,
            mode,
            levels: Vec::new(),
            loc: HashMap::new(),
            next_handle: 0,
            live: 0,
            slots: 0,
            retired_visits: 0,
        })
    }

    /// Bulk-load entries into one block; returns their handles in input order.
    pub fn with_entries(dim: usize, scale: i64, mode: AggregateMode, entries: &[(Vec<i64>, i64)]) -> Result<(Self, Vec<Handle>)> {
        let mut t = Self::new(dim, scale, mode)?;
        let mut staged = Vec::with_capacity(entries.len());
        let mut handles = Vec::with_capacity(entries.len());
        for (coords, value) in entries {
            t.check_coords(coords)?;
            let handle = t.next_handle;
            t.next_handle += 1;
            handles.push(handle);
            staged.push(Staged { handle, coords: coords.clone(), value: *value });
        }
        if !staged.is_empty() {
            let level = level_for(staged.len());
            t.place(staged, level)?;
        }
        Ok((t, handles))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Number of live entries.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn contains(&self, h: Handle) -> bool {
        self.loc.contains_key(&h)
    }

    pub fn visits(&self) -> u64 {
        self.retired_visits + self.levels.iter().flatten().map(|b| b.tree.visits()).sum::<u64>()
    }

    fn check_coords(&self, coords: &[i64]) -> Result<()> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coords.len() });
        }
        Ok(())
    }

    pub fn insert(&mut self, coords: &[i64], value: i64) -> Result<Handle> {
        self.check_coords(coords)?;
        let handle = self.next_handle;
        self.next_handle += 1;
        let mut carry = vec![Staged { handle, coords: coords.to_vec(), value }];
        let mut level = 0;
        while level < self.levels.len() && (self.levels[level].is_some() || carry.len() > 1 << level) {
            if let Some(block) = self.levels[level].take() {
                self.drain_block(block, &mut carry);
            }
            level += 1;
        }
        self.place(carry, level)?;
        Ok(handle)
    }

    pub fn remove(&mut self, h: Handle) -> Result<()> {
        let (level, local) = self.loc.remove(&h).ok_or(Error::UnknownEntry(h))?;
        let block = self.levels[level as usize].as_mut().expect("located block exists");
        block.tree.toggle(local as usize, false)?;
        block.live -= 1;
        self.live -= 1;
        if block.live == 0 {
            let block = self.levels[level as usize].take().expect("block exists");
            self.slots -= block.handles.len();
            self.retired_visits += block.tree.visits();
        }
        if self.slots > 2 * self.live + 32 {
            self.compact()?;
        }
        Ok(())
    }

    fn drain_block(&mut self, block: Block, carry: &mut Vec<Staged>) {
        self.slots -= block.handles.len();
        self.retired_visits += block.tree.visits();
        for (local, &handle) in block.handles.iter().enumerate() {
            if block.tree.is_active(local) {
                self.loc.remove(&handle);
                self.live -= 1;
                carry.push(Staged { handle, coords: block.tree.raw_point(local).to_vec(), value: block.tree.value(local) });
            }
        }
    }

    fn compact(&mut self) -> Result<()> {
        let mut carry = Vec::with_capacity(self.live);
        for level in 0..self.levels.len() {
            if let Some(block) = self.levels[level].take() {
                self.drain_block(block, &mut carry);
            }
        }
        if !carry.is_empty() {
            let level = level_for(carry.len());
            self.place(carry, level)?;
        }
        Ok(())
    }

    fn place(&mut self, mut carry: Vec<Staged>, level: usize) -> Result<()> {
        // Local order follows handle order so max ties resolve by smallest handle.
        carry.sort_by_key(|s| s.handle);
        let mut coords = Vec::with_capacity(carry.len() * self.dim);
        let mut values = Vec::with_capacity(carry.len());
        let mut handles = Vec::with_capacity(carry.len());
        for s in &carry {
            coords.extend_from_slice(&s.coords);
            values.push(s.value);
            handles.push(s.handle);
        }
        let mut tree = RangeTree::from_raw(self.dim, self.scale, coords, values, self.mode)?;
        self.retired_visits += tree.build_cost();
        for local in 0..handles.len() {
            tree.toggle(local, true)?;
        }
        for (local, &h) in handles.iter().enumerate() {
            self.loc.insert(h, (level as u32, local as u32));
        }
        self.live += handles.len();
        self.slots += handles.len();
        if self.levels.len() <= level {
            self.levels.resize_with(level + 1, || None);
        }
        self.levels[level] = Some(Block { tree, live: handles.len(), handles });
        Ok(())
    }

    /// Live entries in the inclusive raw ranges.
    pub fn count_raw(&self, ranges: &[(i64, i64)]) -> Result<u64> {
        let mut total = 0;
        for b in self.levels.iter().flatten() {
            total += b.tree.count_raw(ranges)?;
        }
        Ok(total)
    }

    /// True if no live entry lies in the inclusive ranges.
    pub fn empty_raw(&self, ranges: &[(i64, i64)]) -> bool {
        self.levels.iter().flatten().all(|b| b.tree.empty_raw(ranges))
    }

    /// Maximum `(value, handle)`; ties go to the smallest handle.
    pub fn max_raw(&self, ranges: &[(i64, i64)]) -> Result<Option<(i64, Handle)>> {
        let mut best: Option<(i64, Handle)> = None;
        for b in self.levels.iter().flatten() {
            let m: MaxEntry = b.tree.max_raw(ranges)?;
            if let Some((v, local)) = m {
                let cand = (v, b.handles[local as usize]);
                best = match best {
                    None => Some(cand),
                    Some(cur) => {
                        if cand.0 > cur.0 || (cand.0 == cur.0 && cand.1 < cur.1) {
                            Some(cand)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        Ok(best)
    }

    /// Coordinates and value of a live entry.
    pub fn entry(&self, h: Handle) -> Option<(&[i64], i64)> {
        let &(level, local) = self.loc.get(&h)?;
        let block = self.levels[level as usize].as_ref()?;
        Some((block.tree.raw_point(local as usize), block.tree.value(local as usize)))
    }

    /// Handles of all live entries, ascending.
    pub fn handles(&self) -> Vec<Handle> {
        let mut v: Vec<Handle> = self.loc.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

fn level_for(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}
