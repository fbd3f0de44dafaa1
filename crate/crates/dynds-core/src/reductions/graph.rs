use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};

/// Vertex `index` (0-based) of part `part` (0-based).
pub type Vertex = (usize, usize);

/// Graph whose vertices are split into parts with edges only across parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl KPartiteGraph {
    pub fn new(sizes: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &s in sizes {
            offsets.push(total);
            total += s;
        }
        Self { sizes: sizes.to_vec(), offsets, adj: vec![vec![false; total]; total] }
    }

    /// Each cross-part pair becomes an edge with probability `p`.
    pub fn random(rng: &mut impl Rng, sizes: &[usize], p: f64) -> Self {
        let mut g = Self::new(sizes);
        for pa in 0..sizes.len() {
            for pb in pa + 1..sizes.len() {
                for u in 0..sizes[pa] {
                    for v in 0..sizes[pb] {
                        if rng.gen_bool(p) {
                            g.add_edge((pa, u), (pb, v)).expect("in range");
                        }
                    }
                }
            }
        }
        g
    }

    /// Every cross-part pair is an edge.
    pub fn complete(sizes: &[usize]) -> Self {
        let mut g = Self::new(sizes);
        for pa in 0..sizes.len() {
            for pb in pa + 1..sizes.len() {
                for u in 0..sizes[pa] {
                    for v in 0..sizes[pb] {
                        g.add_edge((pa, u), (pb, v)).expect("in range");
                    }
                }
            }
        }
        g
    }

    pub fn parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, part: usize) -> usize {
        self.sizes[part]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    fn id(&self, (p, u): Vertex) -> Result<usize> {
        if p >= self.sizes.len() || u >= self.sizes[p] {
            return Err(Error::InvalidArgument(format!("vertex {u} of part {p} does not exist")));
        }
        Ok(self.offsets[p] + u)
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        self.set_edge(a, b, true)
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        self.set_edge(a, b, false)
    }

    fn set_edge(&mut self, a: Vertex, b: Vertex, on: bool) -> Result<()> {
        if a.0 == b.0 {
            return Err(Error::InvalidArgument(format!("edge inside part {}", a.0)));
        }
        let (x, y) = (self.id(a)?, self.id(b)?);
        self.adj[x][y] = on;
        self.adj[y][x] = on;
        Ok(())
    }

    /// Adjacency; out-of-range vertices are never adjacent.
    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        match (self.id(a), self.id(b)) {
            (Ok(x), Ok(y)) => self.adj[x][y],
            _ => false,
        }
    }

    /// Neighbours of `v` inside `part`, in index order.
    pub fn neighbors_in(&self, v: Vertex, part: usize) -> Vec<usize> {
        (0..self.sizes[part]).filter(|&u| self.adjacent(v, (part, u))).collect()
    }

    /// Edges as `(a, b)` with `a.0 < b.0`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for pa in 0..self.parts() {
            for pb in pa + 1..self.parts() {
                for u in 0..self.sizes[pa] {
                    for v in 0..self.sizes[pb] {
                        if self.adjacent((pa, u), (pb, v)) {
                            out.push(((pa, u), (pb, v)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether the chosen vertices, one per listed part, are pairwise adjacent.
    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }
}

/// Whether some choice of one vertex per part is pairwise adjacent.
///
/// Depth-first over parts, extending only with vertices adjacent to every
/// vertex chosen so far.
pub fn clique_bruteforce(g: &KPartiteGraph) -> bool {
    fn extend(g: &KPartiteGraph, chosen: &mut Vec<Vertex>) -> bool {
        let p = chosen.len();
        if p == g.parts() {
            return true;
        }
        for u in 0..g.size(p) {
            if chosen.iter().all(|&c| g.adjacent(c, (p, u))) {
                chosen.push((p, u));
                if extend(g, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    g.parts() > 0 && extend(g, &mut Vec::new())
}

/// Undirected graph with a dynamic active vertex set, answering s–t
/// connectivity inside the active set by breadth-first search.
#[derive(Clone, Debug)]
pub struct SubConnOracle {
    adj: Vec<Vec<usize>>,
    active: Vec<bool>,
    s: usize,
    t: usize,
    visits: u64,
}

impl SubConnOracle {
    /// All vertices start active.
    pub fn new(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<Self> {
        if s >= n || t >= n {
            return Err(Error::InvalidArgument(format!("s={s} or t={t} outside 0..{n}")));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) outside 0..{n}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(Self { adj, active: vec![true; n], s, t, visits: 0 })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active.get(v).copied().unwrap_or(false)
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn set_active(&mut self, v: usize, on: bool) -> Result<()> {
        let slot = self.active.get_mut(v).ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {v}")))?;
        *slot = on;
        self.visits += 1;
        Ok(())
    }

    pub fn query(&mut self) -> bool {
        if !self.active[self.s] || !self.active[self.t] {
            return false;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([self.s]);
        seen[self.s] = true;
        while let Some(u) = queue.pop_front() {
            if u == self.t {
                return true;
            }
            for &v in &self.adj[u] {
                self.visits += 1;
                if self.active[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        false
    }

    pub fn visits(&self) -> u64 {
        self.visits
    }
}

/// Directed graph under edge updates answering whether `t` is reachable from `s`.
#[derive(Clone, Debug)]
pub struct StReachOracle {
    out: Vec<HashSet<usize>>,
    s: usize,
    t: usize,
    visits: u64,
}

impl StReachOracle {
    pub fn new(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<Self> {
        if s >= n || t >= n {
            return Err(Error::InvalidArgument(format!("s={s} or t={t} outside 0..{n}")));
        }
        let mut g = Self { out: vec![HashSet::new(); n], s, t, visits: 0 };
        for &(a, b) in edges {
            g.insert_edge(a, b)?;
        }
        g.visits = 0;
        Ok(g)
    }

    fn check(&self, a: usize, b: usize) -> Result<()> {
        let n = self.out.len();
        if a >= n || b >= n {
            return Err(Error::InvalidArgument(format!("edge ({a},{b}) outside 0..{n}")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.out.get(a).is_some_and(|o| o.contains(&b))
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.out.iter().enumerate().flat_map(|(a, o)| o.iter().map(move |&b| (a, b))).collect();
        out.sort_unstable();
        out
    }

    pub fn insert_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a, b)?;
        self.visits += 1;
        if !self.out[a].insert(b) {
            return Err(Error::InvalidArgument(format!("edge ({a},{b}) already present")));
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a, b)?;
        self.visits += 1;
        if !self.out[a].remove(&b) {
            return Err(Error::Absent(format!("edge ({a},{b})")));
        }
        Ok(())
    }

    pub fn query(&mut self) -> bool {
        let mut seen = vec![false; self.out.len()];
        let mut stack = vec![self.s];
        seen[self.s] = true;
        while let Some(u) = stack.pop() {
            if u == self.t {
                return true;
            }
            for &v in &self.out[u] {
                self.visits += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    pub fn visits(&self) -> u64 {
        self.visits
    }
}
