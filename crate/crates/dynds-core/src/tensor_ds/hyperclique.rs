use std::collections::HashSet;

use crate::error::{Error, Result};

/// Dynamic `k`-uniform hypergraph on vertices `0..n` answering whether a fixed
/// vertex `s` lies in a `(k+1)`-hyperclique.
pub trait HypercliqueSolver {
    fn insert_edge(&mut self, edge: &[usize]) -> Result<()>;

    fn delete_edge(&mut self, edge: &[usize]) -> Result<()>;

    fn query_s(&mut self) -> bool;

    fn visits(&self) -> u64;
}

#[derive(Clone, Debug)]
struct EdgeSet {
    k: usize,
    n: usize,
    s: usize,
    edges: HashSet<Vec<usize>>,
}

impl EdgeSet {
    fn new(k: usize, n: usize, s: usize) -> Result<Self> {
        if k < 1 || s >= n || k + 1 > n {
            return Err(Error::InvalidArgument(format!("need 1 ≤ k < n and s < n, got k={k}, n={n}, s={s}")));
        }
        Ok(Self { k, n, s, edges: HashSet::new() })
    }

    fn normalize(&self, edge: &[usize]) -> Result<Vec<usize>> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() != self.k || e.iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidArgument(format!("{edge:?} is not a {}-subset of 0..{}", self.k, self.n)));
        }
        Ok(e)
    }

    /// Whether every `k`-subset of `clique` other than `skip` is an edge.
    fn others_present(&self, clique: &[usize], skip: Option<usize>) -> bool {
        (0..clique.len()).filter(|&i| Some(clique[i]) != skip).all(|i| {
            let sub: Vec<usize> = clique.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            self.edges.contains(&sub)
        })
    }
}

/// Constant-time updates; a query enumerates every `k`-subset avoiding `s`.
#[derive(Clone, Debug)]
pub struct LazyHyperclique {
    g: EdgeSet,
    visits: u64,
}

impl LazyHyperclique {
    pub fn new(k: usize, n: usize, s: usize) -> Result<Self> {
        Ok(Self { g: EdgeSet::new(k, n, s)?, visits: 0 })
    }
}

impl HypercliqueSolver for LazyHyperclique {
    fn insert_edge(&mut self, edge: &[usize]) -> Result<()> {
        let e = self.g.normalize(edge)?;
        self.visits += 1;
        if !self.g.edges.insert(e) {
            return Err(Error::InvalidArgument(format!("edge {edge:?} already present")));
        }
        Ok(())
    }

    fn delete_edge(&mut self, edge: &[usize]) -> Result<()> {
        let e = self.g.normalize(edge)?;
        self.visits += 1;
        if !self.g.edges.remove(&e) {
            return Err(Error::Absent(format!("edge {edge:?}")));
        }
        Ok(())
    }

    fn query_s(&mut self) -> bool {
        let (k, n, s) = (self.g.k, self.g.n, self.g.s);
        let others: Vec<usize> = (0..n).filter(|&v| v != s).collect();
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            self.visits += 1;
            let t: Vec<usize> = pick.iter().map(|&i| others[i]).collect();
            if self.g.edges.contains(&t) {
                let mut clique = t.clone();
                clique.push(s);
                clique.sort_unstable();
                if self.g.others_present(&clique, Some(s)) {
                    return true;
                }
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if pick[i] < others.len() - k + i {
                    pick[i] += 1;
                    for j in i + 1..k {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn visits(&self) -> u64 {
        self.visits
    }
}

/// Per-vertex counts of `(k+1)`-hypercliques, adjusted over the `n − k`
/// extensions of each updated edge.
#[derive(Clone, Debug)]
pub struct CountingHyperclique {
    g: EdgeSet,
    counts: Vec<u64>,
    visits: u64,
}

impl CountingHyperclique {
    pub fn new(k: usize, n: usize, s: usize) -> Result<Self> {
        Ok(Self { g: EdgeSet::new(k, n, s)?, counts: vec![0; n], visits: 0 })
    }

    /// Number of `(k+1)`-hypercliques containing `v`.
    pub fn count(&self, v: usize) -> u64 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    /// Apply `±1` to every vertex of each hyperclique `e ∪ {v}` whose other edges are present.
    fn adjust(&mut self, e: &[usize], add: bool) {
        for v in 0..self.g.n {
            if e.contains(&v) {
                continue;
            }
            self.visits += 1;
            let mut clique = e.to_vec();
            clique.push(v);
            clique.sort_unstable();
            if self.g.others_present(&clique, Some(v)) {
                for &u in &clique {
                    if add {
                        self.counts[u] += 1;
                    } else {
                        self.counts[u] -= 1;
                    }
                }
            }
        }
    }

    /// Recount every vertex's hypercliques from scratch.
    pub fn recount(&self) -> Vec<u64> {
        let mut counts = vec![0; self.g.n];
        for e in &self.g.edges {
            for v in 0..self.g.n {
                if v > *e.last().expect("edge is non-empty") {
                    let mut clique = e.clone();
                    clique.push(v);
                    if self.g.others_present(&clique, Some(v)) {
                        for &u in &clique {
                            counts[u] += 1;
                        }
                    }
                }
            }
        }
        counts
    }
}

impl HypercliqueSolver for CountingHyperclique {
    fn insert_edge(&mut self, edge: &[usize]) -> Result<()> {
        let e = self.g.normalize(edge)?;
        if self.g.edges.contains(&e) {
            return Err(Error::InvalidArgument(format!("edge {edge:?} already present")));
        }
        self.adjust(&e, true);
        self.g.edges.insert(e);
        Ok(())
    }

    fn delete_edge(&mut self, edge: &[usize]) -> Result<()> {
        let e = self.g.normalize(edge)?;
        if !self.g.edges.remove(&e) {
            return Err(Error::Absent(format!("edge {edge:?}")));
        }
        self.adjust(&e, false);
        Ok(())
    }

    fn query_s(&mut self) -> bool {
        self.visits += 1;
        self.counts[self.g.s] > 0
    }

    fn visits(&self) -> u64 {
        self.visits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_through_s() {
        let mut lazy = LazyHyperclique::new(2, 4, 0).unwrap();
        let mut counting = CountingHyperclique::new(2, 4, 0).unwrap();
        assert!(!lazy.query_s());
        assert!(!counting.query_s());
        for e in [[0, 1], [0, 2], [1, 2]] {
            lazy.insert_edge(&e).unwrap();
            counting.insert_edge(&e).unwrap();
        }
        assert!(lazy.query_s());
        assert!(counting.query_s());
        assert_eq!(counting.count(0), 1);
        assert_eq!(counting.recount(), vec![1, 1, 1, 0]);
        assert!(counting.insert_edge(&[2, 1]).is_err());
        assert!(lazy.delete_edge(&[0, 3]).is_err());
        assert!(lazy.insert_edge(&[0, 0]).is_err());
        counting.delete_edge(&[1, 2]).unwrap();
        assert!(!counting.query_s());
    }
}
