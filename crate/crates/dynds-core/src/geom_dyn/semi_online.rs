use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::PointD;

/// A static problem that answers queries on a preprocessed core plus a small raw buffer.
pub trait BlockProblem {
    type Summary;
    type Answer;

    /// Buffer exponent of the block query cost `b^α · n^{1−β}`.
    fn alpha(&self) -> f64;

    fn beta(&self) -> f64;

    fn preprocess(&mut self, core: &[PointD]) -> Result<Self::Summary>;

    /// Answer on `core ∪ buffer`.
    fn block_query(&mut self, summary: &Self::Summary, buffer: &[PointD]) -> Result<Self::Answer>;

    /// Work counter accumulated over all calls.
    fn visits(&self) -> u64 {
        0
    }
}

/// Block problem answered by running `f` on the full point set.
pub struct OracleBlock<F> {
    f: F,
    scanned: u64,
}

impl<F> OracleBlock<F> {
    pub fn new(f: F) -> Self {
        Self { f, scanned: 0 }
    }
}

impl<A, F: FnMut(&[PointD]) -> Result<A>> BlockProblem for OracleBlock<F> {
    type Summary = Vec<PointD>;
    type Answer = A;

    fn alpha(&self) -> f64 {
        1.0
    }

    fn beta(&self) -> f64 {
        1.0
    }

    fn preprocess(&mut self, core: &[PointD]) -> Result<Vec<PointD>> {
        Ok(core.to_vec())
    }

    fn block_query(&mut self, summary: &Vec<PointD>, buffer: &[PointD]) -> Result<A> {
        let mut all = summary.clone();
        all.extend_from_slice(buffer);
        self.scanned += all.len() as u64;
        (self.f)(&all)
    }

    fn visits(&self) -> u64 {
        self.scanned
    }
}

/// One operation of a semi-online trace.
///
/// An insert names the index of the operation that will delete it; a delete
/// carries nothing and removes the element whose death index is its own index.
/// A death index at or beyond the trace length means the element is never deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiOnlineOp {
    Insert { point: PointD, death: usize },
    Delete,
    Query,
}

/// Check the semi-online contract and return the largest live size.
pub fn validate_trace(trace: &[SemiOnlineOp]) -> Result<usize> {
    let mut pending: HashMap<usize, usize> = HashMap::new();
    let (mut live, mut peak) = (0usize, 0usize);
    for (i, op) in trace.iter().enumerate() {
        let bad = |reason: String| Err(Error::InvalidTrace { index: i, reason });
        match op {
            SemiOnlineOp::Insert { death, .. } => {
                if *death <= i {
                    return bad(format!("death index {death} is not after the insert"));
                }
                if *death < trace.len() {
                    if pending.insert(*death, i).is_some() {
                        return bad(format!("two elements die at index {death}"));
                    }
                    if trace[*death] != SemiOnlineOp::Delete {
                        return bad(format!("death index {death} is not a delete"));
                    }
                }
                live += 1;
                peak = peak.max(live);
            }
            SemiOnlineOp::Delete => {
                if pending.remove(&i).is_none() {
                    return bad("delete matches no earlier insert".into());
                }
                live -= 1;
            }
            SemiOnlineOp::Query => {}
        }
    }
    Ok(peak)
}

/// Block size `round(n^{β/(1+α)})`, at least 1.
pub fn default_block_size(n: usize, alpha: f64, beta: f64) -> usize {
    ((n.max(1) as f64).powf(beta / (1.0 + alpha)).round() as usize).max(1)
}

/// Semi-online dynamization by periodic rebuilds with death-time lookahead.
///
/// Operations are processed in windows of `b`. At a window start, live
/// elements that survive the whole window form the preprocessed core and the
/// rest form the buffer. Inside the window inserts go to the buffer, deletes
/// leave it, and a query is one block query on core plus buffer.
pub struct SemiOnlineEngine<P: BlockProblem> {
    pub problem: P,
    block: Option<usize>,
    max_buffer: usize,
    windows: u64,
}

impl<P: BlockProblem> SemiOnlineEngine<P> {
    pub fn new(problem: P, block: Option<usize>) -> Result<Self> {
        if block == Some(0) {
            return Err(Error::InvalidArgument("block size must be positive".into()));
        }
        Ok(Self { problem, block, max_buffer: 0, windows: 0 })
    }

    /// Largest buffer seen during the last run.
    pub fn max_buffer(&self) -> usize {
        self.max_buffer
    }

    /// Windows (rebuilds) in the last run.
    pub fn windows(&self) -> u64 {
        self.windows
    }

    pub fn block_size(&self, trace: &[SemiOnlineOp]) -> Result<usize> {
        let n = validate_trace(trace)?;
        Ok(self.block.unwrap_or_else(|| default_block_size(n, self.problem.alpha(), self.problem.beta())))
    }

    /// Answers of the query operations, in order.
    pub fn run(&mut self, trace: &[SemiOnlineOp]) -> Result<Vec<P::Answer>> {
        let b = self.block_size(trace)?;
        self.max_buffer = 0;
        self.windows = 0;
        // Live elements as (death, point).
        let mut live: Vec<(usize, PointD)> = Vec::new();
        let mut answers = Vec::new();
        for start in (0..trace.len()).step_by(b) {
            let end = (start + b).min(trace.len());
            let (core, mut buffer): (Vec<_>, Vec<_>) = live.drain(..).partition(|(death, _)| *death >= end);
            let core_points: Vec<PointD> = core.iter().map(|(_, p)| p.clone()).collect();
            let summary = self.problem.preprocess(&core_points)?;
            self.windows += 1;
            for (i, op) in trace.iter().enumerate().take(end).skip(start) {
                match op {
                    SemiOnlineOp::Insert { point, death } => buffer.push((*death, point.clone())),
                    SemiOnlineOp::Delete => {
                        let at = buffer.iter().position(|(d, _)| *d == i).expect("validated delete is buffered");
                        buffer.swap_remove(at);
                    }
                    SemiOnlineOp::Query => {
                        let pts: Vec<PointD> = buffer.iter().map(|(_, p)| p.clone()).collect();
                        answers.push(self.problem.block_query(&summary, &pts)?);
                    }
                }
                self.max_buffer = self.max_buffer.max(buffer.len());
                debug_assert!(buffer.len() <= 2 * b);
            }
            live = core;
            live.append(&mut buffer);
        }
        Ok(answers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ins(v: i64, death: usize) -> SemiOnlineOp {
        SemiOnlineOp::Insert { point: PointD::ints(&[v]), death }
    }

    #[test]
    fn validation_errors_name_the_op() {
        let bad = [ins(1, 0)];
        assert_eq!(validate_trace(&bad), Err(Error::InvalidTrace { index: 0, reason: "death index 0 is not after the insert".into() }));
        let orphan = [SemiOnlineOp::Query, SemiOnlineOp::Delete];
        assert!(matches!(validate_trace(&orphan), Err(Error::InvalidTrace { index: 1, .. })));
        let not_delete = [ins(1, 1), SemiOnlineOp::Query];
        assert!(matches!(validate_trace(&not_delete), Err(Error::InvalidTrace { index: 0, .. })));
        assert_eq!(validate_trace(&[ins(1, 9), ins(2, 2), SemiOnlineOp::Delete]), Ok(2));
    }

    #[test]
    fn sums_match_direct_recomputation() {
        let trace = vec![ins(3, 3), ins(4, 99), SemiOnlineOp::Query, SemiOnlineOp::Delete, SemiOnlineOp::Query, ins(5, 99), SemiOnlineOp::Query];
        for b in [None, Some(1), Some(2), Some(7)] {
            let sum = OracleBlock::new(|pts: &[PointD]| Ok(pts.iter().map(|p| p.raw(0)).sum::<i64>()));
            let mut engine = SemiOnlineEngine::new(sum, b).unwrap();
            assert_eq!(engine.run(&trace).unwrap(), vec![7, 4, 9]);
            assert!(engine.max_buffer() <= 2 * engine.block_size(&trace).unwrap());
        }
    }
}
