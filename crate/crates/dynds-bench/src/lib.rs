//! Size selection shared by the criterion benches.

use dynds_core::scaling::BenchStructure;

/// The three smallest default sizes, which keep a criterion run short.
pub fn wall_clock_sizes(s: BenchStructure) -> Vec<usize> {
    s.default_sizes().into_iter().take(3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_increasing() {
        for s in BenchStructure::ALL {
            let v = wall_clock_sizes(s);
            assert_eq!(v.len(), 3);
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
