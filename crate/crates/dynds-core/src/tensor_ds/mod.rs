//! Tensor structures: zero prefix sums under point updates, axis increments
//! with maximum queries, hyperclique detection and OuMv.

mod erickson;
mod hyperclique;
mod langerman;
mod oumv;
mod tensor;

pub use erickson::{EagerErickson, EricksonSolver, LazyErickson};
pub use hyperclique::{CountingHyperclique, HypercliqueSolver, LazyHyperclique};
pub use langerman::{default_block_side, LangermanDS};
pub use oumv::{oumv_batched_driver, oumv_bruteforce, BatchedRun, OuMvInstance, OuMvSolver, ScanSolver};
pub use tensor::{langerman_oracle, Tensor, TENSOR_LIMIT};
