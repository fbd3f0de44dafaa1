//! Dynamic range-query structures, fine-grained reductions between them, and
//! brute-force oracles for cross-validation.

use std::sync::OnceLock;

pub mod colors;
pub mod error;
pub mod geom;
pub mod geom_dyn;
pub mod range_mode;
pub mod reductions;
pub mod scaling;
pub mod tensor_ds;

pub use error::{Error, Result};
pub use geom::{dominates, AggregateMode, BoxD, DynamicRangeTree, Interval, OrthantUnion3D, PointD, RangeTree, ScaledInt};

/// True when `DYNDS_DEBUG_ASSERT=1`: structures then re-check their full
/// invariants after every update.
pub fn debug_checks() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| std::env::var("DYNDS_DEBUG_ASSERT").is_ok_and(|v| v == "1"))
}
