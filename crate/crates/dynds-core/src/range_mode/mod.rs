//! Dynamic range mode over labelled points and over a sequence, with scan oracles.

mod dmode;
mod oracle;
mod sequence;

pub use dmode::{default_threshold, DynRangeModeDS, UpdateKind};
pub use oracle::{batch_dmode_oracle, minority_oracle, mode_oracle, VecSequence};
pub use sequence::SequenceAdapter;
