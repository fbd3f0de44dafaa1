//! Semi-online dynamization, 3D skyline counting as a block problem, and
//! exact oracles for skyline counting, unit-cube union volume and halfspace
//! containment counts.

mod halfspace;
mod klee;
mod semi_online;
mod skyline;

pub use halfspace::{Halfspace, HalfspaceSystem};
pub use klee::{klee_unit_oracle, KLEE_GRID_LIMIT};
pub use semi_online::{default_block_size, validate_trace, BlockProblem, OracleBlock, SemiOnlineEngine, SemiOnlineOp};
pub use skyline::{skyline_oracle, Skyline3dBlock, SkylineSummary};
