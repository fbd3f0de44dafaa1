//! Trace and instance file handling behind the `dynds` binary.

pub mod commands;
pub mod gen;
pub mod solve;
pub mod trace;

pub use commands::{bench, crosscheck, reduce, structure_suite, Failure, Scope, StructureReport};
pub use gen::random_trace;
pub use solve::{solve, SolveError, Solved, StructureId};
pub use trace::{Header, Op, OpKind, OpTrace, Problem};
