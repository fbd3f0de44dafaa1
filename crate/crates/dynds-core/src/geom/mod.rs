//! Exact coordinates, boxes, range trees and the 3D orthant-union decomposition.

mod dynamic;
mod orthant;
mod range_tree;
mod scaled;
mod shapes;

pub use dynamic::{DynamicRangeTree, Handle};
pub use orthant::OrthantUnion3D;
pub use range_tree::{AggregateMode, MaxEntry, QueryAnswer, RangeTree, VisitCounter, VISIT_CONSTANT};
pub use scaled::ScaledInt;
pub use shapes::{dominates, Bound, BoxD, Interval, PointD};
