//! Common-colours counting over a toggled colour array and dynamic 2D
//! distinct-colour counting by periodic rebuilds.

mod common;
mod dyn_count;

pub use common::{cc_oracle, default_color_threshold, docs_oracle, CommonColorsDS, SymbolIndex};
pub use dyn_count::{color_count_oracle, default_rebuild_period, ColorCountBackend, DynColorCountDS, PerColorTrees, ScanBackend};
