//! Finite simplicial sets, their lifting problems, and cylinders over `Δ[1]`.

pub mod category;
pub mod colimits;
pub mod cylinders;
pub mod delta;
pub mod error;
pub mod fib;
pub mod join;
pub mod levelwise;
pub mod lifting;
pub mod map;
pub mod ops;
pub mod sset;
pub mod standard;

pub use category::{CategoryBuilder, FiniteCategory, Functor};
pub use delta::{EpiMonoPair, MonotoneMap};
pub use error::{Error, Result};
pub use map::{MapProperties, SimplicialMap};
pub use sset::{SSetBuilder, Simplex, SimplicialSet};
