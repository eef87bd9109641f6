//! Framed graphs with black and red edges, the bialgebras they span, the
//! 4-term relations between them, and two 4-invariants.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and graphs are identified up to isomorphism by a canonical key.

#![no_std]

extern crate alloc;

pub mod bialgebra;
pub mod canon;
pub mod combination;
pub mod enumerate;
pub mod fourterm;
pub mod graph;
pub mod invariants;
pub mod reduction;
pub mod scalar;
pub mod span;

pub use canon::{canonical_form, canonical_labeling, CanonicalKey, Canonizer};
pub use combination::{Combination, LinearCombination, Tensor};
pub use graph::{EdgeColor, FramedGraph, GraphError, Palette};
pub use scalar::Scalar;
