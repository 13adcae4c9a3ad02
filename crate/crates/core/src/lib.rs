//! Obstructions to A-B slicing of links: model decompositions, Bing cells,
//! gropes and Milnor invariants.

pub mod abslice;
pub mod bingcell;
pub mod diag;
pub mod error;
pub mod grope;
mod intser;
pub mod lambda;
pub mod linkhom;
pub mod modeltree;
pub mod sample;
pub mod word;

pub use error::{Error, Result};
