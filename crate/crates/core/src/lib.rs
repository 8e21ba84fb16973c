//! Pseudo-random arrays and array codes built by folding binary sequences.

mod error;

pub mod bitmatrix;
pub mod criteria;
pub mod field;
pub mod folding;
pub mod gf2poly;
pub mod lfsr;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
