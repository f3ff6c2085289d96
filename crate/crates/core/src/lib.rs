//! Exact computations on Gelfand–Tsetlin patterns: dimensions, Schur
//! functions, determinantal formulas for the links between levels, their
//! boundary limit and their q-deformation.

// Index loops mirror the matrix notation they implement.
#![allow(clippy::needless_range_loop)]

pub mod boundary;
pub mod detformula;
pub mod error;
pub mod gt;
pub mod linalg;
pub mod qdeform;
pub mod rat;
pub mod schur;

pub use error::{Error, Result};
pub use rat::{QParam, Rat};
