//! Signatures, interlacing and Gelfand–Tsetlin pattern enumeration, with
//! the brute-force counting oracles built on it and the closed-form
//! dimension formulas they check.

mod dims;
mod pattern;
mod signature;

pub use dims::{dim_oracle, dim_product, q_dim, q_dim_oracle, q_rel_dim_oracle, rel_dim_oracle, volume};
pub use pattern::{enumerate_trapezoids, Budget, GTPattern, Trapezoids, DEFAULT_BUDGET};
pub use signature::{fitting_signatures, interlaces, signatures_in_box, Signature};
