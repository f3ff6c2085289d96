//! Exact linear algebra over the rationals: dense matrices with
//! fraction-free determinants, polynomials, symmetric functions of a
//! finite alphabet and Vandermonde inversion.

mod matrix;
mod poly;
mod symmetric;
mod vandermonde;

pub use matrix::RatMatrix;
pub use poly::Poly;
pub use symmetric::{complete_sym, elementary_all, elementary_sym};
pub use vandermonde::{vandermonde_det, vandermonde_inverse, vandermonde_matrix, vandermonde_sum, Nodes};

use crate::rat::Rat;
use num::One;

/// prod_{k != j} (p_j - p_k); dividing a numerator evaluated at p_j by this
/// gives the residue at p_j of numer / prod_k (z - p_k).
pub fn residue_denominator(poles: &[Rat], j: usize) -> Rat {
    let mut acc = Rat::one();
    for (k, p) in poles.iter().enumerate() {
        if k != j {
            acc *= &poles[j] - p;
        }
    }
    acc
}
