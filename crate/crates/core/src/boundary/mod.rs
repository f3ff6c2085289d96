//! Boundary points ω of the Gelfand–Tsetlin graph, the function Φ(u;ω) and
//! its Laurent coefficients φ_n, the limiting links Λ^∞_K, the embedding
//! ν ↦ ω(ν) and the unit-circle integral representation of A_i.

mod omega;
mod phi;

pub use omega::{embed, OmegaPoint};
pub use phi::{
    a_coeff_unit_circle, link_infinity, phi_coeffs, phi_eval, phi_eval_complex, phi_signature, r_kernel, uat_gap,
    LaurentWindow, PhiMode, Scalar,
};
