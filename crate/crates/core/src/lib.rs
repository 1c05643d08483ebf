//! Minimal free resolutions of stable monomial ideals in skew polynomial
//! rings `k_q[x_1, ..., x_n]`, where `x_i x_j = q_ij x_j x_i`.
//!
//! [`resolution::build_resolution`] constructs the resolution with exact
//! symbolic coefficients in the parameters `q_ij`; the remaining modules
//! compute its invariants, its DG algebra structure, and independent checks.

pub mod cli;
pub mod commutation;
pub mod dg;
pub mod element;
pub mod error;
pub mod families;
pub mod homology;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monoid;
pub mod resolution;
