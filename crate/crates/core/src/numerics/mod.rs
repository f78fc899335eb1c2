//! Special functions and quadrature primitives.
//!
//! Everything downstream leans on this layer: the complex gamma function,
//! Kummer's M (summed in double-double arithmetic to survive the
//! cancellation on oscillatory arguments), Weber parabolic cylinder
//! functions, Gauss-Legendre panel quadrature, and Cauchy-type integrals
//! over the half line (−∞, z₀] with the logarithmic subtraction used by
//! the partial transmission factor.

mod cauchy;
mod dd;
mod gamma;
mod grid;
mod kummer;
mod quad;
mod weber;

pub use cauchy::{beta_phase, cauchy_halfline_integral, log_weight_halfline_integral};
pub use gamma::{complex_gamma, digamma, recip_gamma};
pub use grid::RealGridFunction;
pub use kummer::kummer_m;
pub use quad::{gauss_legendre, gauss_legendre_nodes};
pub use weber::parabolic_cylinder_d;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("gamma pole: z = {0} is within 1e-12 of a non-positive integer")]
    Pole(num_complex::Complex64),
    #[error("series failed to reach tolerance {tol:e} after {terms} terms (|last| = {last:e})")]
    Convergence { terms: usize, tol: f64, last: f64 },
    #[error("grid does not support the integral: |ν| = {edge:e} at the left edge (need < {need:e})")]
    Truncation { edge: f64, need: f64 },
    #[error("evaluation point {0} is within 1e-10 of the cut (−∞, z₀]")]
    OnCut(num_complex::Complex64),
    #[error("grid function invalid: {0}")]
    BadGrid(&'static str),
}
