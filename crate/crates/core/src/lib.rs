//! Numerical toolkit for the Wadati-Konno-Ichikawa equation
//!
//!   i q_t + ( q / sqrt(1 + |q|^2) )_xx = 0
//!
//! with finite-density boundary data q(x) -> q± as x -> ±∞, |q±| = q0.
//!
//! The crate is organised around the inverse scattering transform:
//!
//! * [`numerics`] — special functions (complex gamma, Kummer M, Weber D),
//!   Gauss-Legendre panels and Cauchy-type integrals on a half line;
//! * [`profile`] — sampled initial data and the hodograph scale
//!   y = x + ∫(Φ/Φ₀ − 1);
//! * [`scattering`] — Jost solutions, scattering matrix, reflection
//!   coefficient, discrete spectrum and norming constants;
//! * [`soliton`] — the reflectionless residue engine and field
//!   reconstruction in parametric form;
//! * [`asymptotics`] — the deformation scalars (ν, T, T₀, T₁), the
//!   parabolic-cylinder local model and the two-term long-time formula;
//! * [`oracle`] — a direct method-of-lines simulator used as ground truth.

pub mod asymptotics;
pub mod dual;
pub mod numerics;
pub mod oracle;
pub mod profile;
pub mod scattering;
pub mod soliton;

pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = num_complex::Complex64;

/// 2×2 complex matrix stored row-major; all RHP algebra is done on these.
pub type Mat2 = [[C64; 2]; 2];

pub(crate) const IDENTITY: Mat2 = [
    [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
];

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn mat_inv(a: &Mat2) -> Mat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ]
}

pub(crate) fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = *a;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

/// Max-abs entry norm; the residual measure used by every jump test.
pub fn mat_norm(a: &Mat2) -> f64 {
    let mut m = 0.0f64;
    for row in a {
        for e in row {
            m = m.max(e.norm());
        }
    }
    m
}
