//! Cauchy-type integrals over the half line (−∞, z₀] against a sampled
//! density ν, including the logarithmic subtraction that makes the
//! evaluation stable arbitrarily close to the cut.
//!
//! All logs are principal branch; the closed-form pieces keep their cut on
//! (−∞, 0] of the argument, which coincides with the integration cut.

use super::grid::RealGridFunction;
use super::quad::gauss_legendre_nodes;
use super::NumericsError;
use crate::C64;

const EDGE_DECAY: f64 = 1e-10;
const ON_CUT: f64 = 1e-10;
const SUBTRACT_WITHIN: f64 = 0.5;
const ORDER: usize = 16;

fn dist_to_cut(z: C64, z0: f64) -> f64 {
    if z.re <= z0 {
        z.im.abs()
    } else {
        (z - C64::new(z0, 0.0)).norm()
    }
}

/// Panel quadrature of ∫ (ν(s) − χ_[lo,hi](s)·ν_sub) / (s − z) ds over
/// [left_edge, z₀], panels aligned to the ν grid.
fn subtracted_quadrature(
    nu: &RealGridFunction,
    z0: f64,
    z: C64,
    window: Option<(f64, f64, C64)>,
) -> C64 {
    let (gl_x, gl_w) = gauss_legendre_nodes(ORDER);
    let mut bounds: Vec<f64> = nu
        .nodes()
        .iter()
        .copied()
        .filter(|&x| x < z0)
        .collect();
    bounds.push(z0.min(nu.right_edge()));
    if let Some((lo, hi, _)) = window {
        for b in [lo, hi] {
            if b > bounds[0] && b < *bounds.last().unwrap() {
                bounds.push(b);
            }
        }
        bounds.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bounds.dedup();
    }
    let mut total = C64::new(0.0, 0.0);
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-14 {
            continue;
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, wt) in gl_x.iter().zip(&gl_w) {
            let s = mid + half * x;
            let mut f = nu.eval(s);
            if let Some((lo, hi, vsub)) = window {
                if s >= lo && s <= hi {
                    f -= vsub;
                }
            }
            total += f / (C64::new(s, 0.0) - z) * (wt * half);
        }
    }
    total
}

/// ∫_{−∞}^{z₀} ν(s)/(s−z) ds.
///
/// Requires |ν| < 1e-10 at the left grid edge (the tail is then below the
/// quadrature floor). Near the cut the constant part of ν around Re z is
/// subtracted and reinstated in closed form, so two-sided limits z = x ± iε
/// are accurate down to ε ~ 1e-9.
pub fn cauchy_halfline_integral(
    nu: &RealGridFunction,
    z0: f64,
    z: C64,
) -> Result<C64, NumericsError> {
    let edge = nu.values()[0].norm();
    if edge >= EDGE_DECAY {
        return Err(NumericsError::Truncation {
            edge,
            need: EDGE_DECAY,
        });
    }
    let d = dist_to_cut(z, z0);
    if d < ON_CUT {
        return Err(NumericsError::OnCut(z));
    }
    if d >= SUBTRACT_WITHIN || z.re < nu.left_edge() + 1.0 {
        return Ok(subtracted_quadrature(nu, z0, z, None));
    }
    let hi_cap = z0.min(nu.right_edge());
    let xs = z.re.clamp(nu.left_edge() + 1.0, hi_cap);
    let vsub = nu.eval(xs);
    let lo = (xs - 1.0).max(nu.left_edge());
    let hi = (xs + 1.0).min(hi_cap);
    let quad = subtracted_quadrature(nu, z0, z, Some((lo, hi, vsub)));
    let closed = vsub * ((C64::new(hi, 0.0) - z).ln() - (C64::new(lo, 0.0) - z).ln());
    Ok(quad + closed)
}

/// β(z, z₀) = −ν(z₀)·log(z − z₀ + 1) + ∫_{−∞}^{z₀} (ν(s) − χ(s)ν(z₀))/(s−z) ds
/// with χ = 1 on (z₀−1, z₀), 0 below. The subtraction makes the integrand
/// regular at s = z₀, so β(z₀, z₀) is directly computable.
pub fn beta_phase(
    z: C64,
    z0: f64,
    nu: &RealGridFunction,
) -> Result<C64, NumericsError> {
    let edge = nu.values()[0].norm();
    if edge >= EDGE_DECAY {
        return Err(NumericsError::Truncation {
            edge,
            need: EDGE_DECAY,
        });
    }
    let nu0 = nu.eval(z0);
    let lo = (z0 - 1.0).max(nu.left_edge());
    let quad = subtracted_quadrature(nu, z0, z, Some((lo, z0, nu0)));
    Ok(-nu0 * (z - z0 + 1.0).ln() + quad)
}

/// ∫_{z₀}^{∞} w(s)/(s−z) ds for a grid density w (used with
/// w = log(1+|r|²) when modifying norming constants). Truncated at the
/// right grid edge; the caller checks the decay there.
pub fn log_weight_halfline_integral(w: &RealGridFunction, z0: f64, z: C64) -> C64 {
    let (gl_x, gl_w) = gauss_legendre_nodes(ORDER);
    let mut bounds: Vec<f64> = w.nodes().iter().copied().filter(|&x| x > z0).collect();
    bounds.insert(0, z0.max(w.left_edge()));
    let mut total = C64::new(0.0, 0.0);
    for win in bounds.windows(2) {
        let (a, b) = (win[0], win[1]);
        if b - a < 1e-14 {
            continue;
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, wt) in gl_x.iter().zip(&gl_w) {
            let s = mid + half * x;
            total += w.eval(s) / (C64::new(s, 0.0) - z) * (wt * half);
        }
    }
    total
}
