//! Panelled Gauss-Legendre quadrature. Nodes and weights are computed by
//! Newton iteration on the Legendre recurrence, so any order ≥ 2 works.

use crate::C64;
use std::f64::consts::PI;

/// Nodes and weights on [−1, 1] for the given order.
pub fn gauss_legendre_nodes(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 2, "gauss_legendre: order must be at least 2");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n and derivative by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// ∫_a^b f(x) dx over `panels` equal panels with `order`-point Gauss-Legendre
/// per panel; exact for polynomials of degree ≤ 2·order − 1 per panel.
pub fn gauss_legendre<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> C64 {
    assert!(a < b, "gauss_legendre: need a < b");
    let (nodes, weights) = gauss_legendre_nodes(order);
    let mut total = C64::new(0.0, 0.0);
    let width = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in nodes.iter().zip(&weights) {
            total += f(mid + half * x) * (w * half);
        }
    }
    total
}
