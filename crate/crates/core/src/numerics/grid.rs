//! Complex-valued function samples on a strictly increasing real grid, with
//! local-cubic interpolation. Carrier type for r(z) and ν(z).

use super::NumericsError;
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealGridFunction {
    nodes: Vec<f64>,
    values: Vec<C64>,
}

impl RealGridFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<C64>) -> Result<Self, NumericsError> {
        if nodes.len() != values.len() {
            return Err(NumericsError::BadGrid("nodes/values length mismatch"));
        }
        if nodes.len() < 2 {
            return Err(NumericsError::BadGrid("need at least 2 nodes"));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NumericsError::BadGrid("nodes must be strictly increasing"));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite())
            || nodes.iter().any(|x| !x.is_finite())
        {
            return Err(NumericsError::BadGrid("non-finite entries"));
        }
        Ok(Self { nodes, values })
    }

    /// Sample a closure on an equispaced grid.
    pub fn sample<F: Fn(f64) -> C64>(a: f64, b: f64, n: usize, f: F) -> Self {
        let nodes: Vec<f64> = (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect();
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self::new(nodes, values).expect("sample grid is valid by construction")
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn left_edge(&self) -> f64 {
        self.nodes[0]
    }

    pub fn right_edge(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    fn bracket(&self, x: f64) -> usize {
        // index i with nodes[i] <= x < nodes[i+1], clamped
        match self.nodes.binary_search_by(|n| n.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.nodes.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.nodes.len() - 2),
        }
    }

    /// Local-cubic (4-point Lagrange) interpolation; returns 0 outside the
    /// grid span (grid functions here decay by construction).
    pub fn eval(&self, x: f64) -> C64 {
        if x < self.nodes[0] || x > self.right_edge() {
            return C64::new(0.0, 0.0);
        }
        let i = self.bracket(x);
        let lo = i.saturating_sub(1).min(self.nodes.len() - 4);
        let xs = &self.nodes[lo..lo + 4];
        let vs = &self.values[lo..lo + 4];
        let mut out = C64::new(0.0, 0.0);
        for j in 0..4 {
            let mut l = 1.0;
            for k in 0..4 {
                if k != j {
                    l *= (x - xs[k]) / (xs[j] - xs[k]);
                }
            }
            out += vs[j] * l;
        }
        out
    }

    /// Derivative of the local cubic.
    pub fn eval_deriv(&self, x: f64) -> C64 {
        if x < self.nodes[0] || x > self.right_edge() {
            return C64::new(0.0, 0.0);
        }
        let i = self.bracket(x);
        let lo = i.saturating_sub(1).min(self.nodes.len() - 4);
        let xs = &self.nodes[lo..lo + 4];
        let vs = &self.values[lo..lo + 4];
        let mut out = C64::new(0.0, 0.0);
        for j in 0..4 {
            let mut dl = 0.0;
            for m in 0..4 {
                if m == j {
                    continue;
                }
                let mut p = 1.0;
                for k in 0..4 {
                    if k != j && k != m {
                        p *= (x - xs[k]) / (xs[j] - xs[k]);
                    }
                }
                dl += p / (xs[j] - xs[m]);
            }
            out += vs[j] * dl;
        }
        out
    }
}
