//! Forward-mode dual numbers over ℂ. Carrying (value, ∂/∂y) pairs through
//! the residue engine and the deformation scalars gives the closed-form
//! y-derivatives the reconstruction formulas need, without finite
//! differencing.

use crate::C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: C64,
    pub d: C64,
}

impl Dual {
    pub const ZERO: Dual = Dual {
        v: C64::new(0.0, 0.0),
        d: C64::new(0.0, 0.0),
    };

    pub fn constant(v: C64) -> Dual {
        Dual { v, d: C64::new(0.0, 0.0) }
    }

    pub fn real(x: f64) -> Dual {
        Dual::constant(C64::new(x, 0.0))
    }

    /// The independent variable: value y, derivative 1.
    pub fn variable(v: C64) -> Dual {
        Dual { v, d: C64::new(1.0, 0.0) }
    }

    pub fn exp(self) -> Dual {
        let e = self.v.exp();
        Dual { v: e, d: e * self.d }
    }

    pub fn ln(self) -> Dual {
        Dual { v: self.v.ln(), d: self.d / self.v }
    }

    pub fn conj(self) -> Dual {
        // valid when the underlying dependence on the (real) parameter is
        // anti-holomorphic in the usual paired sense: d/dy conj(f) = conj(df/dy)
        Dual { v: self.v.conj(), d: self.d.conj() }
    }

    pub fn inv(self) -> Dual {
        Dual { v: 1.0 / self.v, d: -self.d / (self.v * self.v) }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual {
            v: self.v / o.v,
            d: (self.d * o.v - self.v * o.d) / (o.v * o.v),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

/// 2×2 matrix of duals.
pub type DMat2 = [[Dual; 2]; 2];

pub fn dmat_identity() -> DMat2 {
    [
        [Dual::real(1.0), Dual::ZERO],
        [Dual::ZERO, Dual::real(1.0)],
    ]
}

pub fn dmat_mul(a: &DMat2, b: &DMat2) -> DMat2 {
    let mut out = [[Dual::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dmat_inv(a: &DMat2) -> DMat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [
        [a[1][1] / det, -(a[0][1] / det)],
        [-(a[1][0] / det), a[0][0] / det],
    ]
}
