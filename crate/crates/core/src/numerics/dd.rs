//! Double-double (~31 significant digits) arithmetic, real and complex.
//!
//! The Kummer series on purely-oscillatory arguments cancels catastrophically:
//! terms grow to e^{|z|} while the sum stays O(1). Summing in double-double
//! keeps the effective precision at ~1e-32 · e^{|z|}, which is what lets the
//! Weber evaluation hand over to the asymptotic series at |z| ≈ 9.

#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> f64 {
        (self.hi + self.lo).abs()
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub fn add(a: Dd, b: Dd) -> Dd {
    let (s1, s2) = two_sum(a.hi, b.hi);
    let s2 = s2 + a.lo + b.lo;
    let (hi, lo) = quick_two_sum(s1, s2);
    Dd { hi, lo }
}

pub fn mul(a: Dd, b: Dd) -> Dd {
    let (p1, p2) = two_prod(a.hi, b.hi);
    let p2 = p2 + a.hi * b.lo + a.lo * b.hi;
    let (hi, lo) = quick_two_sum(p1, p2);
    Dd { hi, lo }
}

pub fn div(a: Dd, b: Dd) -> Dd {
    // one Newton step on the f64 quotient
    let q1 = a.hi / b.hi;
    let r = add(a, neg(mul(Dd::from_f64(q1), b)));
    let q2 = r.hi / b.hi;
    let r2 = add(r, neg(mul(Dd::from_f64(q2), b)));
    let q3 = r2.hi / b.hi;
    let (hi, lo) = quick_two_sum(q1, q2);
    add(Dd { hi, lo }, Dd::from_f64(q3))
}

pub fn neg(a: Dd) -> Dd {
    Dd { hi: -a.hi, lo: -a.lo }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };

    pub fn from_c64(z: num_complex::Complex64) -> Cdd {
        Cdd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_f64(self) -> f64 {
        self.to_c64().norm()
    }
}

pub fn cadd(a: Cdd, b: Cdd) -> Cdd {
    Cdd { re: add(a.re, b.re), im: add(a.im, b.im) }
}

pub fn cmul(a: Cdd, b: Cdd) -> Cdd {
    Cdd {
        re: add(mul(a.re, b.re), neg(mul(a.im, b.im))),
        im: add(mul(a.re, b.im), mul(a.im, b.re)),
    }
}

pub fn cdiv(a: Cdd, b: Cdd) -> Cdd {
    // a * conj(b) / |b|^2
    let conj = Cdd { re: b.re, im: neg(b.im) };
    let num = cmul(a, conj);
    let den = add(mul(b.re, b.re), mul(b.im, b.im));
    Cdd { re: div(num.re, den), im: div(num.im, den) }
}
