//! Kummer's confluent hypergeometric M(a, b, z) by direct series summation
//! in double-double arithmetic.

use super::dd::{cadd, cdiv, cmul, Cdd};
use super::NumericsError;
use crate::C64;

const MAX_TERMS: usize = 600;
const TOL: f64 = 1e-24;

/// M(a, b, z) = Σ (a)_n / (b)_n · zⁿ/n!.
///
/// The series is summed in double-double so that the cancellation on
/// oscillatory arguments (terms up to e^{|z|} against an O(1) sum) still
/// leaves ~16 significant digits for |z| ≲ 30.
pub fn kummer_m(a: C64, b: C64, z: C64) -> Result<C64, NumericsError> {
    if b.im.abs() < 1e-12 && (b.re - b.re.round()).abs() < 1e-12 && b.re.round() <= 0.0 {
        return Err(NumericsError::Pole(b));
    }
    let za = Cdd::from_c64(a);
    let zb = Cdd::from_c64(b);
    let zz = Cdd::from_c64(z);
    let mut term = Cdd::from_c64(C64::new(1.0, 0.0));
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // t_{n+1} = t_n (a+n) z / ((b+n)(n+1))
        let num = cmul(cmul(term, cadd(za, Cdd::from_c64(C64::new(nf, 0.0)))), zz);
        let den = cmul(
            cadd(zb, Cdd::from_c64(C64::new(nf, 0.0))),
            Cdd::from_c64(C64::new(nf + 1.0, 0.0)),
        );
        term = cdiv(num, den);
        sum = cadd(sum, term);
        if term.norm_f64() < TOL * sum.norm_f64().max(1.0) && n as f64 > z.norm() {
            return Ok(sum.to_c64());
        }
    }
    Err(NumericsError::Convergence {
        terms: MAX_TERMS,
        tol: TOL,
        last: term.norm_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_term() {
        let m = kummer_m(C64::new(0.3, -1.1), C64::new(0.7, 0.2), C64::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!((m - 1.0).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn exponential_identity() {
        // M(1, 1, z) = e^z
        let z = C64::new(1.0, 1.0);
        let m = kummer_m(C64::new(1.0, 0.0), C64::new(1.0, 0.0), z).unwrap();
        assert!((m - z.exp()).norm() < 1e-14);
    }

    // mpmath (30 digits) reference values
    #[test]
    fn high_precision_series_oracle() {
        let cases = [
            (
                C64::new(-0.3, 0.2),
                C64::new(0.5, 0.0),
                C64::new(2.0, -1.0),
                C64::new(0.075548054372193497297, 2.9054882346887403713),
            ),
            (
                C64::new(0.1, -0.7),
                C64::new(1.3, 0.4),
                C64::new(-8.0, 5.0),
                C64::new(-0.071298512481371516517, 1.8282399041530156927),
            ),
            // purely-oscillatory argument: the double-double summation case
            (
                C64::new(0.05, 0.0),
                C64::new(0.5, 0.0),
                C64::new(0.0, 21.0),
                C64::new(0.7743004363332025635, 0.084539007545364638084),
            ),
        ];
        for (a, b, z, want) in cases {
            let got = kummer_m(a, b, z).unwrap();
            assert!(
                (got - want).norm() / want.norm() < 1e-10,
                "M({a},{b},{z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn contiguous_relation() {
        // (b−a)M(a−1,b,z) + (2a−b+z)M(a,b,z) − a·M(a+1,b,z) = 0
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let a = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let b = C64::new(rng.gen_range(0.3..2.0), rng.gen_range(-0.5..0.5));
            let z = C64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            let m0 = kummer_m(a - 1.0, b, z).unwrap();
            let m1 = kummer_m(a, b, z).unwrap();
            let m2 = kummer_m(a + 1.0, b, z).unwrap();
            let lhs = (b - a) * m0 + (2.0 * a - b + z) * m1 - a * m2;
            let scale = m0.norm().max(m1.norm()).max(m2.norm());
            assert!(
                lhs.norm() < 1e-8 * scale.max(1.0),
                "contiguous relation off at a={a} b={b} z={z}: {lhs}"
            );
        }
    }

    #[test]
    fn pole_in_b_rejected() {
        assert!(kummer_m(C64::new(0.2, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0)).is_err());
    }
}
