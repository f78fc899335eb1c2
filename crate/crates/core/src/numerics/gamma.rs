//! Complex gamma and digamma via the Lanczos approximation (g = 7, n = 9,
//! GSL coefficient set) with the reflection formula for Re z < 1/2.

use super::NumericsError;
use crate::C64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos_sum(z: C64) -> C64 {
    // argument shifted so the series is evaluated at z-1
    let zm1 = z - 1.0;
    let mut s = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (zm1 + i as f64);
    }
    s
}

fn gamma_core(z: C64) -> C64 {
    // valid for Re z >= 0.5
    let zm1 = z - 1.0;
    let t = zm1 + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(zm1 + 0.5) * (-t).exp() * lanczos_sum(z)
}

fn near_nonpositive_integer(z: C64) -> bool {
    z.re <= 0.5 && z.im.abs() < 1e-12 && (z.re - z.re.round()).abs() < 1e-12 && z.re.round() <= 0.0
}

/// Γ(z) for complex z. Errors within 1e-12 of the poles 0, −1, −2, …
pub fn complex_gamma(z: C64) -> Result<C64, NumericsError> {
    if near_nonpositive_integer(z) {
        return Err(NumericsError::Pole(z));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1−z) = π / sin(πz)
        let s = (PI * z).sin();
        Ok(PI / (s * gamma_core(C64::new(1.0, 0.0) - z)))
    } else {
        Ok(gamma_core(z))
    }
}

/// 1/Γ(z); entire, returns 0 at the poles of Γ.
pub fn recip_gamma(z: C64) -> C64 {
    if near_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    match complex_gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// ψ(z) = Γ'(z)/Γ(z). Recurrence up to |z| ≥ 9, then the Bernoulli series;
/// reflection for Re z < 0.
pub fn digamma(z: C64) -> Result<C64, NumericsError> {
    if near_nonpositive_integer(z) {
        return Err(NumericsError::Pole(z));
    }
    if z.re < 0.0 {
        // ψ(z) = ψ(1−z) − π cot(πz)
        let w = C64::new(1.0, 0.0) - z;
        let cot = (PI * z).cos() / (PI * z).sin();
        return Ok(digamma(w)? - PI * cot);
    }
    let mut acc = C64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 9.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // asymptotic: ln w − 1/(2w) − Σ B_{2n}/(2n w^{2n})
    let w2 = 1.0 / (w * w);
    let series = w2
        * (C64::new(1.0 / 12.0, 0.0)
            + w2 * (C64::new(-1.0 / 120.0, 0.0)
                + w2 * (C64::new(1.0 / 252.0, 0.0)
                    + w2 * (C64::new(-1.0 / 240.0, 0.0)
                        + w2 * (C64::new(1.0 / 132.0, 0.0)
                            + w2 * C64::new(-691.0 / 32760.0, 0.0))))));
    Ok(acc + w.ln() - 0.5 / w - series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_classical_values() {
        assert_abs_diff_eq!(
            complex_gamma(C64::new(1.0, 0.0)).unwrap().re,
            1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            complex_gamma(C64::new(0.5, 0.0)).unwrap().re,
            PI.sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            complex_gamma(C64::new(6.0, 0.0)).unwrap().re,
            120.0,
            epsilon = 1e-11
        );
    }

    // mpmath (30 digits) reference values
    #[test]
    fn gamma_complex_reference() {
        let cases = [
            (C64::new(1.5, 0.5), C64::new(0.79073891412786500537, 0.027425085413882388704)),
            (C64::new(-2.3, 1.7), C64::new(0.014368574832446982672, -0.011193978994831532439)),
            (C64::new(0.25, -3.0), C64::new(0.017050323934244119273, 0.001596877420381335891)),
            (C64::new(5.5, 2.5), C64::new(-15.947989363116272202, -23.906215782205510211)),
        ];
        for (z, want) in cases {
            let got = complex_gamma(z).unwrap();
            assert!(
                (got - want).norm() / want.norm() < 1e-12,
                "gamma({z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn gamma_modulus_on_imaginary_axis() {
        // |Γ(iν)|² = π/(ν sinh(πν)); independent oracle via the reflection route
        let nu = -0.25f64;
        let g = complex_gamma(C64::new(0.0, nu)).unwrap();
        let target = PI / (nu * (PI * nu).sinh());
        assert_abs_diff_eq!(g.norm_sqr(), target, epsilon = 1e-12 * target.abs());
    }

    #[test]
    fn gamma_pole_detection() {
        assert!(complex_gamma(C64::new(0.0, 0.0)).is_err());
        assert!(complex_gamma(C64::new(-3.0, 1e-13)).is_err());
        assert_eq!(recip_gamma(C64::new(-2.0, 0.0)), C64::new(0.0, 0.0));
    }

    #[test]
    fn reflection_identity_random_sample() {
        // Γ(z)Γ(1−z) sin(πz)/π = 1 on a fixed random sample in |z| ≤ 5
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0;
        while checked < 100 {
            let z = C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if near_nonpositive_integer(z) || near_nonpositive_integer(C64::new(1.0, 0.0) - z) {
                continue;
            }
            if z.im.abs() < 1e-3 && (z.re - z.re.round()).abs() < 1e-3 {
                continue; // stay off poles
            }
            let lhs = complex_gamma(z).unwrap()
                * complex_gamma(C64::new(1.0, 0.0) - z).unwrap()
                * (PI * z).sin()
                / PI;
            assert!(
                (lhs - 1.0).norm() < 1e-10,
                "reflection identity off at z = {z}: {lhs}"
            );
            checked += 1;
        }
    }

    #[test]
    fn digamma_against_gamma_derivative() {
        // ψ = Γ'/Γ with Γ' by central differences
        for z in [C64::new(2.3, 1.1), C64::new(0.4, -2.0), C64::new(-1.6, 0.7)] {
            let h = 1e-6;
            let d = (complex_gamma(z + h).unwrap() - complex_gamma(z - h).unwrap()) / (2.0 * h);
            let psi = digamma(z).unwrap();
            let want = d / complex_gamma(z).unwrap();
            assert!((psi - want).norm() < 1e-8, "digamma({z}): {psi} vs {want}");
        }
    }
}
