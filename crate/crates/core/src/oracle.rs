//! Direct numerical simulation of i q_t + (q/Φ)_xx = 0 by method of lines:
//! 4th-order central second differences in x, classical RK4 in t, boundary
//! nodes clamped to the constant background. This is the ground-truth
//! engine the analytic constructions are tested against.

use crate::profile::{read_frame_csv, sidecar_path, write_frame_csv, ProfileSidecar};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("field blew up at t = {t}: max|q| = {max:e}")]
    BlowUp { t: f64, max: f64 },
    #[error("dt = {dt:e} violates the stability bound {bound:e} (safety·Δx²·Φ₀)")]
    StabilityViolation { dt: f64, bound: f64 },
    #[error("config invalid: {0}")]
    BadConfig(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("profile: {0}")]
    Profile(#[from] crate::profile::ProfileError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub dt: f64,
    pub t_end: f64,
    /// frames are emitted every `stride` steps (plus the final step)
    pub stride: usize,
    /// high-wavenumber smoothing strength in [0, 1]; 0 disables it
    pub filter_strength: f64,
    /// stability safety factor in dt ≤ safety · Δx² · Φ₀
    pub safety: f64,
}

impl SimConfig {
    pub fn validate(&self, phi0: f64) -> Result<(), OracleError> {
        if self.n_x < 64 {
            return Err(OracleError::BadConfig("n_x must be at least 64".into()));
        }
        if !(0.0..=1.0).contains(&self.filter_strength) {
            return Err(OracleError::BadConfig("filter_strength outside [0,1]".into()));
        }
        let dx = (self.x_max - self.x_min) / (self.n_x - 1) as f64;
        let bound = self.safety * dx * dx * phi0;
        if self.dt > bound {
            return Err(OracleError::StabilityViolation { dt: self.dt, bound });
        }
        Ok(())
    }

    /// Stable dt for the grid, rounded so t_end is an integer number of steps.
    pub fn stable_dt(x_min: f64, x_max: f64, n_x: usize, t_end: f64, safety: f64) -> f64 {
        let dx = (x_max - x_min) / (n_x - 1) as f64;
        let raw = safety * dx * dx;
        let steps = (t_end / raw).ceil().max(1.0);
        t_end / steps
    }
}

/// One snapshot of the field.
#[derive(Clone, Debug)]
pub struct FieldFrame {
    pub t: f64,
    pub x: Vec<f64>,
    pub q: Vec<C64>,
}

impl FieldFrame {
    pub fn write_csv(&self, path: &Path, q_plus: C64, q_minus: C64) -> Result<(), OracleError> {
        write_frame_csv(path, &self.x, &self.q)?;
        let sidecar = ProfileSidecar {
            q_plus: [q_plus.re, q_plus.im],
            q_minus: [q_minus.re, q_minus.im],
            t: Some(self.t),
        };
        let f = std::fs::File::create(sidecar_path(path))?;
        serde_json::to_writer_pretty(f, &sidecar)?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<(Self, ProfileSidecar), OracleError> {
        let sidecar: ProfileSidecar =
            serde_json::from_reader(std::fs::File::open(sidecar_path(path))?)?;
        let (x, q) = read_frame_csv(path)?;
        Ok((
            FieldFrame { t: sidecar.t.unwrap_or(0.0), x, q },
            sidecar,
        ))
    }
}

/// 4th-order second derivative; 2nd-order one-sided stencils at the edges.
fn second_derivative(f: &[C64], h: f64, out: &mut [C64]) {
    let n = f.len();
    let h2 = h * h;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    out[1] = (f[0] - 2.0 * f[1] + f[2]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    out[n - 2] = (f[n - 3] - 2.0 * f[n - 2] + f[n - 1]) / h2;
    let c = 1.0 / (12.0 * h2);
    out[2..n - 2]
        .par_iter_mut()
        .enumerate()
        .for_each(|(k, o)| {
            let i = k + 2;
            *o = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * c;
        });
}

/// dq/dt = i·D₂[ q/Φ ], with the two nodes at each boundary pinned.
pub fn rhs(q: &[C64], h: f64, out: &mut [C64], scratch: &mut Vec<C64>) {
    let n = q.len();
    scratch.clear();
    scratch.extend(q.iter().map(|v| v / (1.0 + v.norm_sqr()).sqrt()));
    second_derivative(scratch, h, out);
    let i = C64::new(0.0, 1.0);
    for o in out.iter_mut() {
        *o *= i;
    }
    out[0] = C64::new(0.0, 0.0);
    out[1] = C64::new(0.0, 0.0);
    out[n - 1] = C64::new(0.0, 0.0);
    out[n - 2] = C64::new(0.0, 0.0);
}

/// Mild high-wavenumber dissipation: q ← q − s·(Δ⁴-type 8th difference)/256.
/// Off at strength 0 (the default); exposed for long runs.
fn smooth_filter(q: &mut [C64], strength: f64) {
    if strength == 0.0 {
        return;
    }
    let n = q.len();
    let orig = q.to_vec();
    let c = strength / 256.0;
    for i in 4..n - 4 {
        let d8 = orig[i - 4] - 8.0 * orig[i - 3] + 28.0 * orig[i - 2] - 56.0 * orig[i - 1]
            + 70.0 * orig[i]
            - 56.0 * orig[i + 1]
            + 28.0 * orig[i + 2]
            - 8.0 * orig[i + 3]
            + orig[i + 4];
        q[i] = orig[i] - c * d8;
    }
}

/// Integrate the field forward, emitting frames every `stride` steps.
/// Aborts with BlowUp if max|q| exceeds 1e6.
pub fn simulate(config: &SimConfig, initial: &FieldFrame) -> Result<Vec<FieldFrame>, OracleError> {
    let n = initial.q.len();
    if n != config.n_x {
        return Err(OracleError::BadConfig(format!(
            "initial frame has {n} samples, config expects {}",
            config.n_x
        )));
    }
    let phi0 = (1.0 + initial.q[0].norm_sqr()).sqrt();
    config.validate(phi0)?;
    let h = (config.x_max - config.x_min) / (n - 1) as f64;
    let steps = (config.t_end / config.dt).round() as usize;
    let mut q = initial.q.clone();
    let mut frames = vec![FieldFrame { t: initial.t, x: initial.x.clone(), q: q.clone() }];
    let mut k1 = vec![C64::new(0.0, 0.0); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    let mut scratch = Vec::with_capacity(n);
    let dt = config.dt;
    for step in 1..=steps {
        rhs(&q, h, &mut k1, &mut scratch);
        for i in 0..n {
            tmp[i] = q[i] + 0.5 * dt * k1[i];
        }
        rhs(&tmp, h, &mut k2, &mut scratch);
        for i in 0..n {
            tmp[i] = q[i] + 0.5 * dt * k2[i];
        }
        rhs(&tmp, h, &mut k3, &mut scratch);
        for i in 0..n {
            tmp[i] = q[i] + dt * k3[i];
        }
        rhs(&tmp, h, &mut k4, &mut scratch);
        for i in 0..n {
            q[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        smooth_filter(&mut q, config.filter_strength);
        if step % 64 == 0 || step == steps {
            let max = q.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if max > 1e6 {
                return Err(OracleError::BlowUp { t: initial.t + step as f64 * dt, max });
            }
        }
        if step % config.stride == 0 || step == steps {
            frames.push(FieldFrame {
                t: initial.t + step as f64 * dt,
                x: initial.x.clone(),
                q: q.clone(),
            });
        }
    }
    Ok(frames)
}

/// Sup-norm of the discrete WKI residual |i q_t + (q/Φ)_xx| for a candidate
/// (x, t) ↦ q, evaluated on `frame.x` at `frame.t` using 4th-order x-stencils
/// and a central t-difference of the candidate with step `dt`.
pub fn residual_of<F>(candidate: F, x: &[f64], t: f64, dt: f64, margin: usize) -> f64
where
    F: Fn(f64, f64) -> C64 + Sync,
{
    let n = x.len();
    let h = x[1] - x[0];
    let q0: Vec<C64> = x.par_iter().map(|&xi| candidate(xi, t)).collect();
    let qp: Vec<C64> = x.par_iter().map(|&xi| candidate(xi, t + dt)).collect();
    let qm: Vec<C64> = x.par_iter().map(|&xi| candidate(xi, t - dt)).collect();
    let flux: Vec<C64> = q0
        .iter()
        .map(|v| v / (1.0 + v.norm_sqr()).sqrt())
        .collect();
    let mut d2 = vec![C64::new(0.0, 0.0); n];
    second_derivative(&flux, h, &mut d2);
    let i = C64::new(0.0, 1.0);
    let lo = margin.max(2);
    let hi = n - margin.max(2);
    (lo..hi)
        .map(|k| (i * (qp[k] - qm[k]) / (2.0 * dt) + d2[k]).norm())
        .fold(0.0, f64::max)
}

/// (c_total, flux_balance): c = ∫(Φ/Φ₀ − 1)dx by trapezoid, and the residual
/// of its discrete conservation law between two frames,
/// |Δc/Δt − [ (q q̄_x − q_x q̄)/(2iΦ²Φ₀) ]_edges|.
pub fn conserved(frame: &FieldFrame, next: Option<&FieldFrame>) -> (f64, f64) {
    let h = frame.x[1] - frame.x[0];
    let phi0 = (1.0 + frame.q[0].norm_sqr()).sqrt();
    let c_of = |q: &[C64]| -> f64 {
        let vals: Vec<f64> = q
            .iter()
            .map(|v| (1.0 + v.norm_sqr()).sqrt() / phi0 - 1.0)
            .collect();
        let mut acc = 0.0;
        for w in vals.windows(2) {
            acc += 0.5 * (w[0] + w[1]) * h;
        }
        acc
    };
    let c_total = c_of(&frame.q);
    let flux_balance = match next {
        None => 0.0,
        Some(nf) => {
            let dt = nf.t - frame.t;
            let dc = (c_of(&nf.q) - c_total) / dt;
            let flux_at = |q: &[C64], qx: &[C64], i: usize| {
                let phi2 = 1.0 + q[i].norm_sqr();
                (q[i] * qx[i].conj() - qx[i] * q[i].conj()) / (2.0 * phi2)
            };
            let qx = crate::profile::deriv4(&frame.q, h);
            let n = frame.q.len();
            let net = (flux_at(&frame.q, &qx, n - 3) - flux_at(&frame.q, &qx, 2))
                / (C64::new(0.0, 1.0) * phi0);
            (dc - net.re).abs()
        }
    };
    (c_total, flux_balance)
}

/// Pointwise residual of the local conservation law
/// iΦ_t − ((q q̄_x − q_x q̄)/(2Φ²))_x between two close frames.
pub fn local_law_residual(a: &FieldFrame, b: &FieldFrame, margin: usize) -> f64 {
    let h = a.x[1] - a.x[0];
    let dt = b.t - a.t;
    let n = a.q.len();
    let dens: Vec<C64> = a
        .q
        .iter()
        .zip(crate::profile::deriv4(&a.q, h).iter())
        .map(|(q, qx)| (q * qx.conj() - qx * q.conj()) / (2.0 * (1.0 + q.norm_sqr())))
        .collect();
    let flux_x = crate::profile::deriv4(&dens, h);
    let mut worst = 0.0f64;
    for i in margin..n - margin {
        let phit = ((1.0 + b.q[i].norm_sqr()).sqrt() - (1.0 + a.q[i].norm_sqr()).sqrt()) / dt;
        let r = (C64::new(0.0, phit) - flux_x[i]).norm();
        worst = worst.max(r);
    }
    worst
}

/// Frame-sequence index written next to a directory of frame CSVs.
#[derive(Debug, Serialize, Deserialize)]
pub struct FrameIndex {
    pub times: Vec<f64>,
    pub files: Vec<String>,
    pub config: SimConfig,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn const_frame(n: usize, qb: C64) -> (SimConfig, FieldFrame) {
        let (x_min, x_max) = (-10.0, 10.0);
        let x: Vec<f64> = (0..n)
            .map(|i| x_min + (x_max - x_min) * i as f64 / (n - 1) as f64)
            .collect();
        let phi0 = (1.0 + qb.norm_sqr()).sqrt();
        let dx = (x_max - x_min) / (n - 1) as f64;
        let cfg = SimConfig {
            x_min,
            x_max,
            n_x: n,
            dt: 0.19 * dx * dx * phi0,
            t_end: 0.5,
            stride: 100,
            filter_strength: 0.0,
            safety: 0.2,
        };
        (cfg, FieldFrame { t: 0.0, x, q: vec![qb; n] })
    }

    #[test]
    fn constant_background_is_stationary() {
        let (cfg, f0) = const_frame(256, C64::new(0.7, 0.2));
        let frames = simulate(&cfg, &f0).unwrap();
        let last = frames.last().unwrap();
        let drift: f64 = last
            .q
            .iter()
            .zip(&f0.q)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(drift < 1e-12, "drift {drift}");
    }

    #[test]
    fn d2_exact_on_quartic() {
        // D₂ x⁴ = 12x² exactly away from edge stencils
        let n = 101;
        let h = 0.1;
        let f: Vec<C64> = (0..n)
            .map(|i| C64::new(((i as f64) * h - 5.0).powi(4), 0.0))
            .collect();
        let mut out = vec![C64::new(0.0, 0.0); n];
        second_derivative(&f, h, &mut out);
        for i in 2..n - 2 {
            let x = (i as f64) * h - 5.0;
            assert!((out[i].re - 12.0 * x * x).abs() < 1e-9 * (1.0 + x * x));
        }
    }

    #[test]
    fn linearized_dispersion_on_background() {
        // relation: ω = κ²/Φ₀² for q = q_b + ε(A e^{iφ} + B e^{-iφ̄})
        // verified by evolving a small plane-wave pair and fitting the phase
        let q0 = 1.0f64;
        let phi0: f64 = (1.0 + q0 * q0).sqrt();
        let kappa = 1.2566370614359172; // 2π·4/L with L = 20: periodic over the box
        let eps = 1e-6;
        let n = 512;
        let (mut cfg, mut f0) = const_frame(n, C64::new(q0, 0.0));
        cfg.t_end = 0.25;
        cfg.dt = SimConfig::stable_dt(cfg.x_min, cfg.x_max, n, cfg.t_end, 0.18);
        cfg.stride = usize::MAX;
        let omega = kappa * kappa / (phi0 * phi0);
        // eigenvector of the linearized operator for the + branch:
        // (ω − aκ²)P + bκ²conj(Q) = 0 with a=(Φ₀²+1)/(2Φ₀³), b=q₀²/(2Φ₀³)
        let a = (phi0 * phi0 + 1.0) / (2.0 * phi0.powi(3));
        let b = q0 * q0 / (2.0 * phi0.powi(3));
        let p = 1.0f64;
        let qq = (a * kappa * kappa - omega) / (b * kappa * kappa) * p;
        // windowed so the clamped edges stay at the background
        for (i, x) in f0.x.iter().enumerate() {
            let window = (-(x / 6.0).powi(8)).exp();
            let w = p * C64::new(0.0, kappa * x).exp() + qq * C64::new(0.0, -kappa * x).exp();
            f0.q[i] += eps * window * w;
        }
        let frames = simulate(&cfg, &f0).unwrap();
        let last = frames.last().unwrap();
        // compare against the analytically propagated perturbation
        let t = last.t;
        let mut worst = 0.0f64;
        for (i, x) in last.x.iter().enumerate() {
            if x.abs() > 3.0 {
                continue;
            }
            let window = (-(x / 6.0).powi(8)).exp();
            let w = p * C64::new(0.0, kappa * x - omega * t).exp()
                + qq * C64::new(0.0, -(kappa * x - omega * t)).exp();
            let want = C64::new(q0, 0.0) + eps * window * w;
            worst = worst.max((last.q[i] - want).norm());
        }
        // O(ε²) nonlinear + dispersive window corrections; ε=1e-6 leaves slack
        assert!(worst < 1e-8 * 5.0, "dispersion mismatch {worst:e}");
    }

    #[test]
    fn reversibility_short_horizon() {
        let q0 = 0.5;
        let n = 512;
        let (mut cfg, mut f0) = const_frame(n, C64::new(q0, 0.0));
        for (i, x) in f0.x.iter().enumerate() {
            f0.q[i] += 0.2 * (-(x * x)).exp() * C64::new(0.0, 0.6 * x).exp()
                * (-(x / 6.0).powi(8)).exp();
        }
        cfg.t_end = 0.2;
        cfg.dt = SimConfig::stable_dt(cfg.x_min, cfg.x_max, n, cfg.t_end, 0.15);
        cfg.stride = usize::MAX;
        let fwd = simulate(&cfg, &f0).unwrap();
        // backward via the symmetry q(x,t) -> conj(q)(x, -t)
        let mut back0 = fwd.last().unwrap().clone();
        back0.t = 0.0;
        for v in back0.q.iter_mut() {
            *v = v.conj();
        }
        let back = simulate(&cfg, &back0).unwrap();
        let mut worst = 0.0f64;
        for (a, b) in back.last().unwrap().q.iter().zip(&f0.q) {
            worst = worst.max((a.conj() - b).norm());
        }
        assert!(worst < 1e-6, "reversibility error {worst}");
    }

    #[test]
    fn conservation_of_c_total() {
        let q0 = 0.5;
        let n = 1024;
        let (mut cfg, mut f0) = const_frame(n, C64::new(q0, 0.0));
        for (i, x) in f0.x.iter().enumerate() {
            f0.q[i] += 0.15 * (-(x * x) / 2.0).exp() * C64::new(0.0, 1.2 * x).exp()
                * (-(x / 7.0).powi(8)).exp();
        }
        cfg.t_end = 1.0;
        cfg.dt = SimConfig::stable_dt(cfg.x_min, cfg.x_max, n, cfg.t_end, 0.15);
        cfg.stride = 200;
        let frames = simulate(&cfg, &f0).unwrap();
        let (c0, _) = conserved(&frames[0], None);
        for f in &frames[1..] {
            let (c, _) = conserved(f, None);
            assert!(
                (c - c0).abs() / c0.abs().max(1.0) < 1e-6,
                "c drifted from {c0} to {c}"
            );
        }
    }

    #[test]
    fn stability_guard_rejects_big_dt() {
        let (mut cfg, f0) = const_frame(128, C64::new(0.5, 0.0));
        cfg.dt = 1.0;
        assert!(matches!(
            simulate(&cfg, &f0),
            Err(OracleError::StabilityViolation { .. })
        ));
    }
}
