//! Sampled initial data q₀(x) with finite-density boundary values, the
//! derived fields (Φ, q_x, the d-factors) and the hodograph scale
//! y(x) = x + ∫_{−∞}^x (Φ/Φ₀ − 1) ds.

use crate::C64;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("boundary moduli differ: |q+| = {qp}, |q-| = {qm} (tolerance 1e-10)")]
    BoundaryModuli { qp: f64, qm: f64 },
    #[error("profile does not reach its boundary value at the {side} edge: |q - q_bnd| = {gap:e}")]
    EdgeMismatch { side: &'static str, gap: f64 },
    #[error("grid invalid: {0}")]
    BadGrid(&'static str),
    #[error("x = {0} outside the grid span")]
    Range(f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse: {0}")]
    Parse(String),
}

/// JSON sidecar stored next to each profile/frame CSV.
#[derive(Debug, Serialize, Deserialize)]
pub struct ProfileSidecar {
    pub q_plus: [f64; 2],
    pub q_minus: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct InitialProfile {
    x: Vec<f64>,
    q: Vec<C64>,
    pub q_plus: C64,
    pub q_minus: C64,
    pub q0amp: f64,
    pub phi0: f64,
    // derived node arrays
    qx: Vec<C64>,
    phi: Vec<f64>,
    /// I_Φ(x) = ∫_{−∞}^{x} (Φ/Φ₀ − 1) ds, cumulative from the left edge
    int_phi: Vec<f64>,
    /// d₋(x) = ∫_{−∞}^{x} (q q̄_x − q_x q̄)/(4Φ(Φ+1)) ds
    d_minus: Vec<C64>,
    pub d_total: C64,
}

/// 4th-order first derivative on an equispaced grid, one-sided closures.
pub(crate) fn deriv4(values: &[C64], h: f64) -> Vec<C64> {
    let n = values.len();
    let f = values;
    let mut out = vec![C64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        / (12.0 * h);
    out[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
            / (12.0 * h);
    out
}

/// Cumulative integral with Euler-Maclaurin endpoint correction
/// (−h²/12·[f'(x_i) − f'(x_0)]), 4th order for smooth decaying integrands.
fn cumulative4(values: &[C64], h: f64) -> Vec<C64> {
    let n = values.len();
    let fp = deriv4(values, h);
    let mut out = vec![C64::new(0.0, 0.0); n];
    let mut acc = C64::new(0.0, 0.0);
    for i in 1..n {
        acc += (values[i - 1] + values[i]) * (0.5 * h);
        out[i] = acc - (h * h / 12.0) * (fp[i] - fp[0]);
    }
    out
}

impl InitialProfile {
    pub fn new(
        x: Vec<f64>,
        q: Vec<C64>,
        q_plus: C64,
        q_minus: C64,
    ) -> Result<Self, ProfileError> {
        if x.len() != q.len() || x.len() < 16 {
            return Err(ProfileError::BadGrid("need >= 16 matching samples"));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ProfileError::BadGrid("x not strictly increasing"));
        }
        let h = x[1] - x[0];
        if x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
            return Err(ProfileError::BadGrid("grid must be equispaced"));
        }
        let (qp, qm) = (q_plus.norm(), q_minus.norm());
        if (qp - qm).abs() > 1e-10 {
            return Err(ProfileError::BoundaryModuli { qp, qm });
        }
        let gap_l = (q[0] - q_minus).norm();
        if gap_l > 1e-8 {
            return Err(ProfileError::EdgeMismatch { side: "left", gap: gap_l });
        }
        let gap_r = (q[q.len() - 1] - q_plus).norm();
        if gap_r > 1e-8 {
            return Err(ProfileError::EdgeMismatch { side: "right", gap: gap_r });
        }
        let q0amp = qm;
        let phi0 = (1.0 + q0amp * q0amp).sqrt();
        let qx = deriv4(&q, h);
        let phi: Vec<f64> = q.iter().map(|v| (1.0 + v.norm_sqr()).sqrt()).collect();
        let phi_integrand: Vec<C64> = phi
            .iter()
            .map(|&p| C64::new(p / phi0 - 1.0, 0.0))
            .collect();
        let int_phi_c = cumulative4(&phi_integrand, h);
        let int_phi: Vec<f64> = int_phi_c.iter().map(|v| v.re).collect();
        let g: Vec<C64> = q
            .iter()
            .zip(&qx)
            .zip(&phi)
            .map(|((qv, qxv), &p)| (qv * qxv.conj() - qxv * qv.conj()) / (4.0 * p * (p + 1.0)))
            .collect();
        let d_minus = cumulative4(&g, h);
        let d_total = *d_minus.last().unwrap();
        Ok(Self {
            x,
            q,
            q_plus,
            q_minus,
            q0amp,
            phi0,
            qx,
            phi,
            int_phi,
            d_minus,
            d_total,
        })
    }

    pub fn x_nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn q_values(&self) -> &[C64] {
        &self.q
    }

    pub fn qx_values(&self) -> &[C64] {
        &self.qx
    }

    pub fn phi_values(&self) -> &[f64] {
        &self.phi
    }

    pub fn spacing(&self) -> f64 {
        self.x[1] - self.x[0]
    }

    pub fn span(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    fn check_range(&self, x: f64) -> Result<(), ProfileError> {
        let (a, b) = self.span();
        if x < a - 1e-12 || x > b + 1e-12 {
            return Err(ProfileError::Range(x));
        }
        Ok(())
    }

    /// Local-cubic interpolation of a node array at x.
    pub(crate) fn interp_c(&self, arr: &[C64], x: f64) -> C64 {
        let n = self.x.len();
        let h = self.spacing();
        let fi = ((x - self.x[0]) / h).floor() as isize;
        let i = fi.clamp(1, n as isize - 3) as usize;
        let lo = i - 1;
        let xs = &self.x[lo..lo + 4];
        let vs = &arr[lo..lo + 4];
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

    fn interp_f(&self, arr: &[f64], x: f64) -> f64 {
        let carr: Vec<C64> = arr.iter().map(|&v| C64::new(v, 0.0)).collect();
        self.interp_c(&carr, x).re
    }

    pub fn q_at(&self, x: f64) -> C64 {
        self.interp_c(&self.q, x)
    }

    pub fn qx_at(&self, x: f64) -> C64 {
        self.interp_c(&self.qx, x)
    }

    pub fn phi_at(&self, x: f64) -> f64 {
        (1.0 + self.q_at(x).norm_sqr()).sqrt()
    }

    /// y(x) = x + ∫_{−∞}^{x}(Φ/Φ₀ − 1) ds; strictly increasing with
    /// dy/dx = Φ/Φ₀.
    pub fn y_of_x(&self, x: f64) -> Result<f64, ProfileError> {
        self.check_range(x)?;
        Ok(x + self.interp_f(&self.int_phi, x))
    }

    /// Inverse of the hodograph map by bisection + Newton to 1e-12.
    pub fn x_of_y(&self, y: f64) -> Result<f64, ProfileError> {
        let (a, b) = self.span();
        let ya = self.y_of_x(a)?;
        let yb = self.y_of_x(b)?;
        if y < ya - 1e-12 || y > yb + 1e-12 {
            return Err(ProfileError::Range(y));
        }
        let (mut lo, mut hi) = (a, b);
        let mut x = a + (b - a) * (y - ya) / (yb - ya);
        for _ in 0..200 {
            let yx = self.y_of_x(x)?;
            let err = yx - y;
            if err.abs() < 1e-12 {
                return Ok(x);
            }
            if err > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let slope = self.phi_at(x) / self.phi0;
            let mut xn = x - err / slope;
            if !(lo..=hi).contains(&xn) {
                xn = 0.5 * (lo + hi);
            }
            x = xn;
        }
        Ok(x)
    }

    /// d₋, d₊, d = d₋ + d₊ at x. All purely imaginary for finite fields.
    pub fn d_factors(&self, x: f64) -> Result<(C64, C64, C64), ProfileError> {
        self.check_range(x)?;
        let dm = self.interp_c(&self.d_minus, x);
        Ok((dm, self.d_total - dm, self.d_total))
    }

    pub fn d_plus_at(&self, x: f64) -> C64 {
        self.d_total - self.interp_c(&self.d_minus, x)
    }

    /// p(x, t; z) = i(z/2)·y(x) + i z² t / (2Φ₀²).
    pub fn phase_p(&self, x: f64, t: f64, z: C64) -> Result<C64, ProfileError> {
        let y = self.y_of_x(x)?;
        let i = C64::new(0.0, 1.0);
        Ok(i * z * 0.5 * y + i * z * z * t / (2.0 * self.phi0 * self.phi0))
    }

    // ---- file formats -----------------------------------------------------

    /// Write as CSV `x,re_q,im_q` plus a JSON sidecar at `<path>.json`.
    pub fn write_csv(&self, path: &Path, t: Option<f64>) -> Result<(), ProfileError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["x", "re_q", "im_q"])?;
        for (x, q) in self.x.iter().zip(&self.q) {
            w.write_record(&[
                format!("{:.17e}", x),
                format!("{:.17e}", q.re),
                format!("{:.17e}", q.im),
            ])?;
        }
        w.flush()?;
        let sidecar = ProfileSidecar {
            q_plus: [self.q_plus.re, self.q_plus.im],
            q_minus: [self.q_minus.re, self.q_minus.im],
            t,
        };
        let json_path = sidecar_path(path);
        let f = std::fs::File::create(json_path)?;
        serde_json::to_writer_pretty(f, &sidecar)?;
        Ok(())
    }

    /// Read from CSV (`x,re_q,im_q`) with its JSON sidecar.
    pub fn read_csv(path: &Path) -> Result<Self, ProfileError> {
        let sidecar: ProfileSidecar =
            serde_json::from_reader(std::fs::File::open(sidecar_path(path))?)?;
        let (x, q) = read_frame_csv(path)?;
        Self::new(
            x,
            q,
            C64::new(sidecar.q_plus[0], sidecar.q_plus[1]),
            C64::new(sidecar.q_minus[0], sidecar.q_minus[1]),
        )
    }
}

pub(crate) fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut p = path.to_path_buf();
    let ext = match p.extension() {
        Some(e) => format!("{}.json", e.to_string_lossy()),
        None => "json".to_string(),
    };
    p.set_extension(ext);
    p
}

pub(crate) fn read_frame_csv(path: &Path) -> Result<(Vec<f64>, Vec<C64>), ProfileError> {
    let f = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(f);
    let mut x = Vec::new();
    let mut q = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line.trim() != "x,re_q,im_q" {
                return Err(ProfileError::Parse(format!("bad header: {line}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(ProfileError::Parse(format!("bad row: {line}")));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| ProfileError::Parse(format!("{s}: {e}")))
        };
        x.push(parse(parts[0])?);
        q.push(C64::new(parse(parts[1])?, parse(parts[2])?));
    }
    Ok((x, q))
}

pub(crate) fn write_frame_csv(
    path: &Path,
    x: &[f64],
    q: &[C64],
) -> Result<(), ProfileError> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "x,re_q,im_q")?;
    for (xi, qi) in x.iter().zip(q) {
        writeln!(f, "{:.17e},{:.17e},{:.17e}", xi, qi.re, qi.im)?;
    }
    Ok(())
}
