//! Momentum profiles sampled on a logarithmic grid in `t`.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::shooting::{burns_simanca_with, ShootingOptions, ShootingReport};
use super::{scalar_curvature_from_jet, MomentumJet};
use crate::error::RadialError;

/// `ψ = tF′` with its `τ`-derivatives at grid nodes `t_i` (uniform in `τ = log t`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumProfile {
    pub m: usize,
    pub t: Vec<f64>,
    pub psi: Vec<f64>,
    pub psi_tau: Vec<f64>,
    pub psi_tau2: Vec<f64>,
    pub psi_tau3: Vec<f64>,
    /// `ψ − t/2`, stored separately to keep its accuracy at large `t`.
    pub offset: Vec<f64>,
    /// Scalar curvature at each node.
    pub s: Vec<f64>,
    /// Limit `ψ(0+)`; positive for a blow-up, `0` for a smooth origin.
    pub psi_zero: f64,
    pub shooting: Option<ShootingReport>,
}

/// Log-spaced grid in `t` over `[t_min, t_max]` and its step in `τ`.
pub fn log_grid(t_min: f64, t_max: f64, points: usize) -> (Vec<f64>, f64) {
    let (a, b) = (t_min.ln(), t_max.ln());
    let h = (b - a) / (points - 1) as f64;
    let mut t: Vec<f64> = (0..points).map(|i| (a + h * i as f64).exp()).collect();
    t[0] = t_min;
    t[points - 1] = t_max;
    (t, h)
}

/// Derivative of samples on a uniform grid, fourth order everywhere
/// (centred inside, one-sided five-point stencils at the two ends on each side).
pub fn derivative_4th_order(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "need at least five samples");
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5])
        / (12.0 * h);
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    d
}

impl MomentumProfile {
    /// Builds a profile from values of `F` on a log grid, differentiating in `τ`
    /// (`ψ = F_τ`, `ψ_τ = F_ττ`, …). Checks positivity at every node.
    pub fn from_potential_values(
        m: usize,
        t_min: f64,
        t_max: f64,
        points: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, RadialError> {
        if !(t_min > 0.0 && t_max > t_min) {
            return Err(RadialError::GridBound(t_max));
        }
        let (t, h) = log_grid(t_min, t_max, points);
        let values: Vec<f64> = t.iter().map(|&x| f(x)).collect();
        let psi = derivative_4th_order(&values, h);
        let psi_tau = derivative_4th_order(&psi, h);
        let psi_tau2 = derivative_4th_order(&psi_tau, h);
        let psi_tau3 = derivative_4th_order(&psi_tau2, h);
        let offset = t.iter().zip(&psi).map(|(x, p)| p - x / 2.0).collect();
        let psi_zero = psi[0] - psi_tau[0];
        Self::assemble(m, t, psi, psi_tau, psi_tau2, psi_tau3, offset, psi_zero, None)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        m: usize,
        t: Vec<f64>,
        psi: Vec<f64>,
        psi_tau: Vec<f64>,
        psi_tau2: Vec<f64>,
        psi_tau3: Vec<f64>,
        offset: Vec<f64>,
        psi_zero: f64,
        shooting: Option<ShootingReport>,
    ) -> Result<Self, RadialError> {
        let mut s = Vec::with_capacity(t.len());
        for i in 0..t.len() {
            let j = MomentumJet {
                psi: psi[i],
                psi_tau: psi_tau[i],
                psi_tau2: psi_tau2[i],
                psi_tau3: psi_tau3[i],
            };
            if !j.is_positive() {
                return Err(RadialError::NotKahlerAtT {
                    t: t[i],
                    psi: j.psi,
                    psi_tau: j.psi_tau,
                });
            }
            s.push(scalar_curvature_from_jet(&j, m));
        }
        Ok(MomentumProfile {
            m,
            t,
            psi,
            psi_tau,
            psi_tau2,
            psi_tau3,
            offset,
            s,
            psi_zero,
            shooting,
        })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// `F′ = ψ/t` at the nodes.
    pub fn f_prime(&self) -> Vec<f64> {
        self.psi.iter().zip(&self.t).map(|(p, t)| p / t).collect()
    }

    /// `F″ = (ψ_τ − ψ)/t²` at the nodes.
    pub fn f_second(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| (self.psi_tau[i] - self.psi[i]) / (self.t[i] * self.t[i]))
            .collect()
    }

    pub fn max_abs_curvature(&self) -> f64 {
        self.s.iter().fold(0.0, |a, b| a.max(b.abs()))
    }

    /// Jet at `t`, linear in `τ` between nodes.
    pub fn jet_at(&self, t: f64) -> Result<MomentumJet<f64>, RadialError> {
        let n = self.len();
        if n == 0 || !(t >= self.t[0] && t <= self.t[n - 1]) {
            return Err(RadialError::OutsideGrid(t));
        }
        let k = self.t.partition_point(|&x| x < t);
        let pick = |i: usize| MomentumJet {
            psi: self.psi[i],
            psi_tau: self.psi_tau[i],
            psi_tau2: self.psi_tau2[i],
            psi_tau3: self.psi_tau3[i],
        };
        if self.t[k] == t {
            return Ok(pick(k));
        }
        let (lo, hi) = (pick(k - 1), pick(k));
        let w = (t.ln() - self.t[k - 1].ln()) / (self.t[k].ln() - self.t[k - 1].ln());
        let mix = |a: f64, b: f64| a + w * (b - a);
        Ok(MomentumJet {
            psi: mix(lo.psi, hi.psi),
            psi_tau: mix(lo.psi_tau, hi.psi_tau),
            psi_tau2: mix(lo.psi_tau2, hi.psi_tau2),
            psi_tau3: mix(lo.psi_tau3, hi.psi_tau3),
        })
    }

    /// Least-squares slope of `log|ψ − t/2|` against `log t` over `[lo, hi]`.
    pub fn decay_exponent(&self, lo: f64, hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .t
            .iter()
            .zip(&self.offset)
            .filter(|(t, u)| **t >= lo && **t <= hi && u.abs() > 0.0)
            .map(|(t, u)| (t.ln(), u.abs().ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }
}

/// Writes `t,psi,f_prime,s` rows.
pub fn write_csv<W: Write>(p: &MomentumProfile, mut w: W) -> Result<(), RadialError> {
    let io = |e: std::io::Error| RadialError::Io(e.to_string());
    writeln!(w, "t,psi,f_prime,s").map_err(io)?;
    for (i, fp) in p.f_prime().iter().enumerate() {
        writeln!(w, "{},{},{},{}", p.t[i], p.psi[i], fp, p.s[i]).map_err(io)?;
    }
    Ok(())
}

/// Directory of solved profiles, one JSON file per `(m, T, tolerance)`.
#[derive(Debug, Clone)]
pub struct ProfileCache {
    dir: PathBuf,
}

impl ProfileCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        ProfileCache {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    pub fn path_for(&self, m: usize, opts: &ShootingOptions) -> PathBuf {
        self.dir
            .join(format!("bs-m{}-T{:e}-tol{:e}.json", m, opts.t_max, opts.rtol))
    }

    pub fn load_or_compute(&self, m: usize, opts: &ShootingOptions) -> Result<MomentumProfile, RadialError> {
        let io = |e: std::io::Error| RadialError::Io(e.to_string());
        let path = self.path_for(m, opts);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(p) = serde_json::from_str::<MomentumProfile>(&text) {
                return Ok(p);
            }
        }
        let p = burns_simanca_with(m, opts)?;
        std::fs::create_dir_all(&self.dir).map_err(io)?;
        let text = serde_json::to_string(&p).map_err(|e| RadialError::Io(e.to_string()))?;
        std::fs::write(&path, text).map_err(io)?;
        Ok(p)
    }
}
