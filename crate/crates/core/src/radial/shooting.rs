//! The scalar-flat metric on the blow-up of `ℂ^m` at the origin.
//!
//! For `m ≥ 3` the profile is found by shooting inward from `t = T` with the
//! asymptotics `ψ = t/2 + (m−2)t^{2−m} + β t^{1−m}`, bisecting on `β` until
//! the solution closes up smoothly on the exceptional divisor
//! (`ψ_ττ/ψ_τ → 1` as `t → 0`).

use serde::{Deserialize, Serialize};

use super::ode::{dopri5, Control, Tolerance};
use super::profile::{derivative_4th_order, log_grid, MomentumProfile};
use super::ClosedForm;
use crate::error::RadialError;

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingOptions {
    pub t_max: f64,
    pub t_min: f64,
    pub points: usize,
    pub rtol: f64,
    /// Bound on `max |s|` over the grid.
    pub tolerance: f64,
    /// Bound on the extrapolated slope defect at the divisor.
    pub slope_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions {
            t_max: 1e4,
            t_min: 1e-4,
            points: 10_000,
            rtol: 1e-10,
            tolerance: 1e-6,
            slope_tolerance: 1e-5,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootingReport {
    /// Coefficient of `t^{1−m}` in the initial data.
    pub beta: f64,
    pub iterations: usize,
    /// `lim ψ_ττ/ψ_τ − 1`, extrapolated from `t_min`.
    pub slope_residual: f64,
    /// Start of the residual window: the last node with `ψ ≤ 1.01·ψ(0+)`.
    pub t_check: f64,
    /// `max |s|` over `[t_check, T]`.
    pub max_abs_curvature: f64,
}

/// Scalar-flat equation solved for `u_τττ`, `u = ψ − t/2`, written so that no
/// two large terms cancel.
fn rhs(m: usize, tau: f64, y: &[f64; 3]) -> [f64; 3] {
    let [u, u1, u2] = *y;
    let m1 = (m - 1) as f64;
    let h = 0.5 * tau.exp();
    let p0 = h + u;
    let p1 = h + u1;
    let g = m1 * (u1 - u) / p0 + (u2 - u1) / p1;
    let q = h * (u2 + u - 2.0 * u1) + u2 * u - u1 * u1;
    let d = -p1 * m1 * g / p0 - m1 * q / (p0 * p0);
    let u3 = d * p1 + (h * (2.0 * u2 - u1) + u2 * u2) / p1;
    [u1, u2, u3]
}

fn initial_state(m: usize, t_max: f64, beta: f64) -> [f64; 3] {
    let a = (2.0 - m as f64, 1.0 - m as f64);
    let c = m as f64 - 2.0;
    let x = c * t_max.powf(a.0);
    let y = beta * t_max.powf(a.1);
    [x + y, a.0 * x + a.1 * y, a.0 * a.0 * x + a.1 * a.1 * y]
}

enum Shot {
    /// Reached `t_min`; slope defect and `ψ(0+)` estimate.
    Reached { residual: f64, psi_zero: f64 },
    /// `ψ` or `ψ_τ` stopped being positive on the way in.
    Collapsed,
}

/// The `β`-mode is a factor `T` below the leading correction at `t = T`, so
/// the integration tolerance is tightened accordingly.
fn shooting_tolerance(opts: &ShootingOptions) -> Tolerance {
    let rtol = opts.rtol.min(1e-13);
    Tolerance {
        rtol,
        atol: rtol * 1e-12,
    }
}

fn shoot(m: usize, beta: f64, opts: &ShootingOptions) -> Shot {
    let tol = shooting_tolerance(opts);
    let (tau0, tau1) = (opts.t_max.ln(), opts.t_min.ln());
    let mut collapsed = false;
    let result = dopri5(
        |x, y: &[f64; 3]| rhs(m, x, y),
        tau0,
        initial_state(m, opts.t_max, beta),
        tau1,
        &[],
        tol,
        |x, y, _| {
            let h = 0.5 * x.exp();
            if h + y[0] <= 0.0 || h + y[1] <= 0.0 {
                collapsed = true;
                Control::Stop
            } else if h + y[1] < 1e-6 * h {
                // ψ_τ ~ t^κ with κ > 1: the slope is already decided
                Control::Stop
            } else {
                Control::Continue
            }
        },
    );
    match result {
        Ok((x, y)) if !collapsed => {
            let h = 0.5 * x.exp();
            let d = rhs(m, x, &y);
            let (p0, p1, p2, p3) = (h + y[0], h + y[1], h + y[2], h + d[2]);
            let kappa = p2 / p1;
            // Φ(ψ) = ψ_τ has Φ′ = ψ_ττ/ψ_τ; step back to the zero of Φ
            let phi2 = (p3 * p1 - p2 * p2) / (p1 * p1 * p1);
            let gap = p1 / kappa;
            Shot::Reached {
                residual: kappa - 1.0 - phi2 * gap,
                psi_zero: p0 - gap - 0.5 * phi2 * gap * gap / kappa,
            }
        }
        _ => Shot::Collapsed,
    }
}

fn residual(shot: &Shot) -> f64 {
    match shot {
        Shot::Reached { residual, .. } => *residual,
        Shot::Collapsed => f64::NEG_INFINITY,
    }
}

/// Scalar-flat profile with `T = t_max` and default options.
pub fn burns_simanca(m: usize, t_max: f64) -> Result<MomentumProfile, RadialError> {
    burns_simanca_with(
        m,
        &ShootingOptions {
            t_max,
            ..ShootingOptions::default()
        },
    )
}

pub fn burns_simanca_with(m: usize, opts: &ShootingOptions) -> Result<MomentumProfile, RadialError> {
    if m < 2 {
        return Err(RadialError::Dimension { min: 2, got: m });
    }
    if !(opts.t_max > 1.0) {
        return Err(RadialError::GridBound(opts.t_max));
    }
    let (t, h) = log_grid(opts.t_min, opts.t_max, opts.points);
    if m == 2 {
        return closed_form_profile(t);
    }

    let mut lo = -1.0;
    let mut hi = 1.0;
    let mut iterations = 0;
    while residual(&shoot(m, lo, opts)) >= 0.0 {
        lo *= 2.0;
        iterations += 1;
        if iterations > 60 {
            return Err(bracket_failure(iterations, lo, hi));
        }
    }
    while residual(&shoot(m, hi, opts)) <= 0.0 {
        hi *= 2.0;
        iterations += 1;
        if iterations > 120 {
            return Err(bracket_failure(iterations, lo, hi));
        }
    }
    let mut best = f64::INFINITY;
    while iterations < opts.max_iterations && hi - lo > 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let r = residual(&shoot(m, mid, opts));
        if r.is_finite() {
            best = r;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = 0.5 * (lo + hi);
    let (slope_residual, psi_zero) = match shoot(m, beta, opts) {
        Shot::Reached { residual, psi_zero } => (residual, psi_zero),
        Shot::Collapsed => (best, f64::NAN),
    };
    if !(slope_residual.abs() <= opts.slope_tolerance) {
        return Err(RadialError::ShootingFailed {
            iterations,
            residual: slope_residual,
            lo,
            hi,
        });
    }

    // two extra nodes below t_min so every kept node gets a centred stencil
    let mut ext: Vec<f64> = vec![t[0] * (-2.0 * h).exp(), t[0] * (-h).exp()];
    ext.extend_from_slice(&t);
    let ext_states = sample(m, beta, &ext, opts)?;
    let u2: Vec<f64> = ext_states.iter().map(|s| s[2]).collect();
    let u3 = derivative_4th_order(&u2, h)[2..].to_vec();
    let states = &ext_states[2..];
    let offset: Vec<f64> = states.iter().map(|s| s[0]).collect();
    let half: Vec<f64> = t.iter().map(|x| 0.5 * x).collect();
    let col = |k: usize| -> Vec<f64> { states.iter().zip(&half).map(|(s, h)| h + s[k]).collect() };
    let psi_tau3 = half.iter().zip(&u3).map(|(h, d)| h + d).collect();
    let mut profile = MomentumProfile::assemble(m, t, col(0), col(1), col(2), psi_tau3, offset, psi_zero, None)?;
    let first = profile
        .psi
        .iter()
        .rposition(|p| *p <= 1.01 * psi_zero)
        .unwrap_or(0);
    let t_check = profile.t[first];
    let max_abs_curvature = profile.s[first..].iter().fold(0.0, |a: f64, b| a.max(b.abs()));
    profile.shooting = Some(ShootingReport {
        beta,
        iterations,
        slope_residual,
        t_check,
        max_abs_curvature,
    });
    if !(max_abs_curvature <= opts.tolerance) {
        return Err(RadialError::ShootingFailed {
            iterations,
            residual: max_abs_curvature,
            lo,
            hi,
        });
    }
    Ok(profile)
}

fn bracket_failure(iterations: usize, lo: f64, hi: f64) -> RadialError {
    RadialError::ShootingFailed {
        iterations,
        residual: f64::NAN,
        lo,
        hi,
    }
}

/// States `(u, u_τ, u_ττ)` at the grid nodes, ascending in `t`.
fn sample(m: usize, beta: f64, t: &[f64], opts: &ShootingOptions) -> Result<Vec<[f64; 3]>, RadialError> {
    let tol = shooting_tolerance(opts);
    let stops: Vec<f64> = t.iter().rev().map(|x| x.ln()).collect();
    let mut out = Vec::with_capacity(t.len());
    dopri5(
        |x, y: &[f64; 3]| rhs(m, x, y),
        stops[0],
        initial_state(m, opts.t_max, beta),
        stops[stops.len() - 1],
        &stops,
        tol,
        |_, y, stop| {
            if stop {
                out.push(*y);
            }
            Control::Continue
        },
    )?;
    if out.len() != t.len() {
        return Err(RadialError::Integration {
            tau: stops[stops.len() - 1],
            reason: format!("sampled {} of {} nodes", out.len(), t.len()),
        });
    }
    out.reverse();
    Ok(out)
}

/// `ψ = t/2 + 1`, from `F = t/2 + log t`.
fn closed_form_profile(t: Vec<f64>) -> Result<MomentumProfile, RadialError> {
    let jets: Vec<_> = t.iter().map(|x| ClosedForm::BurnsSimanca2.momentum_jet(x)).collect();
    let col = |f: fn(&super::MomentumJet<f64>) -> f64| jets.iter().map(f).collect::<Vec<_>>();
    MomentumProfile::assemble(
        2,
        t.clone(),
        col(|j| j.psi),
        col(|j| j.psi_tau),
        col(|j| j.psi_tau2),
        col(|j| j.psi_tau3),
        vec![1.0; t.len()],
        1.0,
        None,
    )
}
