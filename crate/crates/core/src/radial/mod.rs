//! U(m)-invariant Kähler potentials `F(t)`, `t = |v|²`, on `ℂ^m` or its
//! blow-up at the origin.
//!
//! Everything is expressed through the momentum profile `ψ = tF′` and its
//! derivatives in `τ = log t`. With `G̃ = (m−1)·log ψ + log ψ_τ` the scalar
//! curvature is
//!
//! ```text
//! s = −2·[(m−1)·(G̃_τ − m)/ψ + G̃_ττ/ψ_τ]
//! ```
//!
//! normalised so that `F = log(1+t)` (Fubini–Study) has `s = 2m(m+1)`.

mod ode;
mod profile;
mod shooting;

pub use ode::{dopri5, Control, Tolerance};
pub use profile::{derivative_4th_order, write_csv, MomentumProfile, ProfileCache};
pub use shooting::{burns_simanca, burns_simanca_with, ShootingOptions, ShootingReport};

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::error::RadialError;
use crate::scalar::{rat, serde_rational, Field, Rational};

/// `F′, F″, F‴, F⁗` at one value of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialJet<S> {
    pub d1: S,
    pub d2: S,
    pub d3: S,
    pub d4: S,
}

/// `ψ` and its first three `τ`-derivatives.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumJet<S> {
    pub psi: S,
    pub psi_tau: S,
    pub psi_tau2: S,
    pub psi_tau3: S,
}

impl<S: Field> PotentialJet<S> {
    /// With `D = t·d/dt`: `ψ = tF′`, `Dψ = tF′ + t²F″`,
    /// `D²ψ = tF′ + 3t²F″ + t³F‴`, `D³ψ = tF′ + 7t²F″ + 6t³F‴ + t⁴F⁗`.
    pub fn to_momentum(&self, t: &S) -> MomentumJet<S> {
        let a = t.clone() * self.d1.clone();
        let b = t.clone() * t.clone() * self.d2.clone();
        let c = t.clone() * t.clone() * t.clone() * self.d3.clone();
        let d = t.clone() * t.clone() * t.clone() * t.clone() * self.d4.clone();
        let k = |x: i64| S::from_i64(x);
        MomentumJet {
            psi: a.clone(),
            psi_tau: a.clone() + b.clone(),
            psi_tau2: a.clone() + k(3) * b.clone() + c.clone(),
            psi_tau3: a + k(7) * b + k(6) * c + d,
        }
    }
}

impl<S: Field> MomentumJet<S> {
    /// `ψ = tF′ > 0` and `ψ_τ = t(F′ + tF″) > 0`.
    pub fn is_positive(&self) -> bool {
        self.psi > S::zero() && self.psi_tau > S::zero()
    }

    /// `ψ_a(t) = a²·ψ(t/a²)`: every `τ`-derivative picks up the same factor.
    pub fn scaled(&self, a2: &S) -> Self {
        MomentumJet {
            psi: a2.clone() * self.psi.clone(),
            psi_tau: a2.clone() * self.psi_tau.clone(),
            psi_tau2: a2.clone() * self.psi_tau2.clone(),
            psi_tau3: a2.clone() * self.psi_tau3.clone(),
        }
    }
}

/// Scalar curvature from the momentum jet (no positivity check), grouped as
/// differences `ψ_τ − ψ`, `ψ_ττψ − ψ_τ²`, `ψ_τττψ_τ − ψ_ττ²` that vanish for
/// flat space.
pub fn scalar_curvature_from_jet<S: Field>(j: &MomentumJet<S>, m: usize) -> S {
    let m1 = S::from_i64(m as i64 - 1);
    let (p0, p1, p2, p3) = (&j.psi, &j.psi_tau, &j.psi_tau2, &j.psi_tau3);
    let g = m1.clone() * (p1.clone() - p0.clone()) / p0.clone() + (p2.clone() - p1.clone()) / p1.clone();
    let a = m1.clone() * g / p0.clone();
    let b = m1 * (p2.clone() * p0.clone() - p1.clone() * p1.clone()) / (p0.clone() * p0.clone() * p1.clone());
    let c = (p3.clone() * p1.clone() - p2.clone() * p2.clone()) / (p1.clone() * p1.clone() * p1.clone());
    -(S::from_i64(2) * (a + b + c))
}

/// The same curvature written directly in `t`:
/// `s = −2[(m−1)G′/F′ + (G′ + tG″)/(F′ + tF″)]` with
/// `G = (m−1)·log F′ + log(F′ + tF″)`.
pub fn scalar_curvature_from_potential<S: Field>(j: &PotentialJet<S>, t: &S, m: usize) -> S {
    let m1 = S::from_i64(m as i64 - 1);
    let k = |x: i64| S::from_i64(x);
    let (f1, f2, f3, f4) = (&j.d1, &j.d2, &j.d3, &j.d4);
    let w = f1.clone() + t.clone() * f2.clone();
    let w1 = k(2) * f2.clone() + t.clone() * f3.clone();
    let w2 = k(3) * f3.clone() + t.clone() * f4.clone();
    let g1 = m1.clone() * f2.clone() / f1.clone() + w1.clone() / w.clone();
    let g2 = m1.clone() * (f3.clone() / f1.clone() - f2.clone() * f2.clone() / (f1.clone() * f1.clone()))
        + w2 / w.clone()
        - w1.clone() * w1 / (w.clone() * w.clone());
    let inner = m1 * g1.clone() / f1.clone() + (g1 + t.clone() * g2) / w;
    -(k(2) * inner)
}

/// Potentials with closed-form derivatives, evaluable over any [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `F = t/2`.
    Euclidean,
    /// `F = log(1+t)`.
    FubiniStudy,
    /// `F = t/2 + log t`, scalar flat for `m = 2`.
    BurnsSimanca2,
}

impl ClosedForm {
    pub fn jet<S: Field>(&self, t: &S) -> PotentialJet<S> {
        let k = |x: i64| S::from_i64(x);
        match self {
            ClosedForm::Euclidean => PotentialJet {
                d1: S::from_ratio(1, 2),
                d2: S::zero(),
                d3: S::zero(),
                d4: S::zero(),
            },
            ClosedForm::FubiniStudy => {
                let u = S::one() / (S::one() + t.clone());
                PotentialJet {
                    d1: u.clone(),
                    d2: -(u.clone() * u.clone()),
                    d3: k(2) * u.clone() * u.clone() * u.clone(),
                    d4: -(k(6) * u.clone() * u.clone() * u.clone() * u),
                }
            }
            ClosedForm::BurnsSimanca2 => {
                let u = S::one() / t.clone();
                PotentialJet {
                    d1: S::from_ratio(1, 2) + u.clone(),
                    d2: -(u.clone() * u.clone()),
                    d3: k(2) * u.clone() * u.clone() * u.clone(),
                    d4: -(k(6) * u.clone() * u.clone() * u.clone() * u),
                }
            }
        }
    }

    /// `ψ` and its `τ`-derivatives written out directly.
    pub fn momentum_jet<S: Field>(&self, t: &S) -> MomentumJet<S> {
        let half_t = t.clone() / S::from_i64(2);
        match self {
            ClosedForm::Euclidean => MomentumJet {
                psi: half_t.clone(),
                psi_tau: half_t.clone(),
                psi_tau2: half_t.clone(),
                psi_tau3: half_t,
            },
            ClosedForm::BurnsSimanca2 => MomentumJet {
                psi: half_t.clone() + S::one(),
                psi_tau: half_t.clone(),
                psi_tau2: half_t.clone(),
                psi_tau3: half_t,
            },
            ClosedForm::FubiniStudy => {
                let u = S::one() / (S::one() + t.clone());
                let k = |x: i64| S::from_i64(x);
                MomentumJet {
                    psi: t.clone() * u.clone(),
                    psi_tau: t.clone() * u.clone() * u.clone(),
                    psi_tau2: t.clone() * (S::one() - t.clone()) * u.clone() * u.clone() * u.clone(),
                    psi_tau3: t.clone()
                        * (S::one() - k(4) * t.clone() + t.clone() * t.clone())
                        * u.clone()
                        * u.clone()
                        * u.clone()
                        * u,
                }
            }
        }
    }
}

/// User-supplied `t ↦ (F′, F″, F‴, F⁗)`.
pub type CustomJet = Arc<dyn Fn(f64) -> PotentialJet<f64> + Send + Sync>;

#[derive(Clone)]
pub enum PotentialKind {
    Closed(ClosedForm),
    Custom(CustomJet),
    Sampled(Arc<MomentumProfile>),
}

impl fmt::Debug for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialKind::Closed(c) => write!(f, "Closed({c:?})"),
            PotentialKind::Custom(_) => write!(f, "Custom"),
            PotentialKind::Sampled(p) => write!(f, "Sampled(m = {}, {} points)", p.m, p.t.len()),
        }
    }
}

/// A radial potential on `ℂ^m`, optionally rescaled as `a²·F(t/a²)`.
#[derive(Debug, Clone)]
pub struct RadialPotential {
    pub kind: PotentialKind,
    pub m: usize,
    scale: Rational,
}

impl RadialPotential {
    pub fn new(kind: PotentialKind, m: usize) -> Self {
        RadialPotential {
            kind,
            m,
            scale: Rational::one(),
        }
    }

    pub fn closed(c: ClosedForm, m: usize) -> Self {
        Self::new(PotentialKind::Closed(c), m)
    }

    pub fn custom(f: impl Fn(f64) -> PotentialJet<f64> + Send + Sync + 'static, m: usize) -> Self {
        Self::new(PotentialKind::Custom(Arc::new(f)), m)
    }

    pub fn sampled(p: MomentumProfile) -> Self {
        let m = p.m;
        Self::new(PotentialKind::Sampled(Arc::new(p)), m)
    }

    /// The potential of `a²ω` in coordinates `v ↦ v/a`, i.e. `a²·F(t/a²)`.
    pub fn rescaled(&self, a2: Rational) -> Self {
        RadialPotential {
            kind: self.kind.clone(),
            m: self.m,
            scale: self.scale.clone() * a2,
        }
    }

    /// Momentum jet at `t`, with the metric positivity check.
    pub fn momentum_jet(&self, t: f64) -> Result<MomentumJet<f64>, RadialError> {
        if self.m == 0 {
            return Err(RadialError::Dimension { min: 1, got: 0 });
        }
        let a2 = self.scale.to_f64();
        let inner_t = t / a2;
        let j = match &self.kind {
            PotentialKind::Closed(c) => c.momentum_jet(&inner_t),
            PotentialKind::Custom(f) => f(inner_t).to_momentum(&inner_t),
            PotentialKind::Sampled(p) => p.jet_at(inner_t)?,
        }
        .scaled(&a2);
        if !j.is_positive() || !j.psi.is_finite() || !j.psi_tau.is_finite() {
            return Err(RadialError::NotKahlerAtT {
                t,
                psi: j.psi,
                psi_tau: j.psi_tau,
            });
        }
        Ok(j)
    }

    /// Exact momentum jet at a rational `t` (closed forms only).
    pub fn exact_momentum_jet(&self, t: &Rational) -> Option<Result<MomentumJet<Rational>, RadialError>> {
        let PotentialKind::Closed(c) = &self.kind else {
            return None;
        };
        let inner_t = t / &self.scale;
        let j = c.jet(&inner_t).to_momentum(&inner_t).scaled(&self.scale);
        Some(if j.is_positive() {
            Ok(j)
        } else {
            Err(RadialError::NotKahlerAtT {
                t: t.to_f64(),
                psi: j.psi.to_f64(),
                psi_tau: j.psi_tau.to_f64(),
            })
        })
    }
}

/// Scalar curvature of `p` at `t`; fails with `not_kahler_at_t` when the
/// metric is not positive there.
pub fn radial_scalar_curvature(p: &RadialPotential, t: f64) -> Result<f64, RadialError> {
    let j = p.momentum_jet(t)?;
    Ok(scalar_curvature_from_jet(&j, p.m))
}

/// Exact scalar curvature of a closed-form potential at rational `t`.
pub fn radial_scalar_curvature_exact(p: &RadialPotential, t: &Rational) -> Option<Result<Rational, RadialError>> {
    p.exact_momentum_jet(t)
        .map(|r| r.map(|j| scalar_curvature_from_jet(&j, p.m)))
}

/// Gluing radii for parameter `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedules {
    pub epsilon: f64,
    pub m: usize,
    /// `r_ε = ε^{(2m−1)/(2m+1)}`.
    pub r_eps: f64,
    /// `R_ε = r_ε/ε = ε^{−2/(2m+1)}`.
    pub big_r_eps: f64,
    #[serde(with = "serde_rational")]
    pub r_exponent: Rational,
    #[serde(with = "serde_rational")]
    pub big_r_exponent: Rational,
    /// Weight drift `|ã_j − a_j| ≤ c·ε^{2/(2m+1)}`.
    #[serde(with = "serde_rational")]
    pub drift_exponent: Rational,
}

pub fn schedules(epsilon: f64, m: usize) -> Result<Schedules, RadialError> {
    if m < 2 {
        return Err(RadialError::Dimension { min: 2, got: m });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(RadialError::EpsilonOutOfRange(epsilon));
    }
    let d = 2 * m as i64 + 1;
    let r_exponent = rat(2 * m as i64 - 1, d);
    let big_r_exponent = rat(-2, d);
    Ok(Schedules {
        epsilon,
        m,
        r_eps: epsilon.powf(r_exponent.to_f64()),
        big_r_eps: epsilon.powf(big_r_exponent.to_f64()),
        r_exponent,
        drift_exponent: -big_r_exponent.clone(),
        big_r_exponent,
    })
}

/// `|S^{2m−1}| = 2π^m/(m−1)!`.
pub fn odd_sphere_area(m: usize) -> f64 {
    let fact: f64 = (1..m).map(|k| k as f64).product();
    2.0 * PI.powi(m as i32) / fact
}

/// `c_2 = 2|S³|`, `c_m = 4(m−1)(m−2)|S^{2m−1}|` for `m ≥ 3`.
pub fn mass_constant(m: usize) -> Result<f64, RadialError> {
    match m {
        0 | 1 => Err(RadialError::Dimension { min: 2, got: m }),
        2 => Ok(2.0 * odd_sphere_area(2)),
        _ => Ok(4.0 * (m - 1) as f64 * (m - 2) as f64 * odd_sphere_area(m)),
    }
}

/// The exact value `2m(m+1)` for Fubini–Study.
pub fn fubini_study_curvature(m: usize) -> Rational {
    Rational::from_integer((2 * m * (m + 1)).into())
}
