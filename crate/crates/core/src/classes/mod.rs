//! Cohomology classes on blow-ups of ℙ², written over the basis
//! `π*H, E_1, …, E_n` as `h·π*H − Σ e_j·PD[E_j]`.

mod corollary;
mod radical;
mod ratfn;

pub use corollary::{corollary_families, ConstraintCheck, CorollaryFamily};
pub use radical::Radical;
pub use ratfn::{Poly, RatFn};

use std::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ClassError;
use crate::scalar::{format_rational, parse_rational, serde_rational, Rational};

/// Which surface the basis `H, E_j` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BaseSurface {
    #[default]
    P2,
    /// `Bl_q(ℙ¹×ℙ¹)` rewritten as `Bl_2 ℙ²`.
    RuledDerived,
}

/// `h·π*H − Σ e_j·PD[E_j]` with coefficients in `C` (ℚ, or ℚ(ε²) for families).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Class<C> {
    pub h: C,
    pub e: Vec<C>,
    #[serde(skip_serializing_if = "is_p2")]
    pub base: BaseSurface,
}

fn is_p2(b: &BaseSurface) -> bool {
    *b == BaseSurface::P2
}

pub type BlowupClass = Class<Rational>;
pub type ClassFamily = Class<RatFn>;

pub trait Coeff:
    Clone + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self> + Mul<Output = Self>
{
}

impl<C> Coeff for C where
    C: Clone + PartialEq + Zero + One + Sub<Output = C> + Neg<Output = C> + Mul<Output = C>
{
}

impl<C: Coeff> Class<C> {
    pub fn new(h: C, e: Vec<C>) -> Self {
        Class {
            h,
            e,
            base: BaseSurface::P2,
        }
    }

    /// `π*H` on a blow-up at `n` points.
    pub fn hyperplane(n: usize) -> Self {
        Self::new(C::one(), vec![C::zero(); n])
    }

    /// `PD[E_j]` itself, i.e. coefficient `−1` in the `−Σ e_j E_j` convention.
    pub fn exceptional(n: usize, j: usize) -> Self {
        let mut e = vec![C::zero(); n];
        e[j] = -C::one();
        Self::new(C::zero(), e)
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn scale(&self, s: &C) -> Self {
        Class {
            h: self.h.clone() * s.clone(),
            e: self.e.iter().map(|x| x.clone() * s.clone()).collect(),
            base: self.base,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, ClassError> {
        self.check_len(o)?;
        Ok(Class {
            h: self.h.clone() - (-o.h.clone()),
            e: self
                .e
                .iter()
                .zip(&o.e)
                .map(|(a, b)| a.clone() - (-b.clone()))
                .collect(),
            base: self.base,
        })
    }

    fn check_len(&self, o: &Self) -> Result<(), ClassError> {
        if self.n() != o.n() {
            return Err(ClassError::LengthMismatch(self.n(), o.n()));
        }
        Ok(())
    }

    /// Appends a new exceptional divisor with coefficient `c`.
    pub fn blow_up(&self, c: C) -> Self {
        let mut e = self.e.clone();
        e.push(c);
        Class {
            h: self.h.clone(),
            e,
            base: self.base,
        }
    }
}

/// `c1.h·c2.h − Σ c1.e_j·c2.e_j`.
pub fn intersection<C: Coeff>(c1: &Class<C>, c2: &Class<C>) -> Result<C, ClassError> {
    c1.check_len(c2)?;
    Ok(c1
        .e
        .iter()
        .zip(&c2.e)
        .fold(c1.h.clone() * c2.h.clone(), |acc, (a, b)| {
            acc - a.clone() * b.clone()
        }))
}

/// Action of the standard quadratic transformation on `Bl_3 ℙ²`:
/// `H ↦ 2H − ΣE`, `E_i ↦ H − E_j − E_k`.
pub fn cremona<C: Coeff>(c: &Class<C>) -> Result<Class<C>, ClassError> {
    if c.n() != 3 {
        return Err(ClassError::CremonaArity(c.n()));
    }
    let (h, a, b, cc) = (c.h.clone(), c.e[0].clone(), c.e[1].clone(), c.e[2].clone());
    let two_h = h.clone() - (-h.clone());
    Ok(Class {
        h: two_h - a.clone() - b.clone() - cc.clone(),
        e: vec![
            h.clone() - a.clone() - b.clone(),
            h.clone() - a - cc.clone(),
            h - b - cc,
        ],
        base: c.base,
    })
}

/// `α·PD[A_1] + β·PD[A_2] − λ·PD[E]` on `Bl_q(ℙ¹×ℙ¹)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuledClass<C> {
    pub alpha: C,
    pub beta: C,
    pub lambda: C,
}

impl RuledClass<Rational> {
    /// Necessary Kähler-cone inequalities `α > λ`, `β > λ`, `λ ≥ 0`.
    pub fn cone_flags(&self) -> [bool; 3] {
        [
            self.alpha > self.lambda,
            self.beta > self.lambda,
            self.lambda >= Rational::zero(),
        ]
    }
}

impl<C: Coeff> RuledClass<C> {
    /// Self-intersection with `A_1·A_2 = 1`, `A_i² = 0`, `E² = −1`.
    pub fn square(&self) -> C {
        let two = C::one() - (-C::one());
        two * self.alpha.clone() * self.beta.clone() - self.lambda.clone() * self.lambda.clone()
    }
}

/// `(α+β−λ)H − (α−λ)E_1 − (β−λ)E_2`.
pub fn ruled_to_delpezzo<C: Coeff>(r: &RuledClass<C>) -> Class<C> {
    Class {
        h: r.alpha.clone() - (-r.beta.clone()) - r.lambda.clone(),
        e: vec![
            r.alpha.clone() - r.lambda.clone(),
            r.beta.clone() - r.lambda.clone(),
        ],
        base: BaseSurface::RuledDerived,
    }
}

/// Gram matrix of the form on `H, E_1, …, E_n`.
pub fn intersection_gram(n: usize) -> Vec<Vec<Rational>> {
    let basis: Vec<BlowupClass> = std::iter::once(Class::hyperplane(n))
        .chain((0..n).map(|j| Class::exceptional(n, j)))
        .collect();
    basis
        .iter()
        .map(|a| basis.iter().map(|b| intersection(a, b).expect("same n")).collect())
        .collect()
}

/// A failed necessary Kähler-cone inequality, with the curve it comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeViolation {
    pub curve: String,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Checks the class against `E_j`, `H − E_j`, the lines `L_jk = H − E_j − E_k`
/// (or the single line through all points when `aligned`), and `c² > 0`.
pub fn kahler_necessary(c: &BlowupClass, aligned: bool) -> Vec<ConeViolation> {
    let n = c.n();
    let mut curves: Vec<(String, BlowupClass)> = Vec::new();
    for j in 0..n {
        curves.push((format!("E{}", j + 1), Class::exceptional(n, j)));
        let mut line = Class::hyperplane(n);
        line.e[j] = Rational::one();
        curves.push((format!("H-E{}", j + 1), line));
    }
    if aligned && n >= 2 {
        curves.push(("L(all)".to_string(), Class::new(Rational::one(), vec![Rational::one(); n])));
    } else {
        for j in 0..n {
            for k in (j + 1)..n {
                let mut line = Class::hyperplane(n);
                line.e[j] = Rational::one();
                line.e[k] = Rational::one();
                curves.push((format!("L{}{}", j + 1, k + 1), line));
            }
        }
    }
    let mut out = Vec::new();
    for (name, curve) in curves {
        let v = intersection(c, &curve).expect("same n");
        if v <= Rational::zero() {
            out.push(ConeViolation { curve: name, value: v });
        }
    }
    let sq = intersection(c, c).expect("same n");
    if sq <= Rational::zero() {
        out.push(ConeViolation {
            curve: "self".to_string(),
            value: sq,
        });
    }
    out
}

/// `π*[ω] − ε²·Σ a_j^{1/(m−1)}·PD[E_j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonFamily {
    #[serde(serialize_with = "serialize_class")]
    pub base_class: BlowupClass,
    #[serde(with = "serde_rational::vec")]
    pub weights: Vec<Rational>,
    pub m: usize,
    /// `a_j^{1/(m−1)}`.
    pub radicals: Vec<Radical>,
    /// Exponent `2/(2m+1)` of the weight drift `|ã_j − a_j| ≤ c·ε^{2/(2m+1)}`,
    /// present when the nonvanishing condition was not verified.
    pub drift_exponent: Option<String>,
}

/// Builds the ε-family blowing up `weights.len()` new points on top of `base`.
pub fn epsilon_family(
    base: &BlowupClass,
    weights: &[Rational],
    m: usize,
    condition_iii_verified: bool,
) -> Result<EpsilonFamily, ClassError> {
    if m < 2 {
        return Err(ClassError::Dimension(m));
    }
    for w in weights {
        if *w <= Rational::zero() {
            return Err(ClassError::NonpositiveWeight(format_rational(w)));
        }
    }
    let index = u32::try_from(m - 1).map_err(|_| ClassError::Dimension(m))?;
    Ok(EpsilonFamily {
        base_class: base.clone(),
        weights: weights.to_vec(),
        m,
        radicals: weights.iter().map(|w| Radical::new(w.clone(), index)).collect(),
        drift_exponent: (!condition_iii_verified).then(|| format!("2/{}", 2 * m + 1)),
    })
}

impl EpsilonFamily {
    /// Exact family in `e = ε²` when every radical is rational.
    pub fn as_rational_family(&self) -> Option<ClassFamily> {
        let mut c = Class {
            h: RatFn::constant(self.base_class.h.clone()),
            e: self
                .base_class
                .e
                .iter()
                .map(|x| RatFn::constant(x.clone()))
                .collect(),
            base: self.base_class.base,
        };
        for r in &self.radicals {
            c = c.blow_up(RatFn::monomial(r.exact_value()?, 1));
        }
        Some(c)
    }

    /// Coefficients at a numerical `ε`.
    pub fn evaluate_f64(&self, eps: f64) -> (f64, Vec<f64>) {
        use crate::scalar::Field;
        let mut e: Vec<f64> = self.base_class.e.iter().map(|x| x.to_f64()).collect();
        e.extend(self.radicals.iter().map(|r| eps * eps * r.to_f64()));
        (self.base_class.h.to_f64(), e)
    }
}

/// Parses `{"h": "3", "e": ["1", "1", "1"]}`.
pub fn class_from_json(text: &str) -> Result<BlowupClass, ClassError> {
    #[derive(Deserialize)]
    struct Raw {
        h: String,
        e: Vec<String>,
    }
    let raw: Raw = serde_json::from_str(text)
        .map_err(|e| ClassError::Parse(crate::error::ParseError::Malformed(e.to_string())))?;
    Ok(Class::new(
        parse_rational(&raw.h)?,
        raw.e.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
    ))
}

fn serialize_class<S: serde::Serializer>(c: &BlowupClass, s: S) -> Result<S::Ok, S::Error> {
    class_to_json(c).serialize(s)
}

pub fn class_to_json(c: &BlowupClass) -> serde_json::Value {
    serde_json::json!({
        "h": format_rational(&c.h),
        "e": c.e.iter().map(format_rational).collect::<Vec<_>>(),
    })
}
