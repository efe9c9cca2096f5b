//! Biharmonic extensions of boundary data `(h, k) = (W, ΔW)|_{r=1}` to the
//! unit ball and to its complement in `ℝ^{2m}`, mode by mode.
//!
//! A degree-`ℓ` spherical harmonic times `r^s` has Laplacian
//! `D(s, ℓ)·r^{s−2}` with `D(s, ℓ) = s(s+2m−2) − ℓ(ℓ+2m−2)`, so every solve is
//! a 2×2 rational system per mode.

mod data;

pub use data::{harmonic_dimension, ModeInput, SphericalData};

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::BiharmonicError;
use crate::scalar::{format_rational, serde_rational, Field, Rational};

/// `D(s, ℓ) = s(s+2m−2) − ℓ(ℓ+2m−2)`.
pub fn displacement(s: i64, ell: i64, m: i64) -> i64 {
    s * (s + 2 * m - 2) - ell * (ell + 2 * m - 2)
}

/// `c·r^p` or `c·r^p·log r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTerm {
    pub coeff: Rational,
    pub power: i64,
    pub log: bool,
}

/// A finite sum of radial terms multiplying a fixed degree-`ℓ` harmonic.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialExpr {
    pub terms: Vec<RadialTerm>,
}

impl RadialExpr {
    pub fn power(coeff: Rational, power: i64) -> Self {
        RadialExpr {
            terms: vec![RadialTerm {
                coeff,
                power,
                log: false,
            }],
        }
        .simplified()
    }

    pub fn log(coeff: Rational) -> Self {
        RadialExpr {
            terms: vec![RadialTerm {
                coeff,
                power: 0,
                log: true,
            }],
        }
        .simplified()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        RadialExpr { terms }.simplified()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RadialExpr {
            terms: self
                .terms
                .iter()
                .map(|t| RadialTerm {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
        .simplified()
    }

    /// Merges like terms, drops zeros, sorts by `(log, power)`.
    fn simplified(self) -> Self {
        let mut map: BTreeMap<(bool, i64), Rational> = BTreeMap::new();
        for t in self.terms {
            *map.entry((t.log, t.power)).or_insert_with(Rational::zero) += t.coeff;
        }
        RadialExpr {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((log, power), coeff)| RadialTerm { coeff, power, log })
                .collect(),
        }
    }

    /// `Δ(f(r)·Y_ℓ) / Y_ℓ`; uses
    /// `Δ(r^s log r·Y_ℓ) = r^{s−2}[D(s,ℓ)·log r + 2s + 2m − 2]·Y_ℓ`.
    pub fn laplacian(&self, ell: i64, m: i64) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            let d = Rational::from_integer(displacement(t.power, ell, m).into());
            terms.push(RadialTerm {
                coeff: &t.coeff * d,
                power: t.power - 2,
                log: t.log,
            });
            if t.log {
                let extra = Rational::from_integer((2 * t.power + 2 * m - 2).into());
                terms.push(RadialTerm {
                    coeff: &t.coeff * extra,
                    power: t.power - 2,
                    log: false,
                });
            }
        }
        RadialExpr { terms }.simplified()
    }

    pub fn value_at_one(&self) -> Rational {
        self.terms
            .iter()
            .filter(|t| !t.log)
            .fold(Rational::zero(), |a, t| a + &t.coeff)
    }

    /// `∂_r` at `r = 1`.
    pub fn radial_derivative_at_one(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |a, t| {
            let d = if t.log {
                Rational::one()
            } else {
                Rational::from_integer(t.power.into())
            };
            a + &t.coeff * d
        })
    }

    pub fn evaluate(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let base = t.coeff.to_f64() * r.powi(t.power as i32);
                if t.log {
                    base * r.ln()
                } else {
                    base
                }
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for RadialExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let c = format_rational(&t.coeff.abs());
            let body = match (t.power, t.log) {
                (0, false) => c.clone(),
                (0, true) => "log r".to_string(),
                (1, false) => "r".to_string(),
                (p, false) => format!("r^{p}"),
                (p, true) => format!("r^{p} log r"),
            };
            if c == "1" || (t.power == 0 && !t.log) {
                write!(f, "{body}")?;
            } else {
                write!(f, "{c}*{body}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for RadialExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Interior,
    Exterior,
}

/// Coefficients of the two radial powers of one degree, one pair per
/// harmonic basis element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSolution {
    pub exponents: [i64; 2],
    /// True for the `m = 2`, `ℓ = 0` exterior mode whose second member is `log r`.
    pub log_second: bool,
    /// Index of the member excluded by the growth class, if any; its
    /// coefficients are zero.
    pub excluded: Option<usize>,
    #[serde(serialize_with = "pairs")]
    pub coeffs: Vec<[Rational; 2]>,
}

fn pairs<S: Serializer>(v: &[[Rational; 2]], s: S) -> Result<S::Ok, S::Error> {
    let out: Vec<[String; 2]> = v
        .iter()
        .map(|[a, b]| [format_rational(a), format_rational(b)])
        .collect();
    out.serialize(s)
}

impl ModeSolution {
    fn member(&self, j: usize, coeff: Rational) -> RadialExpr {
        if j == 1 && self.log_second {
            RadialExpr::log(coeff)
        } else {
            RadialExpr::power(coeff, self.exponents[j])
        }
    }

    /// Radial profile of basis element `i`.
    pub fn radial(&self, i: usize) -> RadialExpr {
        let [a, b] = &self.coeffs[i];
        self.member(0, a.clone()).add(&self.member(1, b.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionSolution {
    pub side: Side,
    pub m: usize,
    pub modes: BTreeMap<usize, ModeSolution>,
}

impl ExtensionSolution {
    /// `(W, ΔW)` at `r = 1`, mode by mode.
    pub fn boundary(&self) -> (SphericalData, SphericalData) {
        let mi = self.m as i64;
        let mut h = BTreeMap::new();
        let mut k = BTreeMap::new();
        for (&ell, mode) in &self.modes {
            let (hv, kv) = (0..mode.coeffs.len())
                .map(|i| {
                    let w = mode.radial(i);
                    (w.value_at_one(), w.laplacian(ell as i64, mi).value_at_one())
                })
                .unzip();
            h.insert(ell, hv);
            k.insert(ell, kv);
        }
        (
            SphericalData::new_unchecked(self.m, h),
            SphericalData::new_unchecked(self.m, k),
        )
    }

    /// `Δ²W = 0` for every basis member used, checked on the displacement
    /// polynomial: `D(s, ℓ)·D(s−2, ℓ) = 0`.
    pub fn is_biharmonic(&self) -> bool {
        let mi = self.m as i64;
        self.modes.iter().all(|(&ell, mode)| {
            (0..mode.coeffs.len()).all(|i| mode.radial(i).laplacian(ell as i64, mi).laplacian(ell as i64, mi).is_zero())
        })
    }

    /// Largest coefficient magnitude per degree.
    pub fn coefficient_growth(&self) -> Vec<(usize, f64)> {
        self.modes
            .iter()
            .map(|(&ell, mode)| {
                let mx = mode
                    .coeffs
                    .iter()
                    .flat_map(|p| p.iter())
                    .fold(0.0f64, |a, c| a.max(c.to_f64().abs()));
                (ell, mx)
            })
            .collect()
    }
}

fn check_pair(h: &SphericalData, k: &SphericalData) -> Result<(), BiharmonicError> {
    if h.m != k.m {
        return Err(BiharmonicError::DimensionMismatch);
    }
    if h.m < 2 {
        return Err(BiharmonicError::Dimension(h.m));
    }
    Ok(())
}

fn degrees(h: &SphericalData, k: &SphericalData) -> Vec<usize> {
    let mut d: Vec<usize> = h.coeffs.keys().chain(k.coeffs.keys()).copied().collect();
    d.sort_unstable();
    d.dedup();
    d
}

/// Interior extension in `{r^ℓ, r^{ℓ+2}}` with `r⁰` excluded; needs
/// `4m·h₀ = k₀`.
pub fn interior_extension(h: &SphericalData, k: &SphericalData) -> Result<ExtensionSolution, BiharmonicError> {
    check_pair(h, k)?;
    let mut modes = BTreeMap::new();
    for ell in degrees(h, k) {
        let coeffs = h
            .mode(ell)
            .iter()
            .zip(&k.mode(ell))
            .map(|(hi, ki)| interior_mode(h.m, ell, hi, ki))
            .collect::<Result<Vec<_>, _>>()?;
        let l = ell as i64;
        modes.insert(
            ell,
            ModeSolution {
                exponents: [l, l + 2],
                log_second: false,
                excluded: (ell == 0).then_some(0),
                coeffs,
            },
        );
    }
    Ok(ExtensionSolution {
        side: Side::Interior,
        m: h.m,
        modes,
    })
}

/// Coefficients of `r^ℓ`, `r^{ℓ+2}` for one basis element of degree `ℓ`.
pub fn interior_mode(m: usize, ell: usize, h: &Rational, k: &Rational) -> Result<[Rational; 2], BiharmonicError> {
    let (mi, l) = (m as i64, ell as i64);
    let b = k / Rational::from_integer(displacement(l + 2, l, mi).into());
    let a = h - &b;
    if ell == 0 && !a.is_zero() {
        let defect = Rational::from_integer((4 * mi).into()) * h - k;
        return Err(BiharmonicError::InteriorConstraint(format!(
            "{}*sqrt|S^{}|",
            format_rational(&defect),
            2 * mi - 1
        )));
    }
    Ok([a, b])
}

/// Exterior extension in `{r^{2−2m−ℓ}, r^{4−2m−ℓ}}` with the second member
/// excluded at `ℓ = 0` (`log r` when `m = 2`); needs `k₀ = 0`.
pub fn exterior_extension(h: &SphericalData, k: &SphericalData) -> Result<ExtensionSolution, BiharmonicError> {
    check_pair(h, k)?;
    let m = h.m as i64;
    let mut modes = BTreeMap::new();
    for ell in degrees(h, k) {
        let coeffs = h
            .mode(ell)
            .iter()
            .zip(&k.mode(ell))
            .map(|(hi, ki)| exterior_mode(h.m, ell, hi, ki))
            .collect::<Result<Vec<_>, _>>()?;
        let l = ell as i64;
        modes.insert(
            ell,
            ModeSolution {
                exponents: [2 - 2 * m - l, 4 - 2 * m - l],
                log_second: ell == 0 && m == 2,
                excluded: (ell == 0).then_some(1),
                coeffs,
            },
        );
    }
    Ok(ExtensionSolution {
        side: Side::Exterior,
        m: h.m,
        modes,
    })
}

/// Coefficients of `r^{2−2m−ℓ}`, `r^{4−2m−ℓ}` for one basis element of degree `ℓ`.
pub fn exterior_mode(m: usize, ell: usize, h: &Rational, k: &Rational) -> Result<[Rational; 2], BiharmonicError> {
    let (mi, l) = (m as i64, ell as i64);
    if ell == 0 {
        if !k.is_zero() {
            return Err(BiharmonicError::ExteriorConstraint(format!(
                "{}*sqrt|S^{}|",
                format_rational(k),
                2 * mi - 1
            )));
        }
        return Ok([h.clone(), Rational::zero()]);
    }
    let e = k / Rational::from_integer(displacement(4 - 2 * mi - l, l, mi).into());
    Ok([h - &e, e])
}

/// Closed forms for constant data that leave the growth classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialSolutions {
    /// `W^i_{h,0} = h`.
    pub interior: RadialExpr,
    /// `k/(4(m−2))·(r^{2−2m} − r^{4−2m})`, or `(k/4)·log r² = (k/2)·log r` for `m = 2`.
    pub exterior: RadialExpr,
}

pub fn extended_special_solutions(
    m: usize,
    h_const: &Rational,
    k_const: &Rational,
) -> Result<SpecialSolutions, BiharmonicError> {
    if m < 2 {
        return Err(BiharmonicError::Dimension(m));
    }
    let mi = m as i64;
    let exterior = if m == 2 {
        RadialExpr::log(k_const / Rational::from_integer(2.into()))
    } else {
        let c = k_const / Rational::from_integer((4 * (mi - 2)).into());
        RadialExpr::power(c.clone(), 2 - 2 * mi).add(&RadialExpr::power(-c, 4 - 2 * mi))
    };
    Ok(SpecialSolutions {
        interior: RadialExpr::power(h_const.clone(), 0),
        exterior,
    })
}

/// Radial profiles of `W^i_{h,k}`, `W^o_{h,k}` on one degree-`ℓ` basis element.
/// At `ℓ = 0` the `extended` flag selects the special closed forms (by
/// linearity `W_{h,k} = W_{h,0} + W_{0,k}` on each side); otherwise the
/// excluded members are dropped and the data that needs them is discarded.
fn mode_pair(m: i64, ell: i64, h: &Rational, k: &Rational, extended: bool) -> (RadialExpr, RadialExpr) {
    if ell > 0 {
        let [a, b] = interior_mode(m as usize, ell as usize, h, k).expect("no constraint above degree 0");
        let [c, e] = exterior_mode(m as usize, ell as usize, h, k).expect("no constraint above degree 0");
        let wi = RadialExpr::power(a, ell).add(&RadialExpr::power(b, ell + 2));
        let wo = RadialExpr::power(c, 2 - 2 * m - ell).add(&RadialExpr::power(e, 4 - 2 * m - ell));
        return (wi, wo);
    }
    let four_m = Rational::from_integer((4 * m).into());
    let inner_constrained = RadialExpr::power(k / &four_m, 2);
    let outer_constrained = RadialExpr::power(h.clone(), 2 - 2 * m);
    if !extended {
        return (inner_constrained, outer_constrained);
    }
    let sp = extended_special_solutions(m as usize, &(h - k / &four_m), k).expect("m >= 2");
    (inner_constrained.add(&sp.interior), outer_constrained.add(&sp.exterior))
}

/// Matrix of `(h, k) ↦ (∂_r(W^i − W^o), ∂_rΔ(W^i − W^o))` at `r = 1` on one
/// degree, columns `h`, `k`.
pub fn matching_matrix(m: usize, ell: usize, extended: bool) -> [[Rational; 2]; 2] {
    let (mi, l) = (m as i64, ell as i64);
    let column = |h: Rational, k: Rational| {
        let (wi, wo) = mode_pair(mi, l, &h, &k, extended);
        let diff = wi.add(&wo.scale(&-Rational::one()));
        [
            diff.radial_derivative_at_one(),
            diff.laplacian(l, mi).radial_derivative_at_one(),
        ]
    };
    let c0 = column(Rational::one(), Rational::zero());
    let c1 = column(Rational::zero(), Rational::one());
    [[c0[0].clone(), c1[0].clone()], [c0[1].clone(), c1[1].clone()]]
}

fn det2(a: &[[Rational; 2]; 2]) -> Rational {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingRow {
    pub ell: usize,
    pub extended: [[Rational; 2]; 2],
    pub det_extended: Rational,
    pub constrained: [[Rational; 2]; 2],
    pub det_constrained: Rational,
}

impl Serialize for MatchingRow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mat = |a: &[[Rational; 2]; 2]| -> Vec<Vec<String>> {
            a.iter().map(|r| r.iter().map(format_rational).collect()).collect()
        };
        let mut st = s.serialize_struct("MatchingRow", 5)?;
        st.serialize_field("ell", &self.ell)?;
        st.serialize_field("extended", &mat(&self.extended))?;
        st.serialize_field("det_extended", &format_rational(&self.det_extended))?;
        st.serialize_field("constrained", &mat(&self.constrained))?;
        st.serialize_field("det_constrained", &format_rational(&self.det_constrained))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingTable {
    pub m: usize,
    pub lmax: usize,
    pub rows: Vec<MatchingRow>,
    /// Slope of `log|det|` against `log ℓ` over the upper half of the degrees.
    pub growth_exponent: Option<f64>,
    /// Degrees where the extended determinant vanishes.
    pub singular_extended: Vec<usize>,
    /// Degrees where the constrained determinant vanishes.
    pub singular_constrained: Vec<usize>,
    #[serde(with = "serde_rational::vec")]
    pub harmonic_dimensions: Vec<Rational>,
}

pub fn matching_matrices(m: usize, lmax: usize) -> Result<MatchingTable, BiharmonicError> {
    if m < 2 {
        return Err(BiharmonicError::Dimension(m));
    }
    let rows: Vec<MatchingRow> = (0..=lmax)
        .map(|ell| {
            let extended = matching_matrix(m, ell, true);
            let constrained = matching_matrix(m, ell, false);
            MatchingRow {
                ell,
                det_extended: det2(&extended),
                det_constrained: det2(&constrained),
                extended,
                constrained,
            }
        })
        .collect();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.ell >= 1 && 2 * r.ell >= lmax && !r.det_extended.is_zero())
        .map(|r| ((r.ell as f64).ln(), r.det_extended.to_f64().abs().ln()))
        .collect();
    let growth_exponent = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    Ok(MatchingTable {
        m,
        lmax,
        singular_extended: rows.iter().filter(|r| r.det_extended.is_zero()).map(|r| r.ell).collect(),
        singular_constrained: rows.iter().filter(|r| r.det_constrained.is_zero()).map(|r| r.ell).collect(),
        harmonic_dimensions: (0..=lmax)
            .map(|l| Rational::from_integer(harmonic_dimension(m, l).into()))
            .collect(),
        rows,
        growth_exponent,
    })
}

/// `ell,det_extended,det_constrained` rows.
pub fn write_determinants_csv<W: Write>(t: &MatchingTable, mut w: W) -> std::io::Result<()> {
    writeln!(w, "ell,det_extended,det_constrained")?;
    for r in &t.rows {
        writeln!(
            w,
            "{},{},{}",
            r.ell,
            format_rational(&r.det_extended),
            format_rational(&r.det_constrained)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn displacement_values() {
        for m in 2..6 {
            for l in 0..6 {
                assert_eq!(displacement(l, l, m), 0);
                assert_eq!(displacement(l + 2, l, m), 4 * l + 4 * m);
                assert_eq!(displacement(2 - 2 * m - l, l, m), 0);
                assert_eq!(displacement(4 - 2 * m - l, l, m), -4 * (l + m - 2));
            }
        }
    }

    #[test]
    fn printed_closed_forms() {
        let sp = extended_special_solutions(3, &int(5), &int(1)).unwrap();
        assert_eq!(
            sp.exterior,
            RadialExpr::power(rat(1, 4), -4).add(&RadialExpr::power(rat(-1, 4), -2))
        );
        assert_eq!(sp.interior, RadialExpr::power(int(5), 0));
        let sp = extended_special_solutions(2, &int(0), &int(2)).unwrap();
        assert_eq!(sp.exterior, RadialExpr::log(int(1)));
        assert_eq!(sp.exterior.to_string(), "log r");
        // Δ at r = 1 returns k on both sides of the dimension split
        for m in 2..6 {
            let sp = extended_special_solutions(m, &int(0), &int(7)).unwrap();
            assert_eq!(sp.exterior.laplacian(0, m as i64).value_at_one(), int(7));
            assert_eq!(sp.exterior.value_at_one(), int(0));
        }
    }

    #[test]
    fn constant_and_degree_one_examples() {
        let m = 3;
        let b = rat(2, 3);
        let h = SphericalData::single(m, 0, b.clone());
        let k = SphericalData::single(m, 0, &b * int(12));
        let w = interior_extension(&h, &k).unwrap();
        assert_eq!(w.modes[&0].radial(0), RadialExpr::power(b.clone(), 2));
        assert!(matches!(
            interior_extension(&h, &SphericalData::single(m, 0, int(1))),
            Err(BiharmonicError::InteriorConstraint(_))
        ));

        let h = SphericalData::single(m, 1, int(1));
        let k = SphericalData::single(m, 1, int(0));
        assert_eq!(interior_extension(&h, &k).unwrap().modes[&1].radial(0), RadialExpr::power(int(1), 1));
        let h = SphericalData::single(m, 1, int(0));
        let k = SphericalData::single(m, 1, int(4 + 4 * m as i64));
        assert_eq!(
            interior_extension(&h, &k).unwrap().modes[&1].radial(0),
            RadialExpr::power(int(1), 3).add(&RadialExpr::power(int(-1), 1))
        );
    }

    #[test]
    fn exterior_constant_modes() {
        let c = rat(3, 2);
        let w = exterior_extension(&SphericalData::single(2, 0, c.clone()), &SphericalData::single(2, 0, int(0))).unwrap();
        assert_eq!(w.modes[&0].radial(0), RadialExpr::power(c.clone(), -2));
        assert!(w.modes[&0].log_second);
        let w = exterior_extension(&SphericalData::single(4, 0, c.clone()), &SphericalData::single(4, 0, int(0))).unwrap();
        assert_eq!(w.modes[&0].radial(0), RadialExpr::power(c, -6));
        assert!(matches!(
            exterior_extension(&SphericalData::single(4, 0, int(0)), &SphericalData::single(4, 0, int(1))),
            Err(BiharmonicError::ExteriorConstraint(_))
        ));
    }

    #[test]
    fn matching_determinants() {
        for m in 2..6usize {
            for ell in 0..8usize {
                let d = det2(&matching_matrix(m, ell, true));
                let expect = int(2 * (ell + m) as i64 - 2);
                assert_eq!(d, &expect * &expect, "m={m} ell={ell}");
            }
            assert!(det2(&matching_matrix(m, 0, false)).is_zero());
            assert_eq!(matching_matrix(m, 3, false), matching_matrix(m, 3, true));
        }
        let t = matching_matrices(2, 50).unwrap();
        assert!(t.singular_extended.is_empty());
        assert_eq!(t.singular_constrained, vec![0]);
        assert!((t.growth_exponent.unwrap() - 2.0).abs() < 0.2);
    }
}
