//! Scalar abstraction shared by every module.
//!
//! Exact computations run over [`Rational`] (arbitrary precision); the same
//! generic code also runs over `f64` for quick numerical sweeps. `Field`
//! carries the handful of extra operations the algorithms need beyond
//! `num_traits::Num`.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// An ordered field, exact or floating point.
pub trait Field: Num + Clone + Debug + PartialOrd + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// True when values compare without rounding (rationals).
    fn is_exact() -> bool;

    /// Zero test: exact for rationals, relative-free absolute cutoff for floats.
    fn is_negligible(&self) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_positive_strict(&self) -> bool {
        !self.is_negligible() && *self > Self::zero()
    }

    fn is_negative_strict(&self) -> bool {
        !self.is_negligible() && *self < Self::zero()
    }

    /// Rescales a nonzero direction to its primitive integer representative
    /// (coprime integer entries, same orientation).
    fn primitive_direction(v: &[Self]) -> Vec<Self>;
}

impl Field for Rational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // numerator / denominator separately would overflow for huge values
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn is_exact() -> bool {
        true
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn primitive_direction(v: &[Self]) -> Vec<Self> {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return v.to_vec();
        }
        ints.into_iter()
            .map(|x| BigRational::from_integer(x / &g))
            .collect()
    }
}

pub(crate) const F64_ZERO_CUTOFF: f64 = 1e-11;

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }

    fn is_negligible(&self) -> bool {
        self.abs() < F64_ZERO_CUTOFF
    }

    fn primitive_direction(v: &[Self]) -> Vec<Self> {
        let max = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if max == 0.0 {
            return v.to_vec();
        }
        let smallest = v
            .iter()
            .filter(|x| x.abs() > 1e-9 * max)
            .fold(f64::INFINITY, |acc, x| acc.min(x.abs()));
        let unit: Vec<f64> = v.iter().map(|x| x / smallest).collect();
        for k in 1..=64 {
            let scaled: Vec<f64> = unit.iter().map(|x| x * k as f64).collect();
            if scaled.iter().all(|x| (x - x.round()).abs() < 1e-9 * x.abs().max(1.0)) {
                let ints: Vec<i64> = scaled.iter().map(|x| x.round() as i64).collect();
                let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                return ints.iter().map(|&x| (x / g) as f64).collect();
            }
        }
        v.iter().map(|x| x / max).collect()
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_val = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut value = BigRational::new(whole_val.abs() * &scale + frac_val, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical `"p/q"` form; integers print as `"p"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    rational_root(r, 2)
}

/// Exact `index`-th root of a rational, when it exists in ℚ.
pub fn rational_root(r: &Rational, index: u32) -> Option<Rational> {
    if index == 0 {
        return None;
    }
    if index == 1 {
        return Some(r.clone());
    }
    if r.is_negative() {
        if index % 2 == 0 {
            return None;
        }
        return rational_root(&-r.clone(), index).map(|x| -x);
    }
    let n = r.numer().nth_root(index);
    let d = r.denom().nth_root(index);
    if num_traits::pow(n.clone(), index as usize) == *r.numer()
        && num_traits::pow(d.clone(), index as usize) == *r.denom()
    {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Serde adapter: rationals travel as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }
}
