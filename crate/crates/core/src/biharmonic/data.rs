//! Boundary data on `S^{2m−1}` as spherical-harmonic coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{BiharmonicError, ParseError};
use crate::scalar::{format_rational, parse_rational, Rational};

fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the degree-`ℓ` harmonics on the unit sphere of `ℝ^{2m}`.
pub fn harmonic_dimension(m: usize, ell: usize) -> u128 {
    let n = 2 * m as i64;
    let l = ell as i64;
    binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1)
}

/// Coefficients against an orthonormal harmonic basis, keyed by degree.
/// Missing degrees are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalData {
    pub m: usize,
    pub coeffs: BTreeMap<usize, Vec<Rational>>,
}

impl SphericalData {
    pub fn new(m: usize, coeffs: BTreeMap<usize, Vec<Rational>>) -> Result<Self, BiharmonicError> {
        if m < 2 {
            return Err(BiharmonicError::Dimension(m));
        }
        for (&degree, v) in &coeffs {
            let expected = harmonic_dimension(m, degree) as usize;
            if v.len() != expected {
                return Err(BiharmonicError::ModeLength {
                    degree,
                    expected,
                    got: v.len(),
                });
            }
        }
        Ok(SphericalData { m, coeffs })
    }

    pub(crate) fn new_unchecked(m: usize, coeffs: BTreeMap<usize, Vec<Rational>>) -> Self {
        SphericalData { m, coeffs }
    }

    pub fn zero(m: usize) -> Self {
        SphericalData {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    /// `value` on the first basis element of degree `ell`, zero elsewhere.
    pub fn single(m: usize, ell: usize, value: Rational) -> Self {
        let mut v = vec![Rational::zero(); harmonic_dimension(m, ell) as usize];
        v[0] = value;
        SphericalData {
            m,
            coeffs: BTreeMap::from([(ell, v)]),
        }
    }

    /// Coefficients of degree `ell`, zero-filled when absent.
    pub fn mode(&self, ell: usize) -> Vec<Rational> {
        self.coeffs
            .get(&ell)
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); harmonic_dimension(self.m, ell) as usize])
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&l, v) in &o.coeffs {
            let e = coeffs.entry(l).or_insert_with(|| vec![Rational::zero(); v.len()]);
            for (a, b) in e.iter_mut().zip(v) {
                *a += b;
            }
        }
        SphericalData { m: self.m, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SphericalData {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&l, v)| (l, v.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }

    /// Equal up to degrees that are identically zero.
    pub fn same_as(&self, o: &Self) -> bool {
        let keys: std::collections::BTreeSet<usize> = self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        self.m == o.m && keys.into_iter().all(|l| self.mode(l) == o.mode(l))
    }

    fn to_strings(&self) -> BTreeMap<String, Vec<String>> {
        self.coeffs
            .iter()
            .map(|(l, v)| (l.to_string(), v.iter().map(format_rational).collect()))
            .collect()
    }

    fn from_strings(m: usize, raw: &BTreeMap<String, Vec<String>>) -> Result<Self, BiharmonicError> {
        let mut coeffs = BTreeMap::new();
        for (key, vals) in raw {
            let degree: usize = key
                .trim()
                .parse()
                .map_err(|_| ParseError::Malformed(format!("degree key {key:?}")))?;
            let v = vals.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            coeffs.insert(degree, v);
        }
        Self::new(m, coeffs)
    }
}

/// `{"m": 2, "lmax": 4, "h": {"0": ["1"], "1": [...]}, "k": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeInput {
    pub m: usize,
    pub lmax: usize,
    #[serde(default)]
    pub h: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub k: BTreeMap<String, Vec<String>>,
}

impl ModeInput {
    pub fn from_json(text: &str) -> Result<Self, BiharmonicError> {
        serde_json::from_str(text).map_err(|e| ParseError::Malformed(e.to_string()).into())
    }

    pub fn from_data(lmax: usize, h: &SphericalData, k: &SphericalData) -> Self {
        ModeInput {
            m: h.m,
            lmax,
            h: h.to_strings(),
            k: k.to_strings(),
        }
    }

    /// Parsed `(h, k)`; degrees above `lmax` are rejected.
    pub fn data(&self) -> Result<(SphericalData, SphericalData), BiharmonicError> {
        let h = SphericalData::from_strings(self.m, &self.h)?;
        let k = SphericalData::from_strings(self.m, &self.k)?;
        if let Some(&l) = h.coeffs.keys().chain(k.coeffs.keys()).find(|&&l| l > self.lmax) {
            return Err(ParseError::Malformed(format!("degree {l} exceeds lmax {}", self.lmax)).into());
        }
        Ok((h, k))
    }
}
