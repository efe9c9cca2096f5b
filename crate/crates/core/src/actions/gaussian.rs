//! Complex numbers with components in a [`Field`]; exact over ℚ(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::scalar::{format_rational, parse_rational, rational_sqrt, Field, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Gaussian<S> {
    pub re: S,
    pub im: S,
}

impl<S: Field> Gaussian<S> {
    pub fn new(re: S, im: S) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: S) -> Self {
        Gaussian { re, im: S::zero() }
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Gaussian {
            re: S::zero(),
            im: S::one(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian {
            re: S::from_i64(re),
            im: S::from_i64(im),
        }
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_negligible() && self.im.is_negligible()
    }

    pub fn scale(&self, s: &S) -> Self {
        Gaussian {
            re: self.re.clone() * s.clone(),
            im: self.im.clone() * s.clone(),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<S: Field> Add for Gaussian<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gaussian {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl<S: Field> Sub for Gaussian<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gaussian {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl<S: Field> Mul for Gaussian<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gaussian {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<S: Field> Div for Gaussian<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm_sqr();
        let p = self * o.conj();
        Gaussian {
            re: p.re / n.clone(),
            im: p.im / n,
        }
    }
}

impl<S: Field> Neg for Gaussian<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Gaussian<Rational> {
    /// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"` with rational `a`, `b`
    /// (`"p/q"` or decimals); `"i"` and `"-i"` are accepted.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::Gaussian(text.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Gaussian::real(parse_rational(&s).map_err(|_| bad())?));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_txt {
            "" | "+" => Rational::from_i64(1),
            "-" => Rational::from_i64(-1),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t)).map_err(|_| bad())?,
        };
        let re = parse_rational(re_txt).map_err(|_| bad())?;
        Ok(Gaussian { re, im })
    }

    /// Exact square root in ℚ(i), if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.im.is_zero() && self.re.is_zero() {
            return Some(Self::zero());
        }
        let r = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_i64(2);
        let x2 = (r.clone() + self.re.clone()) / two.clone();
        if !x2.is_zero() {
            let x = rational_sqrt(&x2)?;
            let y = self.im.clone() / (two * x.clone());
            return Some(Gaussian { re: x, im: y });
        }
        let y = rational_sqrt(&((r - self.re.clone()) / two))?;
        Some(Gaussian {
            re: Rational::zero(),
            im: y,
        })
    }
}

impl fmt::Display for Gaussian<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        let im = if self.im == Rational::from_i64(1) {
            String::new()
        } else if self.im == Rational::from_i64(-1) {
            "-".to_string()
        } else {
            format_rational(&self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if self.im < Rational::zero() {
            write!(f, "{}{im}i", format_rational(&self.re))
        } else {
            write!(f, "{}+{im}i", format_rational(&self.re))
        }
    }
}

impl Serialize for Gaussian<Rational> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gaussian<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Gaussian::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn g(s: &str) -> Gaussian<Rational> {
        Gaussian::parse(s).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(g("1/1+0i"), Gaussian::real(int(1)));
        assert_eq!(g("1/2-3/4i"), Gaussian::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(g("-i"), Gaussian::new(int(0), int(-1)));
        assert_eq!(g("i"), Gaussian::new(int(0), int(1)));
        assert_eq!(g("-2-i"), Gaussian::new(int(-2), int(-1)));
        assert_eq!(g("3i"), Gaussian::new(int(0), int(3)));
        assert_eq!(g("-5"), Gaussian::real(int(-5)));
        assert!(Gaussian::parse("1+xi").is_err());
        assert!(Gaussian::parse("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1/2", "i", "-i", "1+i", "-2-i", "1/3-2/5i", "7/2i"] {
            assert_eq!(g(s).to_string(), s);
            assert_eq!(g(&g(s).to_string()), g(s));
        }
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(a.clone() * b.clone(), g("5+5i"));
        assert_eq!((a.clone() * b.clone()) / b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.norm_sqr(), int(5));
    }

    #[test]
    fn exact_square_roots() {
        let z = g("3+4i");
        let r = z.sqrt_exact().unwrap();
        assert_eq!(r.clone() * r, z);
        let w = g("-4");
        assert_eq!(w.sqrt_exact().unwrap(), g("2i"));
        assert!(g("2").sqrt_exact().is_none());
        assert!(g("1+i").sqrt_exact().is_none());
    }
}
