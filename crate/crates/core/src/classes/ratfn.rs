//! Rational functions in one variable `e` (standing for `ε²`) over ℚ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::scalar::{format_rational, Rational};

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·e^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, e: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * e + c)
    }

    fn scale(&self, s: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Euclidean division; `d` must be nonzero.
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        let lead = d.lead();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1].clone() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] = r[k + i].clone() - &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero_poly() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Rational::zero)
                        + o.0.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::default();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

/// `num/den` in lowest terms with monic denominator.
#[derive(Debug, Clone)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero_poly(), "zero denominator");
        if num.is_zero_poly() {
            return Self::constant(Rational::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let lead = Rational::one() / den.lead();
        RatFn {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFn {
            num: Poly::constant(c),
            den: Poly::constant(Rational::one()),
        }
    }

    /// `c·e^k`, i.e. `c·ε^{2k}`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        RatFn {
            num: Poly::monomial(c, k),
            den: Poly::constant(Rational::one()),
        }
    }

    /// `c0 + c1·e`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        RatFn {
            num: Poly::new(vec![c0, c1]),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Value at `e = ε²`; `None` at a pole.
    pub fn eval(&self, e: &Rational) -> Option<Rational> {
        let d = self.den.eval(e);
        (!d.is_zero()).then(|| self.num.eval(e) / d)
    }

    /// Substitutes `e ↦ e^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let spread = |p: &Poly| {
            let mut v = vec![Rational::zero(); p.0.len().saturating_sub(1) * k + 1];
            for (i, c) in p.0.iter().enumerate() {
                v[i * k] = c.clone();
            }
            Poly::new(v)
        };
        RatFn::new(spread(&self.num), spread(&self.den))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatFn {
    type Output = RatFn;
    fn div(self, o: RatFn) -> RatFn {
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        Self::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero_poly()
    }
}

impl One for RatFn {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

fn term_name(k: usize) -> String {
    match k {
        0 => "const".to_string(),
        1 => "eps2".to_string(),
        k => format!("eps{}", 2 * k),
    }
}

fn poly_string(p: &Poly) -> String {
    if p.is_zero_poly() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "e2".to_string(),
            k => format!("e{}", 2 * k),
        };
        let mag = format_rational(&num_traits::Signed::abs(c));
        let body = if k > 0 && mag == "1" { var } else if k > 0 { format!("{mag}*{var}") } else { mag };
        if out.is_empty() {
            if c < &Rational::zero() {
                out.push('-');
            }
        } else {
            out.push_str(if c < &Rational::zero() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for RatFn {
    /// `e2` stands for `ε²`, `e4` for `ε⁴`, …
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", poly_string(&self.num))
        } else {
            write!(f, "({})/({})", poly_string(&self.num), poly_string(&self.den))
        }
    }
}

struct PolyTerms<'a>(&'a Poly);

impl Serialize for PolyTerms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz: Vec<(usize, &Rational)> =
            self.0 .0.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut map = s.serialize_map(Some(nz.len().max(1)))?;
        if nz.is_empty() {
            map.serialize_entry("const", "0")?;
        }
        for (k, c) in nz {
            map.serialize_entry(&term_name(k), &format_rational(c))?;
        }
        map.end()
    }
}

impl Serialize for RatFn {
    /// Polynomials as `{"const": "1/2", "eps2": "3"}`; proper fractions as
    /// `{"num": {...}, "den": {...}}`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_polynomial() {
            let c = Rational::one() / self.den.lead();
            PolyTerms(&self.num.scale(&c)).serialize(s)
        } else {
            let mut map = s.serialize_map(Some(2))?;
            map.serialize_entry("num", &PolyTerms(&self.num))?;
            map.serialize_entry("den", &PolyTerms(&self.den))?;
            map.end()
        }
    }
}
