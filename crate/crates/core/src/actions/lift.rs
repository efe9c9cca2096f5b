//! Zeros of the lift of a vector field to the exceptional divisor of `Bl_0 ℂ²`.
//!
//! For the linear jet `X¹ = a z¹ + b z²`, `X² = c z¹ + d z²`, the lifted field
//! on the divisor `{[1:λ]}` vanishes where `−cλ² + (a−d)λ + b = 0`; the chart
//! point `[0:1]` is the point at infinity.

use serde::Serialize;

use super::gaussian::Gaussian;
use crate::error::ActionError;
use crate::scalar::{Field, Rational};

/// `base + coeff·√radicand`, kept symbolic when `radicand` has no square
/// root in ℚ(i).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticRoot {
    pub base: Gaussian<Rational>,
    pub coeff: Gaussian<Rational>,
    pub radicand: Gaussian<Rational>,
}

impl QuadraticRoot {
    pub fn exact(z: Gaussian<Rational>) -> Self {
        QuadraticRoot {
            base: z,
            coeff: Gaussian::zero(),
            radicand: Gaussian::zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.coeff.is_zero() || self.radicand.is_zero()
    }

    /// Numerical value, principal branch of the square root.
    pub fn to_f64(&self) -> (f64, f64) {
        let (xr, xi) = self.radicand.to_f64();
        let r = xr.hypot(xi);
        let sr = ((r + xr) / 2.0).sqrt();
        let si = ((r - xr) / 2.0).sqrt().copysign(if xi == 0.0 { 1.0 } else { xi });
        let (cr, ci) = self.coeff.to_f64();
        let (br, bi) = self.base.to_f64();
        (br + cr * sr - ci * si, bi + cr * si + ci * sr)
    }

    pub fn describe(&self) -> String {
        if self.is_exact() {
            self.base.to_string()
        } else {
            format!("({}) + ({})*sqrt({})", self.base, self.coeff, self.radicand)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiftZeros {
    /// Finite roots (with multiplicity) and whether `[0:1]` is also a zero.
    Roots {
        roots: Vec<QuadraticRoot>,
        at_infinity: bool,
    },
    /// The jet is a nonzero multiple of the identity: the lift vanishes on the whole divisor.
    WholeDivisor,
}

impl Serialize for QuadraticRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.describe())
    }
}

pub fn lift_zero_on_divisor(
    a: &Gaussian<Rational>,
    b: &Gaussian<Rational>,
    c: &Gaussian<Rational>,
    d: &Gaussian<Rational>,
) -> Result<LiftZeros, ActionError> {
    if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
        return Err(ActionError::ZeroJet);
    }
    let amd = a.clone() - d.clone();
    if c.is_zero() {
        if amd.is_zero() {
            if b.is_zero() {
                return Ok(LiftZeros::WholeDivisor);
            }
            return Ok(LiftZeros::Roots {
                roots: Vec::new(),
                at_infinity: true,
            });
        }
        return Ok(LiftZeros::Roots {
            roots: vec![QuadraticRoot::exact(-b.clone() / amd)],
            at_infinity: true,
        });
    }
    let four = Gaussian::real(Rational::from_i64(4));
    let disc = amd.clone() * amd.clone() + four * b.clone() * c.clone();
    let two_c = Gaussian::real(Rational::from_i64(2)) * c.clone();
    let base = amd / two_c.clone();
    let roots = match disc.sqrt_exact() {
        Some(s) => {
            let half = s / two_c;
            vec![
                QuadraticRoot::exact(base.clone() + half.clone()),
                QuadraticRoot::exact(base - half),
            ]
        }
        None => {
            let coeff = Gaussian::one() / two_c;
            vec![
                QuadraticRoot {
                    base: base.clone(),
                    coeff: coeff.clone(),
                    radicand: disc.clone(),
                },
                QuadraticRoot {
                    base,
                    coeff: -coeff,
                    radicand: disc,
                },
            ]
        }
    };
    Ok(LiftZeros::Roots {
        roots,
        at_infinity: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian<Rational> {
        Gaussian::from_ints(re, im)
    }

    fn residual(a: &Gaussian<Rational>, b: &Gaussian<Rational>, c: &Gaussian<Rational>, d: &Gaussian<Rational>, l: &Gaussian<Rational>) -> Gaussian<Rational> {
        -(c.clone() * l.clone() * l.clone()) + (a.clone() - d.clone()) * l.clone() + b.clone()
    }

    #[test]
    fn diagonal_jet() {
        let r = lift_zero_on_divisor(&g(1, 0), &g(0, 0), &g(0, 0), &g(2, 0)).unwrap();
        assert_eq!(
            r,
            LiftZeros::Roots {
                roots: vec![QuadraticRoot::exact(g(0, 0))],
                at_infinity: true
            }
        );
    }

    #[test]
    fn nilpotent_jets() {
        let r = lift_zero_on_divisor(&g(0, 0), &g(1, 0), &g(0, 0), &g(0, 0)).unwrap();
        assert_eq!(
            r,
            LiftZeros::Roots {
                roots: vec![],
                at_infinity: true
            }
        );
        let r = lift_zero_on_divisor(&g(0, 0), &g(0, 0), &g(1, 0), &g(0, 0)).unwrap();
        let LiftZeros::Roots { roots, at_infinity } = r else { panic!() };
        assert!(!at_infinity);
        assert_eq!(roots, vec![QuadraticRoot::exact(g(0, 0)); 2]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            lift_zero_on_divisor(&g(3, 0), &g(0, 0), &g(0, 0), &g(3, 0)).unwrap(),
            LiftZeros::WholeDivisor
        );
        assert!(matches!(
            lift_zero_on_divisor(&g(0, 0), &g(0, 0), &g(0, 0), &g(0, 0)),
            Err(ActionError::ZeroJet)
        ));
    }

    #[test]
    fn exact_and_surd_roots_solve_quadratic() {
        let (a, b, c, d) = (g(2, 1), g(3, -1), g(1, 1), g(0, 2));
        let LiftZeros::Roots { roots, .. } = lift_zero_on_divisor(&a, &b, &c, &d).unwrap() else { panic!() };
        for r in &roots {
            let (x, y) = r.to_f64();
            let (lr, li) = (x, y);
            // evaluate the quadratic in floating point
            let (cr, ci) = c.to_f64();
            let (amdr, amdi) = (a.clone() - d.clone()).to_f64();
            let (br, bi) = b.to_f64();
            let (l2r, l2i) = (lr * lr - li * li, 2.0 * lr * li);
            let re = -(cr * l2r - ci * l2i) + (amdr * lr - amdi * li) + br;
            let im = -(cr * l2i + ci * l2r) + (amdr * li + amdi * lr) + bi;
            assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "{re} {im}");
        }
        // perfect-square discriminant: roots 1 and 2 of −λ² + 3λ − 2
        let (a, b, c, d) = (g(3, 0), g(-2, 0), g(1, 0), g(0, 0));
        let LiftZeros::Roots { roots, .. } = lift_zero_on_divisor(&a, &b, &c, &d).unwrap() else { panic!() };
        for r in &roots {
            assert!(r.is_exact());
            assert!(residual(&a, &b, &c, &d, &r.base).is_zero());
        }
    }
}
