//! Hermitian generators of isometries of (ℙ^m, ω_FS) and their potentials.

use super::gaussian::Gaussian;
use crate::error::ActionError;
use crate::scalar::Field;

/// `(m+1)×(m+1)` Hermitian matrix `A`, the generator of `z ↦ e^{iAt} z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian<S> {
    entries: Vec<Vec<Gaussian<S>>>,
}

impl<S: Field> Hermitian<S> {
    pub fn new(entries: Vec<Vec<Gaussian<S>>>) -> Result<Self, ActionError> {
        let n = entries.len();
        for (j, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(ActionError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for k in 0..n {
                if !(row[k].clone() - entries[k][j].conj()).is_zero() {
                    return Err(ActionError::NotHermitian(j, k));
                }
            }
        }
        Ok(Hermitian { entries })
    }

    pub fn zero(n: usize) -> Self {
        Hermitian {
            entries: vec![vec![Gaussian::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zero(n);
        for j in 0..n {
            a.entries[j][j] = Gaussian::one();
        }
        a
    }

    pub fn diagonal(d: &[S]) -> Self {
        let mut a = Self::zero(d.len());
        for (j, x) in d.iter().enumerate() {
            a.entries[j][j] = Gaussian::real(x.clone());
        }
        a
    }

    /// `E_jk + E_kj`.
    pub fn symmetric_unit(n: usize, j: usize, k: usize) -> Self {
        let mut a = Self::zero(n);
        a.entries[j][k] = Gaussian::one();
        a.entries[k][j] = Gaussian::one();
        a
    }

    /// `i(E_jk − E_kj)`.
    pub fn antisymmetric_unit(n: usize, j: usize, k: usize) -> Self {
        let mut a = Self::zero(n);
        a.entries[j][k] = Gaussian::i();
        a.entries[k][j] = -Gaussian::i();
        a
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Gaussian<S>>] {
        &self.entries
    }

    pub fn entry(&self, j: usize, k: usize) -> &Gaussian<S> {
        &self.entries[j][k]
    }

    pub fn trace(&self) -> S {
        (0..self.size()).fold(S::zero(), |acc, j| acc + self.entries[j][j].re.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        Hermitian {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.scale(s)).collect())
                .collect(),
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(Gaussian<S>, Gaussian<S>) -> Gaussian<S>) -> Self {
        Hermitian {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a.clone(), b.clone())).collect())
                .collect(),
        }
    }

    /// `tr(AB)`, real for Hermitian `A`, `B`.
    pub fn trace_product(&self, other: &Self) -> S {
        let n = self.size();
        let mut acc = S::zero();
        for j in 0..n {
            for k in 0..n {
                acc = acc + (self.entries[j][k].clone() * other.entries[k][j].clone()).re;
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Gaussian<S>]) -> Vec<Gaussian<S>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Gaussian::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// `v* A v`.
    pub fn quadratic(&self, v: &[Gaussian<S>]) -> S {
        hermitian_dot(v, &self.apply(v)).re
    }

    /// `U A U*`.
    pub fn conjugate_by(&self, u: &[Vec<Gaussian<S>>]) -> Self {
        let n = self.size();
        let mul = |a: &[Vec<Gaussian<S>>], b: &[Vec<Gaussian<S>>]| -> Vec<Vec<Gaussian<S>>> {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            (0..n).fold(Gaussian::zero(), |acc, l| {
                                acc + a[j][l].clone() * b[l][k].clone()
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let u_star: Vec<Vec<Gaussian<S>>> =
            (0..n).map(|j| (0..n).map(|k| u[k][j].conj()).collect()).collect();
        Hermitian {
            entries: mul(&mul(u, &self.entries), &u_star),
        }
    }

    /// `A − tr(A)/(m+1)·I`: the traceless representative of the same field.
    pub fn traceless_part(&self) -> Self {
        let n = self.size();
        let shift = self.trace() / S::from_i64(n as i64);
        self.sub(&Self::identity(n).scale(&shift))
    }

    /// Coordinates in the real basis `E_jj`, then for `j < k` the pair
    /// `E_jk + E_kj`, `i(E_jk − E_kj)`.
    pub fn real_coords(&self) -> Vec<S> {
        let n = self.size();
        let mut out: Vec<S> = (0..n).map(|j| self.entries[j][j].re.clone()).collect();
        for j in 0..n {
            for k in (j + 1)..n {
                out.push(self.entries[j][k].re.clone());
                out.push(self.entries[j][k].im.clone());
            }
        }
        out
    }

    pub fn from_real_coords(n: usize, c: &[S]) -> Self {
        let mut a = Self::zero(n);
        for j in 0..n {
            a.entries[j][j] = Gaussian::real(c[j].clone());
        }
        let mut idx = n;
        for j in 0..n {
            for k in (j + 1)..n {
                let z = Gaussian::new(c[idx].clone(), c[idx + 1].clone());
                a.entries[k][j] = z.conj();
                a.entries[j][k] = z;
                idx += 2;
            }
        }
        a
    }
}

/// `Σ conj(a_j) b_j`.
pub fn hermitian_dot<S: Field>(a: &[Gaussian<S>], b: &[Gaussian<S>]) -> Gaussian<S> {
    a.iter()
        .zip(b)
        .fold(Gaussian::zero(), |acc, (x, y)| acc + x.conj() * y.clone())
}

/// A point of ℙ^m, stored with its first nonzero coordinate equal to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<S> {
    coords: Vec<Gaussian<S>>,
}

impl<S: Field> ProjPoint<S> {
    pub fn new(homogeneous: Vec<Gaussian<S>>) -> Result<Self, ActionError> {
        let lead = homogeneous
            .iter()
            .find(|z| !z.is_zero())
            .cloned()
            .ok_or(ActionError::ZeroPoint)?;
        Ok(ProjPoint {
            coords: homogeneous.into_iter().map(|z| z / lead.clone()).collect(),
        })
    }

    /// Coordinate point `[0:…:1:…:0]`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut coords = vec![Gaussian::zero(); n];
        coords[j] = Gaussian::one();
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Gaussian<S>] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm_sqr(&self) -> S {
        self.coords.iter().fold(S::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Permutes coordinates: the entry at `j` moves to `sigma[j]`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        let mut coords = vec![Gaussian::zero(); self.len()];
        for (j, &t) in sigma.iter().enumerate() {
            coords[t] = self.coords[j].clone();
        }
        ProjPoint::new(coords).expect("permutation keeps a nonzero coordinate")
    }
}

/// Mean-zero hamiltonian of `A` at `p`: `p*Ap/p*p − tr(A)/(m+1)`.
pub fn fs_potential<S: Field>(a: &Hermitian<S>, p: &ProjPoint<S>) -> Result<S, ActionError> {
    if a.size() != p.len() {
        return Err(ActionError::DimensionMismatch {
            expected: a.size(),
            got: p.len(),
        });
    }
    let n = S::from_i64(a.size() as i64);
    Ok(a.quadratic(p.coords()) / p.norm_sqr() - a.trace() / n)
}

/// L² pairing of the mean-zero potentials, divided by `Vol(ℙ^m)`:
/// `[tr A·tr B + tr(AB)]/((m+1)(m+2)) − tr A·tr B/(m+1)²`.
pub fn l2_pairing<S: Field>(a: &Hermitian<S>, b: &Hermitian<S>) -> Result<S, ActionError> {
    if a.size() != b.size() {
        return Err(ActionError::DimensionMismatch {
            expected: a.size(),
            got: b.size(),
        });
    }
    let n = S::from_i64(a.size() as i64);
    let tt = a.trace() * b.trace();
    Ok((tt.clone() + a.trace_product(b)) / (n.clone() * (n.clone() + S::one())) - tt / (n.clone() * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn pt(c: &[i64]) -> ProjPoint<Rational> {
        ProjPoint::new(c.iter().map(|&x| Gaussian::from_ints(x, 0)).collect()).unwrap()
    }

    #[test]
    fn potentials() {
        let id = Hermitian::<Rational>::identity(3);
        assert_eq!(fs_potential(&id, &pt(&[1, 2, 3])).unwrap(), int(0));
        let d = Hermitian::diagonal(&[int(2), int(-1), int(-1)]);
        assert_eq!(fs_potential(&d, &pt(&[1, 0, 0])).unwrap(), int(2));
        let x = Hermitian::<Rational>::symmetric_unit(3, 1, 2);
        assert_eq!(fs_potential(&x, &pt(&[0, 1, 1])).unwrap(), int(1));
    }

    #[test]
    fn pairings() {
        let id = Hermitian::<Rational>::identity(2);
        assert_eq!(l2_pairing(&id, &id).unwrap(), int(0));
        let z = Hermitian::diagonal(&[int(1), int(-1)]);
        assert_eq!(l2_pairing(&z, &z).unwrap(), rat(1, 3));
        let a = Hermitian::diagonal(&[int(1), int(-1), int(0)]);
        let b = Hermitian::<Rational>::symmetric_unit(3, 1, 2);
        assert_eq!(l2_pairing(&a, &b).unwrap(), int(0));
        assert!(l2_pairing(&a, &z).is_err());
    }

    #[test]
    fn hermitian_check_and_coords() {
        let bad = vec![
            vec![Gaussian::from_ints(0, 0), Gaussian::from_ints(1, 1)],
            vec![Gaussian::from_ints(1, 1), Gaussian::from_ints(0, 0)],
        ];
        assert!(matches!(Hermitian::<Rational>::new(bad), Err(ActionError::NotHermitian(0, 1))));
        let a = Hermitian::<Rational>::antisymmetric_unit(3, 0, 2).add(&Hermitian::diagonal(&[
            int(1),
            int(2),
            int(3),
        ]));
        assert_eq!(Hermitian::from_real_coords(3, &a.real_coords()), a);
    }

    #[test]
    fn normalisation() {
        let p = ProjPoint::<Rational>::new(vec![
            Gaussian::zero(),
            Gaussian::from_ints(0, 2),
            Gaussian::from_ints(2, 2),
        ])
        .unwrap();
        assert_eq!(p.coords()[1], Gaussian::one());
        assert_eq!(p.coords()[2], Gaussian::from_ints(1, -1));
        assert!(ProjPoint::<Rational>::new(vec![Gaussian::zero(); 2]).is_err());
    }
}
