//! The invariant algebra `h`, its splitting `h′ ⊕ h″`, and moment images.

use serde::{Deserialize, Serialize};

use super::gaussian::Gaussian;
use super::hermitian::{fs_potential, l2_pairing, Hermitian, ProjPoint};
use crate::error::ActionError;
use crate::linalg::{intersect_spans, nullspace, rank, Matrix};
use crate::scalar::Field;

/// A compact group `K = K_0 ⋊ A` acting linearly on `ℂ^{m+1}`: `K_0` is the
/// torus generated by the circle weight vectors, `A` the group generated by
/// coordinate permutations.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub circle_weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub permutations: Vec<Vec<usize>>,
}

impl GroupSpec {
    /// Full diagonal torus of `ℙ^m`.
    pub fn full_torus(m: usize) -> Self {
        GroupSpec {
            circle_weights: (0..m)
                .map(|j| (0..=m).map(|k| i64::from(j == k)).collect())
                .collect(),
            permutations: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn validate(&self, n: usize) -> Result<(), ActionError> {
        for w in &self.circle_weights {
            if w.len() != n {
                return Err(ActionError::BadWeights {
                    expected: n,
                    got: w.len(),
                });
            }
        }
        for s in &self.permutations {
            let mut seen = vec![false; n];
            let ok = s.len() == n
                && s.iter().all(|&t| t < n && !std::mem::replace(&mut seen[t], true));
            if !ok {
                return Err(ActionError::BadPermutation(s.clone(), n));
            }
        }
        Ok(())
    }

    /// Traceless diagonal generators of `K_0`.
    pub fn torus_generators<S: Field>(&self) -> Vec<Hermitian<S>> {
        self.circle_weights
            .iter()
            .map(|w| {
                let d: Vec<S> = w.iter().map(|&x| S::from_i64(x)).collect();
                Hermitian::diagonal(&d).traceless_part()
            })
            .collect()
    }

    /// Every element of the permutation group, by breadth-first closure.
    pub fn permutation_closure(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut frontier = out.clone();
        while let Some(g) = frontier.pop() {
            for s in &self.permutations {
                let h: Vec<usize> = (0..n).map(|j| s[g[j]]).collect();
                if !out.contains(&h) {
                    out.push(h.clone());
                    frontier.push(h);
                }
            }
        }
        out.sort();
        out
    }

    /// Whether `p` is fixed by `K_0` (all its nonzero coordinates share every weight).
    pub fn fixes<S: Field>(&self, p: &ProjPoint<S>) -> bool {
        self.point_weight(p).is_some()
    }

    fn point_weight<S: Field>(&self, p: &ProjPoint<S>) -> Option<Vec<i64>> {
        let support: Vec<usize> = (0..p.len()).filter(|&j| !p.coords()[j].is_zero()).collect();
        let mut out = Vec::with_capacity(self.circle_weights.len());
        for w in &self.circle_weights {
            let x = w[support[0]];
            if support.iter().any(|&j| w[j] != x) {
                return None;
            }
            out.push(x);
        }
        Some(out)
    }
}

/// `Ad(P_σ) A = P_σ A P_σ^{-1}` with `(P_σ z)_{σ(j)} = z_j`.
fn permute_conjugate<S: Field>(a: &Hermitian<S>, sigma: &[usize]) -> Hermitian<S> {
    let n = a.size();
    let mut rows = vec![vec![Gaussian::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            rows[sigma[j]][sigma[k]] = a.entry(j, k).clone();
        }
    }
    Hermitian::new(rows).expect("conjugate of a Hermitian matrix")
}

/// `i[D, A]`, Hermitian whenever `D` and `A` are.
fn commutator<S: Field>(d: &Hermitian<S>, a: &Hermitian<S>) -> Hermitian<S> {
    let n = a.size();
    let mut rows = vec![vec![Gaussian::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let c = (d.entry(j, j).clone() - d.entry(k, k).clone()) * a.entry(j, k).clone();
            rows[j][k] = Gaussian::i() * c;
        }
    }
    Hermitian::new(rows).expect("i[D, A] is Hermitian")
}

/// Basis of `h`: traceless Hermitian matrices commuting with `K_0` and fixed
/// by conjugation with the permutation part. Each element is scaled to a
/// primitive integer coordinate vector.
pub fn invariant_algebra<S: Field>(
    g: &GroupSpec,
    m: usize,
) -> Result<Vec<Hermitian<S>>, ActionError> {
    let n = m + 1;
    g.validate(n)?;
    let dim = n * n;
    let basis: Vec<Hermitian<S>> = (0..dim)
        .map(|i| {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            Hermitian::from_real_coords(n, &e)
        })
        .collect();
    let mut constraints: Matrix<S> = Vec::new();
    let mut push_map = |f: &dyn Fn(&Hermitian<S>) -> Hermitian<S>| {
        let images: Vec<Vec<S>> = basis.iter().map(|b| f(b).real_coords()).collect();
        for r in 0..dim {
            constraints.push(images.iter().map(|col| col[r].clone()).collect());
        }
    };
    for d in g.torus_generators::<S>() {
        push_map(&|a| commutator(&d, a));
    }
    for s in &g.permutations {
        push_map(&|a| permute_conjugate(a, s).sub(a));
    }
    constraints.push(basis.iter().map(|b| b.trace()).collect());
    Ok(nullspace(&constraints, dim)
        .into_iter()
        .map(|v| Hermitian::from_real_coords(n, &S::primitive_direction(&v)))
        .collect())
}

/// `h = h′ ⊕ h″` with the `L²` Gram matrix in the adapted basis
/// (`h′` first, then `h″`).
#[derive(Debug, Clone, PartialEq)]
pub struct LieSplit<S> {
    pub h_basis: Vec<Hermitian<S>>,
    pub h_prime_basis: Vec<Hermitian<S>>,
    pub h_doubleprime_basis: Vec<Hermitian<S>>,
    pub gram: Matrix<S>,
}

impl<S: Field> LieSplit<S> {
    pub fn dim(&self) -> usize {
        self.h_basis.len()
    }

    /// Coordinates of `a ∈ h` in the adapted basis.
    pub fn coordinates(&self, a: &Hermitian<S>) -> Option<Vec<S>> {
        let dim = self.h_basis.len();
        let rows = a.real_coords().len();
        let mut aug: Matrix<S> = (0..rows)
            .map(|r| {
                let mut row: Vec<S> = self.h_basis.iter().map(|b| b.real_coords()[r].clone()).collect();
                row.push(a.real_coords()[r].clone());
                row
            })
            .collect();
        let (red, pivots) = crate::linalg::rref(std::mem::take(&mut aug));
        if pivots.contains(&dim) {
            return None;
        }
        let mut x = vec![S::zero(); dim];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red[row][dim].clone();
        }
        Some(x)
    }

    /// `L²`-orthogonal projection onto `h′` (first) and `h″` (second).
    pub fn project(&self, a: &Hermitian<S>) -> Option<(Hermitian<S>, Hermitian<S>)> {
        let x = self.coordinates(a)?;
        let k = self.h_prime_basis.len();
        let n = a.size();
        let combine = |range: std::ops::Range<usize>| {
            range.fold(Hermitian::zero(n), |acc, i| acc.add(&self.h_basis[i].scale(&x[i])))
        };
        Some((combine(0..k), combine(k..self.h_basis.len())))
    }
}

/// `h′ = h ∩ Lie(K_0)`, `h″` its `L²`-orthogonal complement inside `h`.
pub fn split_algebra<S: Field>(
    h_basis: &[Hermitian<S>],
    g: &GroupSpec,
) -> Result<LieSplit<S>, ActionError> {
    let Some(first) = h_basis.first() else {
        return Ok(LieSplit {
            h_basis: Vec::new(),
            h_prime_basis: Vec::new(),
            h_doubleprime_basis: Vec::new(),
            gram: Vec::new(),
        });
    };
    let n = first.size();
    g.validate(n)?;
    let coords: Vec<Vec<S>> = h_basis.iter().map(|b| b.real_coords()).collect();
    let torus: Vec<Vec<S>> = g
        .torus_generators::<S>()
        .iter()
        .map(|t| t.real_coords())
        .collect();
    let h_prime: Vec<Hermitian<S>> = intersect_spans(&coords, &torus, n * n)
        .into_iter()
        .map(|v| Hermitian::from_real_coords(n, &S::primitive_direction(&v)))
        .collect();
    // c ∈ S^{dim h} with Σ c_i ⟨h_i, h′_j⟩ = 0 for every j
    let pairing: Matrix<S> = h_prime
        .iter()
        .map(|hp| h_basis.iter().map(|b| l2_pairing(b, hp)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let complement = if h_prime.is_empty() {
        nullspace(&Vec::new(), h_basis.len())
    } else {
        nullspace(&pairing, h_basis.len())
    };
    let h_pp: Vec<Hermitian<S>> = complement
        .iter()
        .map(|c| {
            let a = h_basis
                .iter()
                .zip(c)
                .fold(Hermitian::zero(n), |acc, (b, ci)| acc.add(&b.scale(ci)));
            Hermitian::from_real_coords(n, &S::primitive_direction(&a.real_coords()))
        })
        .collect();
    if h_prime.len() + h_pp.len() != h_basis.len() {
        return Err(ActionError::SingularGram);
    }
    let adapted: Vec<Hermitian<S>> = h_prime.iter().chain(&h_pp).cloned().collect();
    let gram: Matrix<S> = adapted
        .iter()
        .map(|a| adapted.iter().map(|b| l2_pairing(a, b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if rank(&gram) != adapted.len() {
        return Err(ActionError::SingularGram);
    }
    Ok(LieSplit {
        h_basis: adapted,
        h_prime_basis: h_prime,
        h_doubleprime_basis: h_pp,
        gram,
    })
}

/// Pairings `⟨ξ(p), X_β⟩` against a list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<S> {
    pub values: Vec<S>,
    /// False when `p` is not fixed by `K_0`; values are still computed.
    pub fixed: bool,
}

pub fn moment_against<S: Field>(
    p: &ProjPoint<S>,
    basis: &[Hermitian<S>],
) -> Result<Vec<S>, ActionError> {
    basis.iter().map(|a| fs_potential(a, p)).collect()
}

/// Moment image of `p` in the adapted basis of `h`.
pub fn moment_at<S: Field>(
    p: &ProjPoint<S>,
    split: &LieSplit<S>,
    g: &GroupSpec,
) -> Result<MomentVector<S>, ActionError> {
    Ok(MomentVector {
        values: moment_against(p, &split.h_basis)?,
        fixed: g.fixes(p),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointTorus {
    pub dim: usize,
    pub forces_h_pp_zero: bool,
    /// One row per circle factor: weights on the tangent directions `e_j`.
    pub tangent_weights: Vec<Vec<i64>>,
}

/// Rank of the isotropy weights of `K_0` on `T_pℙ^m`.
pub fn torus_dim_at_fixed_point<S: Field>(
    g: &GroupSpec,
    p: &ProjPoint<S>,
    m: usize,
) -> Result<FixedPointTorus, ActionError> {
    g.validate(m + 1)?;
    if p.len() != m + 1 {
        return Err(ActionError::DimensionMismatch {
            expected: m + 1,
            got: p.len(),
        });
    }
    let wp = g
        .point_weight(p)
        .ok_or_else(|| ActionError::NotFixed(format!("{:?}", p.coords())))?;
    let tangent_weights: Vec<Vec<i64>> = g
        .circle_weights
        .iter()
        .zip(&wp)
        .map(|(w, &x)| w.iter().map(|&wj| wj - x).collect())
        .collect();
    let as_field: Matrix<S> = tangent_weights
        .iter()
        .map(|r| r.iter().map(|&x| S::from_i64(x)).collect())
        .collect();
    let dim = if as_field.is_empty() { 0 } else { rank(&as_field) };
    Ok(FixedPointTorus {
        dim,
        forces_h_pp_zero: dim == m,
        tangent_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::scalar::{int, Rational};

    fn span_rank(v: &[Hermitian<Rational>]) -> usize {
        rank(&v.iter().map(|a| a.real_coords()).collect())
    }

    fn sporadic_group() -> GroupSpec {
        GroupSpec {
            circle_weights: vec![vec![-2, 1, 1]],
            permutations: vec![vec![0, 2, 1]],
        }
    }

    #[test]
    fn algebra_dimensions() {
        assert_eq!(invariant_algebra::<Rational>(&GroupSpec::full_torus(2), 2).unwrap().len(), 2);
        assert_eq!(invariant_algebra::<Rational>(&GroupSpec::trivial(), 1).unwrap().len(), 3);
        assert_eq!(invariant_algebra::<Rational>(&GroupSpec::trivial(), 2).unwrap().len(), 8);
        let h = invariant_algebra::<Rational>(&sporadic_group(), 2).unwrap();
        assert_eq!(h.len(), 2);
        let mut expect = h.clone();
        expect.push(Hermitian::diagonal(&[int(2), int(-1), int(-1)]));
        expect.push(Hermitian::symmetric_unit(3, 1, 2));
        assert_eq!(span_rank(&expect), 2);
    }

    #[test]
    fn splits() {
        let g = GroupSpec::full_torus(2);
        let s = split_algebra(&invariant_algebra::<Rational>(&g, 2).unwrap(), &g).unwrap();
        assert_eq!((s.h_prime_basis.len(), s.h_doubleprime_basis.len()), (2, 0));

        let g = sporadic_group();
        let s = split_algebra(&invariant_algebra::<Rational>(&g, 2).unwrap(), &g).unwrap();
        assert_eq!(s.h_prime_basis.len(), 1);
        assert_eq!(s.h_doubleprime_basis.len(), 1);
        let hpp = &s.h_doubleprime_basis[0];
        let e = Hermitian::<Rational>::symmetric_unit(3, 1, 2);
        assert_eq!(span_rank(&[hpp.clone(), e]), 1);
        assert_eq!(s.gram[0][1], int(0));

        let g = GroupSpec::trivial();
        let s = split_algebra(&invariant_algebra::<Rational>(&g, 2).unwrap(), &g).unwrap();
        assert_eq!((s.h_prime_basis.len(), s.h_doubleprime_basis.len()), (0, 8));
    }

    #[test]
    fn fixed_point_torus() {
        let p = ProjPoint::<Rational>::coordinate(3, 0);
        let t = torus_dim_at_fixed_point(&GroupSpec::full_torus(2), &p, 2).unwrap();
        assert_eq!((t.dim, t.forces_h_pp_zero), (2, true));
        let t = torus_dim_at_fixed_point(&sporadic_group(), &p, 2).unwrap();
        assert_eq!((t.dim, t.forces_h_pp_zero), (1, false));
        assert_eq!(t.tangent_weights, vec![vec![0, 3, 3]]);
        let t = torus_dim_at_fixed_point(&GroupSpec::trivial(), &p, 2).unwrap();
        assert_eq!((t.dim, t.forces_h_pp_zero), (0, false));
        let q = ProjPoint::<Rational>::new(vec![Gaussian::one(), Gaussian::one(), Gaussian::zero()]).unwrap();
        assert!(torus_dim_at_fixed_point(&sporadic_group(), &q, 2).is_err());
    }

    #[test]
    fn permutation_closure_of_cycle() {
        let g = GroupSpec {
            circle_weights: vec![],
            permutations: vec![vec![1, 2, 0]],
        };
        assert_eq!(g.permutation_closure(3).len(), 3);
        assert!(g.validate(3).is_ok());
        let bad = GroupSpec {
            circle_weights: vec![],
            permutations: vec![vec![0, 0, 1]],
        };
        assert!(bad.validate(3).is_err());
    }
}
