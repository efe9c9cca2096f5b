//! The three admissibility conditions on blow-up points and weights, each
//! returned with an exact certificate.

use serde::Serialize;

use super::algebra::{moment_against, GroupSpec, LieSplit};
use super::gaussian::Gaussian;
use super::hermitian::{hermitian_dot, ProjPoint};
use crate::error::ActionError;
use crate::linalg::{mat_mul, nullspace, rank, rank_witness, Matrix};
use crate::lp::{maximize, LpOutcome};
use crate::scalar::Field;

/// Partition of the points into `K`-orbits: `class[j]` is the orbit index of
/// point `j`, numbered in order of first appearance.
pub fn orbit_classes<S: Field>(points: &[ProjPoint<S>], g: &GroupSpec) -> Vec<usize> {
    let n = points.first().map_or(0, |p| p.len());
    let group = g.permutation_closure(n);
    let mut class = vec![usize::MAX; points.len()];
    let mut next = 0;
    for j in 0..points.len() {
        if class[j] != usize::MAX {
            continue;
        }
        class[j] = next;
        for s in &group {
            let image = points[j].permuted(s);
            for k in (j + 1)..points.len() {
                if class[k] == usize::MAX && points[k] == image {
                    class[k] = next;
                }
            }
        }
        next += 1;
    }
    class
}

/// `M[β][j] = ⟨ξ(p_j), X″_β⟩`.
pub fn moment_matrix<S: Field>(
    points: &[ProjPoint<S>],
    split: &LieSplit<S>,
) -> Result<Matrix<S>, ActionError> {
    let cols: Vec<Vec<S>> = points
        .iter()
        .map(|p| moment_against(p, &split.h_doubleprime_basis))
        .collect::<Result<_, _>>()?;
    Ok((0..split.h_doubleprime_basis.len())
        .map(|b| cols.iter().map(|c| c[b].clone()).collect())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    /// A solution with every weight strictly positive exists.
    Feasible,
    /// Nonnegative solutions exist but every one has a zero weight.
    DegenerateFeasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionI<S> {
    pub status: Feasibility,
    /// Orbit index of each point.
    pub orbit_classes: Vec<usize>,
    /// Positive weights per point (primitive integral when exact), or the
    /// nonnegative witness in the degenerate case.
    pub weights: Option<Vec<S>>,
    /// Basis of the solution space of the linear system, per point, after
    /// imposing equal weights on each orbit.
    pub kernel: Vec<Vec<S>>,
    /// `y` with `yᵀM ≥ 0` on orbit sums and total 1: rules out strictly
    /// positive solutions.
    pub certificate: Option<Vec<S>>,
}

impl<S: Field> ConditionI<S> {
    pub fn holds(&self) -> bool {
        self.status == Feasibility::Feasible
    }
}

/// Searches for `a_j > 0`, constant on `K`-orbits, with
/// `Σ_j a_j ⟨ξ(p_j), X″⟩ = 0` for all `X″ ∈ h″`.
///
/// `fixed[j] = Some(w)` pins the weight of point `j`; when nothing is pinned
/// the weights are normalised to sum to one.
pub fn check_condition_i<S: Field>(
    points: &[ProjPoint<S>],
    split: &LieSplit<S>,
    g: &GroupSpec,
    fixed: &[Option<S>],
) -> Result<ConditionI<S>, ActionError> {
    if !fixed.is_empty() && fixed.len() != points.len() {
        return Err(ActionError::WeightCount {
            weights: fixed.len(),
            points: points.len(),
        });
    }
    let classes = orbit_classes(points, g);
    let k = classes.iter().copied().max().map_or(0, |c| c + 1);
    let p_mat: Matrix<S> = classes
        .iter()
        .map(|&c| (0..k).map(|i| if i == c { S::one() } else { S::zero() }).collect())
        .collect();
    let m = moment_matrix(points, split)?;
    let mt: Matrix<S> = if m.is_empty() { Vec::new() } else { mat_mul(&m, &p_mat) };
    let expand = |b: &[S]| -> Vec<S> { classes.iter().map(|&c| b[c].clone()).collect() };
    let kernel: Vec<Vec<S>> = nullspace(&mt, k).iter().map(|b| expand(b)).collect();

    let mut pinned: Vec<Option<S>> = vec![None; k];
    for (j, w) in fixed.iter().enumerate() {
        let Some(w) = w else { continue };
        let c = classes[j];
        match &pinned[c] {
            Some(prev) if prev != w => {
                return Ok(ConditionI {
                    status: Feasibility::Infeasible,
                    orbit_classes: classes,
                    weights: None,
                    kernel,
                    certificate: None,
                })
            }
            _ => pinned[c] = Some(w.clone()),
        }
    }
    let (status, b) = positive_solution(&mt, &pinned);
    let certificate = match status {
        Feasibility::Feasible => None,
        _ => stiemke_certificate(&mt),
    };
    let weights = b.map(|b| {
        let a = expand(&b);
        if pinned.iter().all(|x| x.is_none()) {
            S::primitive_direction(&a)
        } else {
            a
        }
    });
    Ok(ConditionI {
        status,
        orbit_classes: classes,
        weights,
        kernel,
        certificate,
    })
}

/// Exact LP: maximise `t` subject to `M b = 0`, `b ≥ t`, plus either
/// `Σ b = 1` or the pinned values (with `t ≤ 1`).
fn positive_solution<S: Field>(mt: &Matrix<S>, pinned: &[Option<S>]) -> (Feasibility, Option<Vec<S>>) {
    let k = pinned.len();
    if k == 0 {
        return (Feasibility::Infeasible, None);
    }
    let any_pinned = pinned.iter().any(|x| x.is_some());
    // variables: b (k), t, s (k), and u (cap slack) when pinned
    let nvar = 2 * k + 1 + usize::from(any_pinned);
    let t_col = k;
    let mut a: Matrix<S> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();
    for row in mt {
        let mut r = vec![S::zero(); nvar];
        r[..k].clone_from_slice(row);
        a.push(r);
        rhs.push(S::zero());
    }
    for j in 0..k {
        let mut r = vec![S::zero(); nvar];
        r[j] = S::one();
        r[t_col] = -S::one();
        r[k + 1 + j] = -S::one();
        a.push(r);
        rhs.push(S::zero());
    }
    if any_pinned {
        for (j, w) in pinned.iter().enumerate() {
            if let Some(w) = w {
                let mut r = vec![S::zero(); nvar];
                r[j] = S::one();
                a.push(r);
                rhs.push(w.clone());
            }
        }
        let mut r = vec![S::zero(); nvar];
        r[t_col] = S::one();
        r[nvar - 1] = S::one();
        a.push(r);
        rhs.push(S::one());
    } else {
        let mut r = vec![S::zero(); nvar];
        for x in r.iter_mut().take(k) {
            *x = S::one();
        }
        a.push(r);
        rhs.push(S::one());
    }
    let mut cost = vec![S::zero(); nvar];
    cost[t_col] = S::one();
    match maximize(&cost, &a, &rhs) {
        LpOutcome::Optimal { x, value } => {
            let b = x[..k].to_vec();
            if value.is_positive_strict() {
                (Feasibility::Feasible, Some(b))
            } else {
                (Feasibility::DegenerateFeasible, Some(b))
            }
        }
        LpOutcome::Infeasible | LpOutcome::Unbounded => (Feasibility::Infeasible, None),
    }
}

/// `y` with `(yᵀM)_j ≥ 0` and `Σ_j (yᵀM)_j = 1`.
fn stiemke_certificate<S: Field>(mt: &Matrix<S>) -> Option<Vec<S>> {
    let r = mt.len();
    let k = mt.first().map_or(0, |row| row.len());
    if r == 0 || k == 0 {
        return None;
    }
    // variables: y⁺ (r), y⁻ (r), u (k)
    let nvar = 2 * r + k;
    let mut a: Matrix<S> = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..k {
        let mut row = vec![S::zero(); nvar];
        for b in 0..r {
            row[b] = mt[b][j].clone();
            row[r + b] = -mt[b][j].clone();
        }
        row[2 * r + j] = -S::one();
        a.push(row);
        rhs.push(S::zero());
    }
    let mut row = vec![S::zero(); nvar];
    for x in row.iter_mut().skip(2 * r) {
        *x = S::one();
    }
    a.push(row);
    rhs.push(S::one());
    match maximize(&vec![S::zero(); nvar], &a, &rhs) {
        LpOutcome::Optimal { x, .. } => {
            Some((0..r).map(|b| x[b].clone() - x[r + b].clone()).collect())
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionII<S> {
    pub holds: bool,
    pub rank: usize,
    pub required: usize,
    /// Rows (h″ directions), columns (points) and value of a nonzero maximal minor.
    pub witness: Option<(Vec<usize>, Vec<usize>, S)>,
}

/// The moment images of the points, projected to `h″*`, span `h″*`.
pub fn check_condition_ii<S: Field>(
    points: &[ProjPoint<S>],
    split: &LieSplit<S>,
) -> Result<ConditionII<S>, ActionError> {
    let m = moment_matrix(points, split)?;
    let required = split.h_doubleprime_basis.len();
    let r = if m.is_empty() { 0 } else { rank(&m) };
    Ok(ConditionII {
        holds: r == required,
        rank: r,
        required,
        witness: if m.is_empty() { None } else { rank_witness(&m) },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionIII<S> {
    pub holds: bool,
    /// Coefficients over the h″ basis of a field vanishing at every point.
    pub vanishing_field: Option<Vec<S>>,
}

/// No nonzero `X ∈ h″` vanishes at all the points. The field of `A` vanishes
/// at `p` iff `Ap − (p*Ap/p*p)·p = 0`.
pub fn check_condition_iii<S: Field>(
    points: &[ProjPoint<S>],
    split: &LieSplit<S>,
) -> Result<ConditionIII<S>, ActionError> {
    let basis = &split.h_doubleprime_basis;
    if basis.is_empty() {
        return Ok(ConditionIII {
            holds: true,
            vanishing_field: None,
        });
    }
    let mut rows: Matrix<S> = Vec::new();
    let residuals: Vec<Vec<Vec<Gaussian<S>>>> = basis
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|p| {
                    let v = p.coords();
                    let av = a.apply(v);
                    let lambda = hermitian_dot(v, &av).re / p.norm_sqr();
                    av.into_iter()
                        .zip(v)
                        .map(|(x, y)| x - y.scale(&lambda))
                        .collect()
                })
                .collect()
        })
        .collect();
    for (pj, p) in points.iter().enumerate() {
        for c in 0..p.len() {
            rows.push(residuals.iter().map(|r| r[pj][c].re.clone()).collect());
            rows.push(residuals.iter().map(|r| r[pj][c].im.clone()).collect());
        }
    }
    let ker = nullspace(&rows, basis.len());
    Ok(ConditionIII {
        holds: ker.is_empty(),
        vanishing_field: ker.into_iter().next().map(|v| S::primitive_direction(&v)),
    })
}

/// `Σ_j a_j ξ(p_j)` over all of `h`. Nonzero means the resulting extremal
/// metrics cannot have constant scalar curvature.
pub fn moment_sum<S: Field>(
    points: &[ProjPoint<S>],
    weights: &[S],
    split: &LieSplit<S>,
) -> Result<Vec<S>, ActionError> {
    if points.len() != weights.len() {
        return Err(ActionError::WeightCount {
            weights: weights.len(),
            points: points.len(),
        });
    }
    let mut total = vec![S::zero(); split.h_basis.len()];
    for (p, w) in points.iter().zip(weights) {
        for (acc, x) in total.iter_mut().zip(moment_against(p, &split.h_basis)?) {
            *acc = acc.clone() + w.clone() * x;
        }
    }
    Ok(total)
}

/// True iff the metrics are forced to have nonconstant scalar curvature.
pub fn csc_predictor<S: Field>(
    points: &[ProjPoint<S>],
    weights: &[S],
    split: &LieSplit<S>,
) -> Result<bool, ActionError> {
    Ok(moment_sum(points, weights, split)?
        .iter()
        .any(|x| !x.is_negligible()))
}
