//! Two-phase tableau simplex with Bland's rule.
//!
//! Problems here are tiny (a handful of blow-up weights), so the dense
//! tableau is rebuilt freely. Bland's rule guarantees termination in exact
//! arithmetic.

use crate::linalg::Matrix;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

struct Tableau<S> {
    rows: Matrix<S>, // each row: coefficients then rhs
    basis: Vec<usize>,
}

impl<S: Field> Tableau<S> {
    fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = S::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations for `max cost·x` over the columns in `allowed`.
    fn optimize(&mut self, cost: &[S], allowed: &[bool]) -> bool {
        loop {
            let w = self.width();
            let entering = (0..w).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| {
                        acc - cost[b].clone() * row[j].clone()
                    });
                reduced.is_positive_strict()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive_strict() {
                    continue;
                }
                let ratio = row[w].clone() / row[c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize<S: Field>(c: &[S], a: &Matrix<S>, b: &[S]) -> LpOutcome<S> {
    let n = c.len();
    let m = a.len();
    // phase I: artificial variable per row, rhs made nonnegative
    let mut rows: Matrix<S> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = *bi < S::zero();
        let mut r: Vec<S> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { S::one() } else { S::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
    };
    let mut phase1_cost = vec![S::zero(); n + m];
    for x in phase1_cost.iter_mut().skip(n) {
        *x = -S::one();
    }
    let all = vec![true; n + m];
    t.optimize(&phase1_cost, &all);
    let infeasibility = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &b)| b >= n)
        .fold(S::zero(), |acc, (row, _)| acc + row[n + m].clone());
    if infeasibility.is_positive_strict() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_negligible()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| S::zero()));
    let mut allowed = vec![true; n];
    allowed.extend((0..m).map(|_| false));
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![S::zero(); n];
    for (row, &bvar) in t.rows.iter().zip(&t.basis) {
        if bvar < n {
            x[bvar] = row[n + m].clone();
        }
    }
    let value = c
        .iter()
        .zip(&x)
        .fold(S::zero(), |acc, (ci, xi)| acc + ci.clone() * xi.clone());
    LpOutcome::Optimal { x, value }
}
