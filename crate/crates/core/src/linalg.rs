//! Dense Gaussian elimination over a [`Field`].
//!
//! Everything here is exact when instantiated with rationals; with `f64` the
//! pivot test falls back to [`Field::is_negligible`].

use crate::scalar::Field;

pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form. Returns the reduced matrix and pivot columns.
pub fn rref<S: Field>(mut a: Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // exact arithmetic: first nonzero; floats: largest magnitude
        let pick = if S::is_exact() {
            (r..rows).find(|&i| !a[i][c].is_negligible())
        } else {
            (r..rows)
                .filter(|&i| !a[i][c].is_negligible())
                .max_by(|&i, &j| {
                    a[i][c]
                        .abs_val()
                        .partial_cmp(&a[j][c].abs_val())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(p) = pick else { continue };
        a.swap(r, p);
        let inv = S::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<S: Field>(a: &Matrix<S>) -> usize {
    rref(a.clone()).1.len()
}

/// Basis of the right null space `{x : A x = 0}`, one vector per free column.
pub fn nullspace<S: Field>(a: &Matrix<S>, cols: usize) -> Vec<Vec<S>> {
    if a.is_empty() {
        return (0..cols)
            .map(|k| (0..cols).map(|j| if j == k { S::one() } else { S::zero() }).collect())
            .collect();
    }
    let (r, pivots) = rref(a.clone());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn determinant<S: Field>(a: &Matrix<S>) -> S {
    let n = a.len();
    let mut m = a.clone();
    let mut det = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_negligible()) else {
            return S::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det = det * piv.clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / piv.clone();
            for j in c..n {
                let v = m[c][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
    }
    det
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve<S: Field>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let aug: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..n).map(|i| r[i][n].clone()).collect())
}

pub fn inverse<S: Field>(a: &Matrix<S>) -> Option<Matrix<S>> {
    let n = a.len();
    let aug: Matrix<S> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn transpose<S: Clone>(a: &Matrix<S>) -> Matrix<S> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<S: Field>(a: &Matrix<S>, x: &[S]) -> Vec<S> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn dot<S: Field>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix by symmetric
/// elimination (congruence preserves the signature).
pub fn inertia<S: Field>(a: &Matrix<S>) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&k) = active.iter().find(|&&k| !m[k][k].is_negligible()) {
            let d = m[k][k].clone();
            if d > S::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&x| x != k);
            for &i in &active {
                let f = m[i][k].clone() / d.clone();
                for &j in &active {
                    let v = f.clone() * m[k][j].clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
            continue;
        }
        // zero diagonal: mix in an off-diagonal partner
        let pair = active.iter().find_map(|&i| {
            active
                .iter()
                .find(|&&j| j != i && !m[i][j].is_negligible())
                .map(|&j| (i, j))
        });
        match pair {
            Some((i, j)) => {
                // row/col i += row/col j, a congruence that makes m[i][i] = 2 m[i][j] + m[j][j]
                for &c in &active {
                    let v = m[j][c].clone();
                    m[i][c] = m[i][c].clone() + v;
                }
                for &r in &active {
                    let v = m[r][j].clone();
                    m[r][i] = m[r][i].clone() + v;
                }
            }
            None => {
                zero += active.len();
                active.clear();
            }
        }
    }
    (pos, neg, zero)
}

/// Basis of the intersection of two subspaces of `S^n` given by spanning sets.
pub fn intersect_spans<S: Field>(a: &[Vec<S>], b: &[Vec<S>], n: usize) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve sum x_i a_i - sum y_j b_j = 0
    let cols = a.len() + b.len();
    let system: Matrix<S> = (0..n)
        .map(|row| {
            a.iter()
                .map(|v| v[row].clone())
                .chain(b.iter().map(|v| -v[row].clone()))
                .collect()
        })
        .collect();
    let kernel = nullspace(&system, cols);
    let vectors: Vec<Vec<S>> = kernel
        .iter()
        .map(|coef| {
            (0..n)
                .map(|row| {
                    a.iter()
                        .zip(coef)
                        .fold(S::zero(), |acc, (v, c)| acc + v[row].clone() * c.clone())
                })
                .collect()
        })
        .collect();
    independent_subset(&vectors)
}

/// Greedy maximal linearly independent subset, preserving order.
pub fn independent_subset<S: Field>(vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut kept: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// A nonzero maximal minor witnessing `rank(a) = r`: row and column indices
/// and the minor's value.
pub fn rank_witness<S: Field>(a: &Matrix<S>) -> Option<(Vec<usize>, Vec<usize>, S)> {
    let r = rank(a);
    if r == 0 {
        return None;
    }
    let rows = independent_rows(a);
    let sub: Matrix<S> = rows.iter().map(|&i| a[i].clone()).collect();
    let cols = independent_rows(&transpose(&sub));
    let minor: Matrix<S> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
        .collect();
    let det = determinant(&minor);
    Some((rows, cols, det))
}

fn independent_rows<S: Field>(a: &Matrix<S>) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..a.len() {
        let mut trial: Matrix<S> = kept.iter().map(|&k| a[k].clone()).collect();
        trial.push(a[i].clone());
        if rank(&trial) == trial.len() {
            kept.push(i);
        }
    }
    kept
}
