#![allow(dead_code)]

use std::time::Instant;

use kbl_core::actions::{Gaussian, Hermitian};
use kbl_core::Rational;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Prints one line per criterion and returns whether it passed within budget.
pub fn verdict(n: u32, what: &str, pass: bool, detail: &str, start: Instant, budget_s: f64) -> bool {
    let secs = start.elapsed().as_secs_f64();
    let ok = pass && secs < budget_s;
    println!(
        "criterion {n:>2} [{}] {what}: {detail} ({secs:.2} s, budget {budget_s} s)",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

/// Hermitian `n×n` matrix with small integer entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Hermitian<Rational> {
    let mut e = vec![vec![Gaussian::zero(); n]; n];
    for j in 0..n {
        e[j][j] = Gaussian::from_ints(rng.random_range(-3..=3), 0);
        for k in (j + 1)..n {
            let (a, b) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
            e[j][k] = Gaussian::from_ints(a, b);
            e[k][j] = Gaussian::from_ints(a, -b);
        }
    }
    Hermitian::new(e).expect("hermitian")
}

/// Running mean and variance.
#[derive(Default, Clone, Copy)]
pub struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Standard error of the mean.
    pub fn sigma(&self) -> f64 {
        (self.m2 / (self.n - 1.0) / self.n).sqrt()
    }

    pub fn within(&self, exact: f64, k: f64) -> bool {
        (self.mean - exact).abs() <= k * self.sigma()
    }
}

/// Monte-Carlo estimates over the unit sphere in `ℂ^n`, uniform measure:
/// means of `z*Az` and of products of mean-zero potentials for each pair.
pub struct SphereEstimates {
    pub means: Vec<Moments>,
    pub pairings: Vec<Moments>,
}

pub fn sphere_estimates(
    mats: &[Hermitian<Rational>],
    pairs: &[(usize, usize)],
    samples: usize,
    seed: u64,
) -> SphereEstimates {
    let n = mats[0].size();
    let coeffs: Vec<(Vec<f64>, Vec<(usize, usize, f64, f64)>, f64)> = mats
        .iter()
        .map(|a| {
            let diag: Vec<f64> = (0..n).map(|j| a.entry(j, j).to_f64().0).collect();
            let mut off = Vec::new();
            for j in 0..n {
                for k in (j + 1)..n {
                    let (re, im) = a.entry(j, k).to_f64();
                    off.push((j, k, re, im));
                }
            }
            let mean = diag.iter().sum::<f64>() / n as f64;
            (diag, off, mean)
        })
        .collect();
    let mut r = rng(seed);
    let mut means = vec![Moments::default(); mats.len()];
    let mut pairings = vec![Moments::default(); pairs.len()];
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut q = vec![0.0; mats.len()];
    for _ in 0..samples {
        let mut norm = 0.0;
        for zj in z.iter_mut() {
            *zj = Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal));
            norm += zj.norm_sqr();
        }
        for (qa, (diag, off, _)) in q.iter_mut().zip(&coeffs) {
            let mut s = 0.0;
            for (j, d) in diag.iter().enumerate() {
                s += d * z[j].norm_sqr();
            }
            for &(j, k, re, im) in off {
                // 2 Re(conj(z_j) A_jk z_k)
                let w = z[j].conj() * z[k];
                s += 2.0 * (re * w.re - im * w.im);
            }
            *qa = s / norm;
        }
        for (acc, x) in means.iter_mut().zip(&q) {
            acc.push(*x);
        }
        for (acc, &(a, b)) in pairings.iter_mut().zip(pairs) {
            acc.push((q[a] - coeffs[a].2) * (q[b] - coeffs[b].2));
        }
    }
    SphereEstimates { means, pairings }
}

fn inverse(g: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = g.len();
    let mut a: Vec<Vec<Complex64>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm())).unwrap();
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let row_c = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn log_det(g: &[Vec<Complex64>]) -> f64 {
    let n = g.len();
    let mut a = g.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm())).unwrap();
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= a[c][c];
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            let row_c = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(row_c) {
                *x -= f * y;
            }
        }
    }
    det.re.ln()
}

/// `g_{jk̄} = ∂_j∂_k̄ F(|z|²) = F′δ_jk + F″·z̄_j z_k`.
fn metric(z: &[Complex64], d12: &dyn Fn(f64) -> (f64, f64)) -> Vec<Vec<Complex64>> {
    let t: f64 = z.iter().map(|x| x.norm_sqr()).sum();
    let (f1, f2) = d12(t);
    (0..z.len())
        .map(|j| {
            (0..z.len())
                .map(|k| {
                    let d = if j == k { f1 } else { 0.0 };
                    Complex64::new(d, 0.0) + f2 * z[j].conj() * z[k]
                })
                .collect()
        })
        .collect()
}

/// Complex Hessian `∂_j∂_k̄ f` by central differences in real coordinates
/// `z_j = x_j + i y_j`.
fn complex_hessian(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<Vec<Complex64>> {
    let n = x.len() / 2;
    let d2 = |a: usize, b: usize| -> f64 {
        let mut p = x.to_vec();
        let mut at = |da: f64, db: f64| {
            p.copy_from_slice(x);
            p[a] += da;
            p[b] += db;
            f(&p)
        };
        if a == b {
            (at(h, 0.0) - 2.0 * at(0.0, 0.0) + at(-h, 0.0)) / (h * h)
        } else {
            (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h)
        }
    };
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
                    Complex64::new(d2(xj, xk) + d2(yj, yk), d2(xj, yk) - d2(yj, xk)) / 4.0
                })
                .collect()
        })
        .collect()
}

/// `s = −2·g^{jk̄}∂_j∂_k̄ log det g` with the Hessian taken numerically.
pub fn numeric_scalar_curvature(z: &[Complex64], d12: &dyn Fn(f64) -> (f64, f64)) -> f64 {
    let to_z = |x: &[f64]| -> Vec<Complex64> { x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect() };
    let x: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    let f = |x: &[f64]| log_det(&metric(&to_z(x), d12));
    let hess = complex_hessian(&f, &x, 1e-3);
    let ginv = inverse(&metric(z, d12));
    let n = z.len();
    let mut tr = Complex64::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            tr += ginv[k][j] * hess[j][k];
        }
    }
    -2.0 * tr.re
}

pub fn random_point(rng: &mut ChaCha8Rng, m: usize, radius: f64) -> Vec<Complex64> {
    let mut z: Vec<Complex64> = (0..m)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in z.iter_mut() {
        *c *= radius / norm;
    }
    z
}
