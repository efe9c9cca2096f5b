//! Independent numerical checks of the closed formulas used by the library.

mod common;

use std::f64::consts::PI;

use rand::Rng;

use common::{numeric_scalar_curvature, random_hermitian, random_point, rng, sphere_estimates};
use kbl_core::actions::{fs_potential, l2_pairing, Gaussian, Hermitian, ProjPoint};
use kbl_core::biharmonic::{displacement, extended_special_solutions, RadialExpr, RadialTerm};
use kbl_core::radial::{
    burns_simanca, odd_sphere_area, radial_scalar_curvature, scalar_curvature_from_jet, scalar_curvature_from_potential,
    PotentialJet, RadialPotential,
};
use kbl_core::scalar::{int, rat};
use kbl_core::{Field, Rational};

#[test]
fn fs_potential_and_pairing_examples() {
    let one = Gaussian::<Rational>::one();
    let z = Gaussian::zero();
    let a = Hermitian::new(vec![
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), one.clone()],
        vec![z.clone(), one.clone(), z.clone()],
    ])
    .unwrap();
    let p = ProjPoint::new(vec![z.clone(), one.clone(), one]).unwrap();
    assert_eq!(fs_potential(&a, &p).unwrap(), int(1));
    let d = Hermitian::diagonal(&[int(1), int(-1)]);
    assert_eq!(l2_pairing(&d, &d).unwrap(), rat(1, 3));
}

#[test]
fn pairing_matches_monte_carlo_on_p1() {
    let mut r = rng(21);
    let mats: Vec<Hermitian<Rational>> = (0..6).map(|_| random_hermitian(&mut r, 2)).collect();
    let pairs = [(0, 1), (2, 3), (4, 5), (0, 0)];
    let est = sphere_estimates(&mats, &pairs, 200_000, 22);
    for (&(a, b), mom) in pairs.iter().zip(&est.pairings) {
        let exact = l2_pairing(&mats[a], &mats[b]).unwrap().to_f64();
        assert!(mom.within(exact, 4.0), "pair {a},{b}: {} vs {exact}", mom.mean());
    }
}

#[test]
fn numeric_laplacian_on_a_generic_potential() {
    // F = t/2 + t²/8 + log(1 + t)
    let d12 = |t: f64| (0.5 + t / 4.0 + 1.0 / (1.0 + t), 0.25 - 1.0 / ((1.0 + t) * (1.0 + t)));
    let jet = |t: f64| {
        let u = 1.0 / (1.0 + t);
        PotentialJet {
            d1: 0.5 + t / 4.0 + u,
            d2: 0.25 - u * u,
            d3: 2.0 * u * u * u,
            d4: -6.0 * u * u * u * u,
        }
    };
    let mut r = rng(31);
    for m in 2..=3usize {
        let p = RadialPotential::custom(jet, m);
        for _ in 0..4 {
            let radius = r.random_range(0.4..1.8);
            let z = random_point(&mut r, m, radius);
            let t = radius * radius;
            let numeric = numeric_scalar_curvature(&z, &d12);
            let formula = radial_scalar_curvature(&p, t).unwrap();
            let direct = scalar_curvature_from_potential(&jet(t), &t, m);
            assert!((numeric - formula).abs() < 1e-5 * (1.0 + formula.abs()), "{numeric} vs {formula}");
            assert!((direct - formula).abs() < 1e-10 * (1.0 + formula.abs()));
            let via_jet = scalar_curvature_from_jet(&jet(t).to_momentum(&t), m);
            assert!((via_jet - formula).abs() < 1e-12 * (1.0 + formula.abs()));
        }
    }
}

/// Scalar-flat profiles satisfy `ψ_τ = x + A·x^{2−m} + B·x^{1−m}` with `x = ψ`:
/// `A` comes from the leading term `(m−2)t^{2−m}` of `ψ − t/2`, and
/// `Φ(x₀) = 0`, `Φ′(x₀) = 1` at the divisor give `x₀^{m−1} = −A/(m−1)` and
/// `B = (2−m)·A·x₀/(m−1)`.
#[test]
fn shooting_profile_matches_first_integral() {
    for m in 3..=5usize {
        let mf = m as f64;
        let a = (1.0 - mf) * (mf - 2.0) / 2f64.powi(m as i32 - 2);
        let x0 = (-a / (mf - 1.0)).powf(1.0 / (mf - 1.0));
        let b = (2.0 - mf) * a * x0 / (mf - 1.0);
        let prof = burns_simanca(m, 1e4).unwrap();
        assert!((prof.psi_zero - x0).abs() < 1e-6, "m={m}: {} vs {x0}", prof.psi_zero);
        let mut worst = 0.0f64;
        for i in 0..prof.len() {
            if prof.t[i] < 1e-2 || prof.t[i] > 1e2 {
                continue;
            }
            let x = prof.psi[i];
            let phi = x + a * x.powf(2.0 - mf) + b * x.powf(1.0 - mf);
            worst = worst.max((prof.psi_tau[i] - phi).abs());
        }
        assert!(worst < 1e-6, "m={m}: first-integral residual {worst:e}");
    }
}

#[test]
fn sphere_areas() {
    assert!((odd_sphere_area(1) - 2.0 * PI).abs() < 1e-14);
    assert!((odd_sphere_area(2) - 2.0 * PI * PI).abs() < 1e-13);
    for m in 1..8usize {
        let ratio = odd_sphere_area(m + 1) / odd_sphere_area(m);
        assert!((ratio - PI / m as f64).abs() < 1e-13);
    }
}

fn gegenbauer(n: usize, lambda: f64, x: f64) -> f64 {
    let (mut c0, mut c1) = (1.0, 2.0 * lambda * x);
    if n == 0 {
        return c0;
    }
    for k in 2..=n {
        let kf = k as f64;
        let c2 = (2.0 * x * (kf + lambda - 1.0) * c1 - (kf + 2.0 * lambda - 2.0) * c0) / kf;
        c0 = c1;
        c1 = c2;
    }
    c1
}

fn fd_laplacian(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let mut p = x.to_vec();
    let f0 = f(x);
    let mut sum = 0.0;
    for i in 0..x.len() {
        p[i] = x[i] + h;
        let up = f(&p);
        p[i] = x[i] - h;
        let down = f(&p);
        p[i] = x[i];
        sum += (up - 2.0 * f0 + down) / (h * h);
    }
    sum
}

/// `r^s·Y_ℓ` and `log r·r^s·Y_ℓ` against a zonal harmonic in `ℝ^{2m}`.
#[test]
fn radial_laplacian_against_zonal_harmonics() {
    let mut r = rng(41);
    for m in 2..=4usize {
        let n = 2 * m;
        let lambda = m as f64 - 1.0;
        for ell in 0..=3usize {
            let y = |x: &[f64]| {
                let rr = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                gegenbauer(ell, lambda, x[0] / rr)
            };
            for s in [-3i64, -1, 1, 2, 4] {
                let radius = r.random_range(0.8..1.5);
                let mut x: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                x.iter_mut().for_each(|v| *v *= radius / norm);
                let logged = RadialExpr {
                    terms: vec![RadialTerm {
                        coeff: int(1),
                        power: s,
                        log: true,
                    }],
                };
                for expr in [RadialExpr::power(int(1), s), logged] {
                    let f = |x: &[f64]| {
                        let rr = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                        expr.evaluate(rr) * y(x)
                    };
                    let numeric = fd_laplacian(&f, &x, 1e-3);
                    let symbolic = expr.laplacian(ell as i64, m as i64).evaluate(radius) * y(&x);
                    let scale = 1.0 + symbolic.abs() + f(&x).abs();
                    assert!(
                        (numeric - symbolic).abs() < 1e-4 * scale,
                        "m={m} l={ell} s={s} log={}: {numeric} vs {symbolic}",
                        expr.terms[0].log
                    );
                }
                assert_eq!(
                    RadialExpr::power(int(1), s).laplacian(ell as i64, m as i64),
                    RadialExpr::power(int(displacement(s, ell as i64, m as i64)), s - 2)
                );
            }
        }
    }
}

/// The constant-mode solutions reproduce `W(1) = h`, `ΔW(1) = k` as radial
/// functions on `ℝ^{2m}`.
#[test]
fn special_solutions_boundary_values_numerically() {
    for m in 2..=5usize {
        let (h, k) = (rat(2, 3), rat(5, 4));
        let sp = extended_special_solutions(m, &h, &int(0)).unwrap();
        let ext = extended_special_solutions(m, &int(0), &k).unwrap();
        let mut x = vec![0.0; 2 * m];
        x[0] = 1.0;
        for (expr, hv, kv) in [(&sp.interior, h.to_f64(), 0.0), (&ext.exterior, 0.0, k.to_f64())] {
            let f = |x: &[f64]| expr.evaluate(x.iter().map(|v| v * v).sum::<f64>().sqrt());
            assert!((f(&x) - hv).abs() < 1e-12);
            assert!((fd_laplacian(&f, &x, 1e-4) - kv).abs() < 1e-5, "m={m}");
        }
    }
}
