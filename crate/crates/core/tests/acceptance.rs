//! One test per acceptance criterion; each prints a PASS/FAIL line.
//! Run with `cargo test -p kbl-core --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;

use common::{numeric_scalar_curvature, random_hermitian, random_point, rng, sphere_estimates, verdict};
use kbl_core::actions::{
    check_condition_i, check_condition_ii, check_condition_iii, csc_predictor, invariant_algebra, l2_pairing,
    split_algebra, Gaussian, GroupSpec, LieSplit, ProjPoint,
};
use kbl_core::biharmonic::{
    exterior_extension, extended_special_solutions, interior_extension, matching_matrices, RadialExpr, SphericalData,
};
use kbl_core::classes::{
    corollary_families, cremona, epsilon_family, intersection, ruled_to_delpezzo, Class, RuledClass,
};
use kbl_core::geometry::{chopped_projective_simplex, del_pezzo_hexagon, futaki_report, polytope_volume};
use kbl_core::radial::{
    burns_simanca, mass_constant, radial_scalar_curvature, radial_scalar_curvature_exact, schedules, ClosedForm,
    RadialPotential,
};
use kbl_core::report::{four_point_configuration, sporadic_group, sporadic_kappa, sporadic_points};
use kbl_core::scalar::{format_rational, int, rat};
use kbl_core::{Field, Rational};

fn split_for(g: &GroupSpec, m: usize) -> LieSplit<Rational> {
    split_algebra(&invariant_algebra(g, m).unwrap(), g).unwrap()
}

fn weight_samples(n: usize) -> [Vec<Rational>; 5] {
    [
        vec![rat(1, 4); n],
        vec![rat(1, 7); n],
        (0..n).map(|j| rat(1, 5 + j as i64)).collect(),
        (0..n).map(|j| rat(j as i64 + 1, 12)).collect(),
        (0..n).map(|j| if j + 1 == n { rat(1, 9) } else { rat(1, 8) }).collect(),
    ]
}

#[test]
fn criterion_01_futaki_iff() {
    let start = Instant::now();
    let (mut agree, mut total) = (0, 0);
    for m in [2usize, 3] {
        for mask in 1u32..(1 << (m + 1)) {
            let subset: Vec<usize> = (0..=m).filter(|j| mask & (1 << j) != 0).collect();
            for w in weight_samples(subset.len()) {
                let equal = w.iter().all(|x| *x == w[0]);
                let expected = subset.len() == m + 1 && equal;
                let (_, f) = chopped_projective_simplex(m, &subset, &w).unwrap();
                total += 1;
                agree += usize::from(f.vanishes() == expected);
            }
        }
    }
    let ok = verdict(1, "Futaki vanishes iff all vertices chopped equally", agree == total, &format!("{agree}/{total} configurations"), start, 10.0);
    assert!(ok);
}

#[test]
fn criterion_02_hexagon() {
    let start = Instant::now();
    let hex = del_pezzo_hexagon::<Rational>();
    let f = futaki_report(&hex);
    let vol = polytope_volume(&hex);
    let anti = Class::new(int(3), vec![int(1), int(1), int(1)]);
    let sq = intersection(&anti, &anti).unwrap();
    let pass = vol == int(3)
        && f.barycenter.iter().all(Zero::is_zero)
        && f.vanishes()
        && sq == int(6)
        && sq == int(2) * vol.clone();
    let detail = format!("volume {}, (3H-E1-E2-E3)^2 = {}", format_rational(&vol), format_rational(&sq));
    assert!(verdict(2, "hexagon volume, barycenter, Futaki, anticanonical square", pass, &detail, start, 1.0));
}

fn random_gaussian(r: &mut rand_chacha::ChaCha8Rng) -> Gaussian<Rational> {
    let q = r.random_range(1..=4);
    Gaussian::new(rat(r.random_range(-6..=6), q), rat(r.random_range(-6..=6), q))
}

#[test]
fn criterion_03_sporadic() {
    let start = Instant::now();
    let g = sporadic_group();
    let split = split_for(&g, 2);
    let mut r = rng(3);
    let (mut iff, mut ii, mut samples) = (0, 0, 0);
    let mut kappas: Vec<Rational> = Vec::new();
    while samples < 100 {
        let (alpha, beta) = (random_gaussian(&mut r), random_gaussian(&mut r));
        let re = (alpha.clone() * beta.conj()).re;
        // distinct points off the line where Re(αβ̄) = 0
        let sum = alpha.clone() + beta.clone();
        let diff = alpha.clone() - beta.clone();
        if alpha.is_zero() || beta.is_zero() || re.is_zero() || sum.is_zero() || diff.is_zero() {
            continue;
        }
        samples += 1;
        let pts = sporadic_points(&alpha, &beta);
        let c1 = check_condition_i(&pts, &split, &g, &[]).unwrap();
        ii += usize::from(check_condition_ii(&pts, &split).unwrap().holds);
        iff += usize::from(c1.holds() == re.is_negative());
        if let (true, Some(w)) = (c1.holds(), &c1.weights) {
            assert_eq!(w[1], w[2]);
            kappas.push(sporadic_kappa(&alpha, &beta, w));
        }
    }
    let single = !kappas.is_empty() && kappas.iter().all(|k| *k == kappas[0]);
    let kappa = kappas.first().map(format_rational).unwrap_or_default();
    let detail = format!(
        "iff {iff}/100, (ii) {ii}/100, {} feasible, kappa = {kappa} (stated 2)",
        kappas.len()
    );
    assert!(verdict(3, "sporadic: (i) feasible iff Re(a conj b) < 0, single kappa", iff == 100 && ii == 100 && single, &detail, start, 5.0));
}

#[test]
fn criterion_04_four_points() {
    let start = Instant::now();
    let (g, pts) = four_point_configuration();
    let split = split_for(&g, 2);
    let pinned: Vec<Option<Rational>> = [1, 3, 5, 2].iter().map(|&x| Some(int(x))).collect();
    let on_ray = check_condition_i(&pts, &split, &g, &pinned).unwrap().holds();
    let free = check_condition_i(&pts, &split, &g, &[]).unwrap();
    let ii = check_condition_ii(&pts, &split).unwrap().holds;
    let iii = check_condition_iii(&pts, &split).unwrap().holds;
    let ray = free
        .weights
        .map(|w| w.iter().map(format_rational).collect::<Vec<_>>().join(","))
        .unwrap_or_else(|| "none".into());
    let detail = format!("(1,3,5,2) in cone: {on_ray}, computed ray ({ray}), (ii) {ii}, (iii) {iii}");
    assert!(verdict(4, "four aligned points: cone contains (1,3,5,2), (ii), (iii)", on_ray && ii && iii, &detail, start, 1.0));
}

#[test]
fn criterion_05_csc_predictor() {
    let start = Instant::now();
    let mut balanced_ok = true;
    for m in 1..=4usize {
        let g = GroupSpec::full_torus(m);
        let split = split_for(&g, m);
        let pts: Vec<ProjPoint<Rational>> = (0..=m).map(|j| ProjPoint::coordinate(m + 1, j)).collect();
        balanced_ok &= !csc_predictor(&pts, &vec![rat(2, 3); m + 1], &split).unwrap();
    }
    let mut r = rng(5);
    let splits: Vec<LieSplit<Rational>> = (1..=4).map(|m| split_for(&GroupSpec::full_torus(m), m)).collect();
    let mut random_ok = 0;
    let mut tested = 0;
    while tested < 50 {
        let m = r.random_range(1..=4usize);
        let chosen: Vec<usize> = (0..=m).filter(|_| r.random_bool(0.6)).collect();
        if chosen.is_empty() {
            continue;
        }
        let w: Vec<Rational> = chosen.iter().map(|_| rat(1, r.random_range(1..=6))).collect();
        if chosen.len() == m + 1 && w.iter().all(|x| *x == w[0]) {
            continue;
        }
        tested += 1;
        let pts: Vec<ProjPoint<Rational>> = chosen.iter().map(|&j| ProjPoint::coordinate(m + 1, j)).collect();
        random_ok += usize::from(csc_predictor(&pts, &w, &splits[m - 1]).unwrap());
    }
    let detail = format!("balanced false for m=1..4: {balanced_ok}, random true {random_ok}/50");
    assert!(verdict(5, "csc_predictor", balanced_ok && random_ok == 50, &detail, start, 5.0));
}

#[test]
fn criterion_06_burns_simanca() {
    let start = Instant::now();
    let p = RadialPotential::closed(ClosedForm::BurnsSimanca2, 2);
    let worst2 = (0..1000)
        .map(|i| 10f64.powf(-2.0 + 6.0 * i as f64 / 999.0))
        .map(|t| radial_scalar_curvature(&p, t).unwrap().abs())
        .fold(0.0, f64::max);
    let mut pass = worst2 < 1e-12;
    let mut detail = format!("m=2 max|s| {worst2:.2e}");
    for m in [3usize, 4] {
        let prof = burns_simanca(m, 1e4).unwrap();
        let target = 2.0 - m as f64;
        let slope = prof.decay_exponent(1e2, 1e4).unwrap();
        let s = prof.shooting.as_ref().unwrap().max_abs_curvature;
        pass &= s < 1e-6 && ((slope - target) / target).abs() < 0.1 && prof.psi_zero > 0.0;
        detail += &format!("; m={m} max|s| {s:.2e}, slope {slope:.4}, psi(0+) {:.6}", prof.psi_zero);
    }
    assert!(verdict(6, "Burns-Simanca profiles", pass, &detail, start, 60.0));
}

#[test]
fn criterion_07_fubini_study_anchor() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for m in 1..=4usize {
        let p = RadialPotential::closed(ClosedForm::FubiniStudy, m);
        let target = (2 * m * (m + 1)) as f64;
        for i in 0..100 {
            let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 99.0);
            worst = worst.max((radial_scalar_curvature(&p, t).unwrap() - target).abs());
        }
        let exact = radial_scalar_curvature_exact(&p, &rat(3, 7)).unwrap().unwrap();
        assert_eq!(exact, int(2 * (m * (m + 1)) as i64));
    }
    assert!(verdict(7, "Fubini-Study scalar curvature 2m(m+1)", worst < 1e-10, &format!("max deviation {worst:.2e}"), start, 1.0));
}

#[test]
fn criterion_08_biharmonic() {
    let start = Instant::now();
    let printed3 = RadialExpr::power(rat(1, 4), -4).add(&RadialExpr::power(rat(-1, 4), -2));
    let mut pass = extended_special_solutions(3, &int(0), &int(1)).unwrap().exterior == printed3
        && extended_special_solutions(2, &int(0), &int(2)).unwrap().exterior == RadialExpr::log(int(1))
        && extended_special_solutions(4, &rat(2, 3), &int(0)).unwrap().interior == RadialExpr::power(rat(2, 3), 0);
    let mut zero_dets = 0;
    let mut reproduced = 0;
    for m in 2..=5usize {
        let t = matching_matrices(m, 50).unwrap();
        zero_dets += t.rows.iter().filter(|r| r.det_extended.is_zero()).count();
        // interior data: degree 0 needs k_0 = 4m h_0; exterior: k_0 = 0
        let mut h = SphericalData::zero(m);
        let mut k = SphericalData::zero(m);
        h.coeffs.insert(0, vec![rat(1, 3)]);
        k.coeffs.insert(0, vec![rat(4 * m as i64, 3)]);
        h.coeffs.insert(2, (0..kbl_core::biharmonic::harmonic_dimension(m, 2) as i64).map(|i| rat(i % 3 - 1, 2)).collect());
        k.coeffs.insert(1, (0..2 * m as i64).map(|i| rat(i - 1, 5)).collect());
        let wi = interior_extension(&h, &k).unwrap();
        let k_ext = k.add(&SphericalData::single(m, 0, rat(-4 * m as i64, 3)));
        let wo = exterior_extension(&h, &k_ext).unwrap();
        let (hi, ki) = wi.boundary();
        let (ho, ko) = wo.boundary();
        let ok = hi.same_as(&h) && ki.same_as(&k) && ho.same_as(&h) && ko.same_as(&k_ext);
        reproduced += usize::from(ok && wi.is_biharmonic() && wo.is_biharmonic());
    }
    pass &= zero_dets == 0 && reproduced == 4;
    let detail = format!("closed forms exact, {zero_dets} zero determinants, boundary reproduced for {reproduced}/4 m");
    assert!(verdict(8, "biharmonic closed forms, matching, boundary reproduction", pass, &detail, start, 5.0));
}

fn random_rational(r: &mut rand_chacha::ChaCha8Rng) -> Rational {
    rat(r.random_range(-20..=20), r.random_range(1..=9))
}

#[test]
fn criterion_09_class_calculus() {
    let start = Instant::now();
    let mut r = rng(9);
    let class = |r: &mut rand_chacha::ChaCha8Rng| {
        Class::new(random_rational(r), (0..3).map(|_| random_rational(r)).collect())
    };
    let (mut involution, mut isometry) = (0, 0);
    for _ in 0..1000 {
        let (a, b) = (class(&mut r), class(&mut r));
        let (ca, cb) = (cremona(&a).unwrap(), cremona(&b).unwrap());
        involution += usize::from(cremona(&ca).unwrap() == a);
        isometry += usize::from(intersection(&ca, &cb).unwrap() == intersection(&a, &b).unwrap());
    }
    let mut ruled_ok = 0;
    for _ in 0..200 {
        let mut rc = || RuledClass {
            alpha: random_rational(&mut r),
            beta: random_rational(&mut r),
            lambda: random_rational(&mut r),
        };
        let (x, y) = (rc(), rc());
        // A_1·A_2 = 1, A_i² = 0, E² = −1
        let form = &x.alpha * &y.beta + &x.beta * &y.alpha - &x.lambda * &y.lambda;
        ruled_ok += usize::from(intersection(&ruled_to_delpezzo(&x), &ruled_to_delpezzo(&y)).unwrap() == form);
    }
    let cases: [(u8, Vec<Rational>); 3] = [
        (1, vec![rat(1, 2), rat(1, 3)]),
        (2, vec![rat(1, 5), rat(1, 4), rat(1, 3)]),
        (3, vec![rat(1, 2), rat(1, 3), rat(1, 4), int(1), rat(1, 2)]),
    ];
    let mut families = 0;
    let mut matched = 0;
    for (case, params) in &cases {
        for f in corollary_families(*case, params).unwrap() {
            families += 1;
            matched += usize::from(f.matches_printed);
        }
    }
    let typo = corollary_families(1, &[rat(1, 2), rat(1, 3), rat(1, 5)])
        .unwrap()
        .into_iter()
        .find(|f| f.label == "1b")
        .map(|f| f.printed_variants.iter().map(|v| v.1).collect::<Vec<_>>())
        .unwrap_or_default();
    let typo_flagged = typo == [false, true];
    let pass = involution == 1000 && isometry == 1000 && ruled_ok == 200 && matched == families && typo_flagged;
    let detail = format!(
        "involution {involution}/1000, form {isometry}/1000, ruled isometry {ruled_ok}/200, families {matched}/{families}, typo flagged {typo_flagged}"
    );
    assert!(verdict(9, "class calculus", pass, &detail, start, 5.0));
}

#[test]
fn criterion_10_schedules_and_constants() {
    let start = Instant::now();
    let mut pass = true;
    for m in 2..=6usize {
        let d = 2 * m as i64 + 1;
        let s = schedules(0.01, m).unwrap();
        pass &= s.r_exponent == rat(2 * m as i64 - 1, d) && s.big_r_exponent == rat(-2, d);
        pass &= ((s.r_eps - 0.01f64.powf((2 * m - 1) as f64 / d as f64)) / s.r_eps).abs() < 1e-14;
        pass &= ((s.big_r_eps * 0.01 - s.r_eps) / s.r_eps).abs() < 1e-14;
        pass &= s.drift_exponent == rat(2, d);
        let w = vec![int(1), rat(1, 2)];
        let unverified = epsilon_family(&Class::hyperplane(0), &w, m, false).unwrap();
        let verified = epsilon_family(&Class::hyperplane(0), &w, m, true).unwrap();
        pass &= unverified.drift_exponent.as_deref() == Some(format!("2/{d}").as_str());
        pass &= verified.drift_exponent.is_none();
    }
    let (c2, c3) = (mass_constant(2).unwrap(), mass_constant(3).unwrap());
    pass &= (c2 - 4.0 * PI * PI).abs() < 1e-12 && (c3 - 8.0 * PI.powi(3)).abs() < 1e-12;
    let detail = format!("c2 = {c2:.12}, c3 = {c3:.12}");
    assert!(verdict(10, "schedules, drift exponent, mass constants", pass, &detail, start, 1.0));
}

#[test]
fn criterion_11_oracle_gates() {
    let start = Instant::now();
    let mut r = rng(11);
    let (mut mean_ok, mut pair_ok, mut total) = (0, 0, 0);
    for m in 1..=3usize {
        let mats: Vec<_> = (0..40).map(|_| random_hermitian(&mut r, m + 1)).collect();
        let pairs: Vec<(usize, usize)> = (0..20).map(|i| (2 * i, 2 * i + 1)).collect();
        let est = sphere_estimates(&mats, &pairs, 1_000_000, 100 + m as u64);
        for (a, mom) in mats.iter().zip(&est.means) {
            let exact = a.trace().to_f64() / (m + 1) as f64;
            mean_ok += usize::from(mom.within(exact, 3.0));
        }
        for (&(a, b), mom) in pairs.iter().zip(&est.pairings) {
            let exact = l2_pairing(&mats[a], &mats[b]).unwrap().to_f64();
            pair_ok += usize::from(mom.within(exact, 3.0));
            total += 1;
        }
    }
    let mut worst_fs = 0.0f64;
    let mut worst_e2 = 0.0f64;
    for m in 1..=3usize {
        let target = (2 * m * (m + 1)) as f64;
        for _ in 0..5 {
            let radius = r.random_range(0.3..2.0);
            let z = random_point(&mut r, m, radius);
            let s = numeric_scalar_curvature(&z, &|t| (1.0 / (1.0 + t), -1.0 / ((1.0 + t) * (1.0 + t))));
            let t: f64 = z.iter().map(|c| c.norm_sqr()).sum();
            let formula = radial_scalar_curvature(&RadialPotential::closed(ClosedForm::FubiniStudy, m), t).unwrap();
            worst_fs = worst_fs.max((s - target).abs().max((s - formula).abs()) / target);
        }
    }
    for _ in 0..5 {
        let radius = r.random_range(0.5..2.0);
        let z = random_point(&mut r, 2, radius);
        let s = numeric_scalar_curvature(&z, &|t| (0.5 + 1.0 / t, -1.0 / (t * t)));
        let t: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        let formula = radial_scalar_curvature(&RadialPotential::closed(ClosedForm::BurnsSimanca2, 2), t).unwrap();
        worst_e2 = worst_e2.max(s.abs()).max((s - formula).abs());
    }
    let pass = mean_ok == 120 && pair_ok == total && worst_fs < 1e-5 && worst_e2 < 1e-5;
    let detail = format!(
        "means {mean_ok}/120 and pairings {pair_ok}/{total} within 3 sigma; numeric Laplacian FS rel {worst_fs:.1e}, E2 abs {worst_e2:.1e}"
    );
    assert!(verdict(11, "Monte-Carlo and numeric Laplacian oracles", pass, &detail, start, 120.0));
}
