use num_traits::Zero;
use proptest::prelude::*;

use kbl_core::actions::Gaussian;
use kbl_core::biharmonic::{exterior_mode, interior_mode, matching_matrix, RadialExpr};
use kbl_core::classes::{cremona, intersection, ruled_to_delpezzo, Class, RuledClass};
use kbl_core::geometry::{
    chopped_projective_simplex, corner_chop, polytope_volume, removed_corner_volume, standard_simplex, ChopSpec,
};
use kbl_core::radial::{radial_scalar_curvature, schedules, ClosedForm, RadialPotential};
use kbl_core::scalar::{format_rational, int, parse_rational, rat};
use kbl_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn class3() -> impl Strategy<Value = Class<Rational>> {
    (rational(), prop::collection::vec(rational(), 3)).prop_map(|(h, e)| Class::new(h, e))
}

fn ruled() -> impl Strategy<Value = RuledClass<Rational>> {
    (rational(), rational(), rational()).prop_map(|(alpha, beta, lambda)| RuledClass { alpha, beta, lambda })
}

fn determinant(a: &[[Rational; 2]; 2]) -> Rational {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

proptest! {
    #[test]
    fn cremona_is_an_isometric_involution(a in class3(), b in class3()) {
        let (ca, cb) = (cremona(&a).unwrap(), cremona(&b).unwrap());
        prop_assert_eq!(cremona(&ca).unwrap(), a.clone());
        prop_assert_eq!(intersection(&ca, &cb).unwrap(), intersection(&a, &b).unwrap());
    }

    #[test]
    fn ruled_map_preserves_squares(r in ruled()) {
        let d = ruled_to_delpezzo(&r);
        prop_assert_eq!(intersection(&d, &d).unwrap(), r.square());
    }

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn gaussian_text_round_trip(a in rational(), b in rational()) {
        let g = Gaussian::new(a, b);
        prop_assert_eq!(Gaussian::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn modes_reproduce_boundary_data(m in 2usize..=6, ell in 1usize..=30, h in rational(), k in rational()) {
        let (l, mi) = (ell as i64, m as i64);
        let [a, b] = interior_mode(m, ell, &h, &k).unwrap();
        let wi = RadialExpr::power(a, l).add(&RadialExpr::power(b, l + 2));
        let [c, e] = exterior_mode(m, ell, &h, &k).unwrap();
        let wo = RadialExpr::power(c, 2 - 2 * mi - l).add(&RadialExpr::power(e, 4 - 2 * mi - l));
        for w in [wi, wo] {
            prop_assert_eq!(w.value_at_one(), h.clone());
            let lap = w.laplacian(l, mi);
            prop_assert_eq!(lap.value_at_one(), k.clone());
            prop_assert!(lap.laplacian(l, mi).is_zero());
        }
    }

    #[test]
    fn modes_are_linear(m in 2usize..=5, ell in 1usize..=20, h1 in rational(), k1 in rational(), h2 in rational(), k2 in rational()) {
        let sum_i = interior_mode(m, ell, &(&h1 + &h2), &(&k1 + &k2)).unwrap();
        let (x, y) = (interior_mode(m, ell, &h1, &k1).unwrap(), interior_mode(m, ell, &h2, &k2).unwrap());
        prop_assert_eq!(sum_i, [&x[0] + &y[0], &x[1] + &y[1]]);
        let sum_o = exterior_mode(m, ell, &(&h1 + &h2), &(&k1 + &k2)).unwrap();
        let (x, y) = (exterior_mode(m, ell, &h1, &k1).unwrap(), exterior_mode(m, ell, &h2, &k2).unwrap());
        prop_assert_eq!(sum_o, [&x[0] + &y[0], &x[1] + &y[1]]);
    }

    #[test]
    fn matching_determinant_closed_form(m in 2usize..=8, ell in 0usize..=60) {
        let d = int(2 * (ell + m) as i64 - 2);
        prop_assert_eq!(determinant(&matching_matrix(m, ell, true)), &d * &d);
        if ell > 0 {
            prop_assert_eq!(matching_matrix(m, ell, false), matching_matrix(m, ell, true));
        }
    }

    #[test]
    fn equal_chops_of_every_vertex_balance(m in 2usize..=3, q in 4i64..=30) {
        let w = vec![rat(1, q); m + 1];
        let all: Vec<usize> = (0..=m).collect();
        let (_, f) = chopped_projective_simplex(m, &all, &w).unwrap();
        prop_assert!(f.vanishes());
        let (_, f) = chopped_projective_simplex(m, &all[..m], &w[..m]).unwrap();
        prop_assert!(!f.vanishes());
    }

    #[test]
    fn chop_removes_the_corner_volume(m in 2usize..=3, v in 0usize..=3, p in 1i64..=9, q in 10i64..=20) {
        let s = standard_simplex::<Rational>(m);
        let spec = ChopSpec { vertex_index: v % (m + 1), weight: rat(p, q) };
        let chopped = corner_chop(&s, &spec).unwrap();
        let removed = removed_corner_volume(&s, &spec).unwrap();
        prop_assert!(!removed.is_zero());
        prop_assert_eq!(polytope_volume(&chopped), polytope_volume(&s) - removed);
    }

    #[test]
    fn curvature_scales_inversely(m in 1usize..=4, p in 1i64..=9, q in 1i64..=9, t in 0.01f64..100.0) {
        let a2 = rat(p, q);
        let base = RadialPotential::closed(ClosedForm::FubiniStudy, m);
        let scaled = base.rescaled(a2.clone());
        let a = p as f64 / q as f64;
        let expected = radial_scalar_curvature(&base, t / a).unwrap() / a;
        let got = radial_scalar_curvature(&scaled, t).unwrap();
        prop_assert!((got - expected).abs() < 1e-10 * expected.abs());
    }

    #[test]
    fn schedule_radii_are_consistent(m in 2usize..=8, eps in 1e-6f64..0.5) {
        let s = schedules(eps, m).unwrap();
        prop_assert!(((s.big_r_eps * eps - s.r_eps) / s.r_eps).abs() < 1e-12);
        prop_assert!(s.r_eps > eps && s.r_eps < 1.0);
    }
}
