//! Property-based invariants over random inputs. Oracle comparisons are
//! kept to small case counts — each oracle call is a dense 2e6-point scan.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tusi::classify::{classify_reduced, classify_tusi, near_boundary, IntervalKind};
use tusi::closed_form::cardano_normal;
use tusi::forms::{
    phi_n, reduce_general, reduced_to_tusi, tusi_to_reduced, AffineMap, GeneralCubic, NormalForm,
    ReducedForm, Sign, TusiForm,
};
use tusi::iterative::{
    chord_quadratic, khayyam_chord_solve, solve_general, solve_reduced, Method, SolveOptions,
};

fn opts(method: Method) -> SolveOptions {
    SolveOptions { method, ..SolveOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // x = scale*y + shift composed with its inverse is the identity
    #[test]
    fn affine_map_inverse_round_trip(
        scale in prop::num::f64::NORMAL.prop_filter("nonzero", |s| s.abs() > 1e-6 && s.abs() < 1e6),
        shift in -1e6..1e6f64,
        y in -1e3..1e3f64,
    ) {
        let m = AffineMap::new(scale, shift).unwrap();
        let round = m.inverse().apply(m.apply(y));
        prop_assert!((round - y).abs() <= 1e-9 * (1.0 + y.abs() + shift.abs()));
    }

    // depressing a cubic kills the quadratic term and preserves roots
    #[test]
    fn reduction_preserves_evaluation(
        a2 in -50.0..50.0f64,
        a1 in -50.0..50.0f64,
        a0 in -50.0..50.0f64,
        y in -20.0..20.0f64,
    ) {
        let c = GeneralCubic::new(1.0, a2, a1, a0).unwrap();
        let (r, map) = reduce_general(&c);
        // f(map(y)) == g(y) up to rounding
        let lhs = c.eval(map.apply(y));
        let rhs = r.eval(y);
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale, "{lhs} vs {rhs}");
    }

    // reduced -> tusi -> reduced recovers the same coefficients
    #[test]
    fn tusi_round_trip(p in -1e3..(-1e-3f64), q in -1e3..1e3f64) {
        let r = ReducedForm::new(p, q).unwrap();
        let (t, map) = reduced_to_tusi(&r).unwrap();
        let (r2, map2) = tusi_to_reduced(&t);
        prop_assert!((r2.p + 1.0/3.0).abs() <= 1e-12);
        // both reduced forms are scaled copies of the same unit form:
        // r(map(alpha)) = (-3p)^(3/2) t(alpha) and r2(inv(map2)(alpha)) = t(alpha)
        let cube_scale = (-3.0 * p).sqrt().powi(3);
        for alpha in [-0.5, 0.0, 0.3, 2.0/3.0, 1.5] {
            let unit = t.eval(alpha);
            let via_r = r.eval(map.apply(alpha)) / cube_scale;
            prop_assert!((via_r - unit).abs() <= 1e-10 * (1.0 + unit.abs()),
                "alpha={alpha}: {via_r} vs {unit}");
            let via_r2 = r2.eval(map2.inverse().apply(alpha));
            prop_assert!((via_r2 - unit).abs() <= 1e-12 * (1.0 + unit.abs()),
                "alpha={alpha}: {via_r2} vs {unit}");
        }
    }

    // the hump rises up to (n-1)/n and falls after it
    #[test]
    fn phi_monotone_sides(n in 2u32..10, i in 1usize..500) {
        let alpha_star = (n as f64 - 1.0) / n as f64;
        let a = alpha_star * i as f64 / 500.0;
        let b = alpha_star * (i as f64 + 1.0) / 500.0;
        prop_assert!(phi_n(n, a) <= phi_n(n, b) + 1e-15);
        let c = alpha_star + (1.0 - alpha_star) * i as f64 / 500.0;
        let d = alpha_star + (1.0 - alpha_star) * (i as f64 + 1.0) / 500.0;
        prop_assert!(phi_n(n, c) >= phi_n(n, d) - 1e-15);
    }

    // classification intervals are ascending and pairwise disjoint
    #[test]
    fn intervals_ascending_disjoint(p in -1e3..1e3f64, q in -1e3..1e3f64) {
        let cls = classify_reduced(&ReducedForm::new(p, q).unwrap());
        prop_assert_eq!(cls.count, cls.intervals.len());
        prop_assert_eq!(cls.count, cls.multiplicities.len());
        for w in cls.intervals.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo + 1e-12 * (1.0 + w[0].hi.abs()));
        }
        let mult_sum: u32 = cls.multiplicities.iter().sum();
        prop_assert!(mult_sum <= 3);
    }

    // every solved root has a small residual and lies in its interval
    #[test]
    fn solved_roots_verified(p in -100.0..100.0f64, q in -100.0..100.0f64) {
        let r = ReducedForm::new(p, q).unwrap();
        let report = solve_reduced(&r, &SolveOptions::default()).unwrap();
        prop_assert!(report.errors.is_empty(), "{:?}", report.errors);
        for root in &report.roots {
            let scale = 1.0 + p.abs() + q.abs();
            prop_assert!(root.residual.abs() <= 1e-8 * scale,
                "p={p}, q={q}: residual {}", root.residual);
            let x = root.value;
            let iv = &root.interval;
            let pad = 1e-9 * (1.0 + x.abs());
            let inside = match iv.kind {
                IntervalKind::ExactPoint => (x - iv.lo).abs() <= pad,
                _ => x >= iv.lo - pad && x <= iv.hi + pad,
            };
            prop_assert!(inside, "p={p}, q={q}: {x} outside [{}, {}]", iv.lo, iv.hi);
        }
    }

    // methods agree on the unique root of x^3 + x + q, q < 0
    #[test]
    fn methods_agree_on_normal_form(q in -100.0..(-1e-3f64)) {
        let f = NormalForm::new(Sign::Positive, q).unwrap();
        let reference = cardano_normal(&f).unwrap().root;
        let (chord, _) = khayyam_chord_solve(&f, &SolveOptions::default()).unwrap();
        prop_assert!((chord - reference).abs() <= 1e-9 * (1.0 + reference.abs()));

        let r = ReducedForm::new(1.0, q).unwrap();
        for method in [Method::Bisection, Method::Newton, Method::Auto] {
            let report = solve_reduced(&r, &opts(method)).unwrap();
            prop_assert_eq!(report.roots.len(), 1);
            let got = report.roots[0].value;
            prop_assert!((got - reference).abs() <= 1e-9 * (1.0 + reference.abs()),
                "q={q}, {method:?}: {got} vs {reference}");
        }
    }

    // the chord's quadratic always has the documented shape
    #[test]
    fn chord_quadratic_shape(a in 0.0..10.0f64, b in 0.0..10.0f64, q in -100.0..(-1e-6f64)) {
        prop_assume!(a != b);
        let (a2, a1, a0) = chord_quadratic(a, b, q).unwrap();
        let s = a + b;
        prop_assert!(a2 >= 1.0); // (A+B)^2 + 1
        prop_assert!((a2 - (s * s + 1.0)).abs() <= 1e-12 * (1.0 + s * s));
        prop_assert!(a0 >= 0.0); // A^2 B^2
        prop_assert!((a1 - (q - 2.0 * a * b * s)).abs() <= 1e-9 * (1.0 + a1.abs()));
    }

    // the closed form refuses exactly the three-distinct-root regime
    #[test]
    fn regime_refusal_matches_classification(p in -1e3..(-1e-3f64), q in -1e3..1e3f64) {
        let r = ReducedForm::new(p, q).unwrap();
        let d = tusi::classify::discriminant(&r);
        prop_assume!(!near_boundary(d.delta_cap, 0.0));
        let refused = tusi::closed_form::cardano_reduced(&r).is_err();
        prop_assert_eq!(refused, d.delta_cap > 0.0, "p={}, q={}", p, q);
    }
}

// A small deterministic sweep with real oracle comparisons: general cubics
// through the whole pipeline, all roots matched against the dense scan.
#[test]
fn pipeline_roots_match_oracle_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bac_1e50);
    for _ in 0..25 {
        let a3: f64 = rng.gen_range(0.2..5.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let a2: f64 = rng.gen_range(-10.0..10.0);
        let a1: f64 = rng.gen_range(-10.0..10.0);
        let a0: f64 = rng.gen_range(-10.0..10.0);
        let c = GeneralCubic::new(a3, a2, a1, a0).unwrap();
        let report = solve_general(&c, &SolveOptions::default()).unwrap();
        let oracle = poly_oracle::oracle_roots(&[a0, a1, a2, a3], 1e-12).unwrap();
        assert_eq!(
            report.roots.len(),
            oracle.roots.len(),
            "({a3}, {a2}, {a1}, {a0}): {:?} vs {:?}",
            report.roots.iter().map(|r| r.value).collect::<Vec<_>>(),
            oracle.roots
        );
        for (got, want) in report.roots.iter().zip(oracle.roots.iter()) {
            assert!(
                (got.value - want).abs() <= 1e-7 * (1.0 + want.abs()),
                "({a3}, {a2}, {a1}, {a0}): {} vs {want}",
                got.value
            );
        }
    }
}

// delta values straddling each boundary: exactly one regime claims each
#[test]
fn tusi_regimes_are_exclusive() {
    let mut deltas = vec![];
    for k in -40..=40 {
        deltas.push(k as f64 * 0.05);
    }
    for eps in [1e-14, 1e-13, 5e-13, 1e-11, 1e-9] {
        for base in [0.0, 1.0] {
            deltas.push(base + eps);
            deltas.push(base - eps);
        }
    }
    for d in deltas {
        let cls = classify_tusi(&TusiForm::new(d).unwrap());
        let expected = if near_boundary(d, 1.0) {
            "delta_eq_1"
        } else if near_boundary(d, 0.0) {
            "delta_eq_0"
        } else if d > 1.0 {
            "delta_above_1"
        } else if d < 0.0 {
            "delta_below_0"
        } else {
            "delta_in_0_1"
        };
        assert_eq!(cls.regime, expected, "delta={d}");
        let in_band =
            (near_boundary(d, 0.0) && d != 0.0) || (near_boundary(d, 1.0) && d != 1.0);
        assert_eq!(cls.boundary_snapped, in_band, "delta={d}");
    }
}
