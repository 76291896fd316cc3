use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use soltrans_core::classifier::{
    asymptote_fit, classify, classify_f1, classify_slanted, classify_vertical, cross_check, reduce,
    theta_limits, EndKind, EndShape, Family, Reduction, MAX_CHECK_HORIZON,
};
use soltrans_core::geometry::{KillingField, Point};
use soltrans_core::ode::IntegratorConfig;
use soltrans_core::profile::{f_eval, integrate, End, F1Params, ProfileSystem, Trajectory};
use soltrans_core::surface::PlaneCurve;
use soltrans_core::verifier::{fd_forms, translator_residual, u_independence_check, DEFAULT_STEP};

fn run(p: F1Params, s_max: f64) -> Trajectory {
    integrate(ProfileSystem::F1(p), s_max, &IntegratorConfig::precise()).unwrap()
}

fn nonzero(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m })
}

#[test]
fn grim_reaper_lower_tail_fits_its_plane() {
    let tr = run(F1Params::new(3.0, 0.0, FRAC_PI_2), 200.0);
    let fit = asymptote_fit(&tr, End::Backward, 200.0).unwrap();
    let EndKind::HorizontalPlane { z0 } = fit.kind else {
        panic!("{fit:?}")
    };
    assert!((z0 - (3.0 / (3.0 + FRAC_PI_2)).ln()).abs() < 1e-5, "{z0}");
}

#[test]
fn boundary_cases_fit_predicted_models() {
    let cfg = IntegratorConfig::precise();
    let half = cross_check(&F1Params::new(1.0, 0.0, 1.0), &cfg, 200.0).unwrap();
    assert!(half.agree);
    let up = half.fits[1].unwrap();
    assert_eq!(up.kind.shape(), EndShape::HalfLogarithmic);
    assert!(up.fit_residual.unwrap() < 1e-3);

    let tilted = cross_check(&F1Params::new(0.3, 0.0, 0.3 + FRAC_PI_2), &cfg, 200.0).unwrap();
    assert!(tilted.agree);
    let fitted: Vec<_> = tilted.fits.iter().map(|f| f.unwrap()).collect();
    assert!(fitted
        .iter()
        .any(|f| f.kind.shape() == EndShape::TiltedPlane));
    assert!(fitted.iter().all(|f| f.fit_residual.unwrap() < 1e-3));
}

#[test]
fn divergent_end_with_f3_is_logarithmic() {
    // λ = 0, μ = 1: the z → +∞ end has y diverging as well.
    let p = F1Params::new(0.0, 1.0, 2.0);
    let c = classify_f1(&p).unwrap();
    let ends = c.ends.unwrap();
    let i = ends
        .iter()
        .position(|e| e.kind.shape() == EndShape::Logarithmic)
        .unwrap();
    let check = cross_check(&p, &IntegratorConfig::precise(), 200.0).unwrap();
    assert!(check.agree);
    let fit = check.fits[i].unwrap();
    assert_eq!(fit.kind.shape(), EndShape::Logarithmic);
    assert!(fit.fit_residual.unwrap() < 1e-3);
}

#[test]
fn preset_end_classes() {
    let vertical = |c: &soltrans_core::classifier::TranslatorClass| {
        c.ends.unwrap().iter().map(|e| e.kind).collect::<Vec<_>>()
    };
    let fig4 = classify_f1(&F1Params::new(0.0, -1.0, 0.0)).unwrap();
    assert_eq!(fig4.family, Family::GeneralF1);
    assert!(vertical(&fig4)
        .iter()
        .all(|k| *k == EndKind::VerticalPlane { y_value: 0.0 }));
    let fig2 = classify_f1(&F1Params::new(PI / 4.0, 0.0, FRAC_PI_2)).unwrap();
    assert_eq!(fig2.family, Family::HalfPlaneGraph);
    let fig7 = classify_f1(&F1Params::new(3.0, 3.0, 2.0)).unwrap();
    assert!(vertical(&fig7)
        .iter()
        .all(|k| k.shape() == EndShape::Logarithmic));
}

/// First `s` (stepping outward) where `z` falls to `depth`, if it does.
fn y_at_depth(tr: &Trajectory, end: End, depth: f64) -> Option<f64> {
    (1..400).map(|k| end.sign() * 5.0 * k as f64).find_map(|s| {
        let st = tr.state_at(s)?;
        (st.z <= depth).then_some(st.y)
    })
}

#[test]
fn vertical_plane_ends_of_presets() {
    for (l, m, t) in [(0.0, -1.0, 0.0), (2.0, -1.0, 0.0)] {
        let p = F1Params::new(l, m, t);
        let tr = run(p, 30.0);
        for end in [End::Backward, End::Forward] {
            let y = y_at_depth(&tr, end, -12.0).unwrap();
            assert!((y + l / m).abs() < 1e-4, "({l}, {m}) {end:?}: y = {y}");
        }
    }
}

#[test]
fn vertical_existence_examples() {
    let x = KillingField::F3;
    let v = classify_vertical(&x, &KillingField::new(1.0, 1.0, 0.0)).unwrap();
    assert!(!v.exists);
    assert_eq!(v.witness.family, Family::NonExistent);
    let v = classify_vertical(&x, &KillingField::F1).unwrap();
    assert_eq!((v.exists, v.witness.family), (true, Family::VerticalPlaneY));
    let x = KillingField::new(0.7, -1.2, 2.0);
    let v = classify_vertical(&x, &x).unwrap();
    assert!(v.exists);
    assert_eq!((v.eta_tilde, v.lambda_tilde), (0.0, 0.0));
}

#[test]
fn slanted_examples() {
    let cfg = IntegratorConfig::default();
    let c = classify_slanted(1.0, &KillingField::F2, FRAC_PI_2, &cfg, 20.0).unwrap();
    assert_eq!(c.family, Family::SlantedGraph);
    let c = classify_slanted(1.0, &KillingField::F2, 0.0, &cfg, 20.0).unwrap();
    assert_eq!((c.family, c.tangency), (Family::SlantedPlaneZ0, true));
    // V = F₁ + bF₂ is the symmetry itself.
    let c = classify_slanted(2.0, &KillingField::new(1.0, 2.0, 0.0), 1.0, &cfg, 20.0).unwrap();
    assert_eq!((c.family, c.tangency), (Family::SlantedGraph, true));
    let c = classify_slanted(1.0, &KillingField::F3, 0.0, &cfg, 20.0).unwrap();
    assert_eq!(c.family, Family::NonExistent);
}

#[test]
fn plane_under_f3_is_not_a_slanted_translator() {
    // The plane z = 0 is (F₁ + F₂)-invariant and minimal, but ḡ(E₃, F₃) = 1.
    let m = |u: f64, s: f64| Point::new(u, u + s, 0.0);
    let f = fd_forms(m, 0.0, 0.0, DEFAULT_STEP).unwrap();
    let r = translator_residual(
        &f,
        Point::IDENTITY,
        KillingField::F3,
        DEFAULT_STEP,
        0.0,
        0.0,
    );
    assert!(r.error > 0.99, "{r:?}");
    let r = translator_residual(
        &f,
        Point::IDENTITY,
        KillingField::F2,
        DEFAULT_STEP,
        0.0,
        0.0,
    );
    assert!(r.error < 1e-6, "{r:?}");
}

#[test]
fn reductions() {
    let v = KillingField::new(1.0, 2.0, 3.0);
    assert_eq!(
        reduce(&KillingField::F1, &v, 0.5).unwrap(),
        Reduction::F1(F1Params::new(2.0, 3.0, 0.5))
    );
    assert_eq!(
        reduce(&KillingField::new(0.0, 2.0, 0.0), &v, 0.5).unwrap(),
        Reduction::MirroredF2(F1Params::new(1.0, -3.0, 0.5))
    );
    assert_eq!(
        reduce(&KillingField::new(2.0, 1.0, 0.0), &v, 0.5).unwrap(),
        Reduction::Slanted { b: 0.5, v }
    );
    assert_eq!(
        reduce(&KillingField::new(0.0, 0.0, 1.0), &v, 0.5).unwrap(),
        Reduction::Vertical
    );
    assert!(reduce(&KillingField::new(0.0, 0.0, 0.0), &v, 0.5).is_err());
    let c = classify(
        &KillingField::F3,
        &KillingField::new(1.0, 1.0, 0.0),
        0.0,
        &IntegratorConfig::default(),
        10.0,
    )
    .unwrap();
    assert_eq!(c.class.family, Family::NonExistent);
    assert!(c.verdict.is_some());
}

#[derive(Debug, Clone, Copy)]
enum Construction {
    Free,
    EtaZero,
    LambdaZero,
    Both,
}

fn vertical_pair() -> impl Strategy<Value = (KillingField, KillingField, Construction)> {
    let construction = prop_oneof![
        Just(Construction::Free),
        Just(Construction::EtaZero),
        Just(Construction::LambdaZero),
        Just(Construction::Both),
    ];
    (
        -2.0..2.0f64,
        -2.0..2.0f64,
        nonzero(0.2, 2.0),
        -2.0..2.0f64,
        -2.0..2.0f64,
        -2.0..2.0f64,
        construction,
    )
        .prop_map(|(a, b, c, eta, lambda, mu, kind)| {
            let t = mu / c;
            let (eta, lambda) = match kind {
                Construction::Free => (eta, lambda),
                Construction::EtaZero => (t * a, lambda),
                Construction::LambdaZero => (eta, t * b),
                Construction::Both => (t * a, t * b),
            };
            (
                KillingField::new(a, b, c),
                KillingField::new(eta, lambda, mu),
                kind,
            )
        })
        .prop_filter("V vanishes", |(_, v, _)| {
            v.c_f1 != 0.0 || v.c_f2 != 0.0 || v.c_f3 != 0.0
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vertical_existence_dichotomy((x, v, kind) in vertical_pair()) {
        let verdict = classify_vertical(&x, &v).unwrap();
        prop_assert_eq!(verdict.exists, verdict.lambda_tilde * verdict.eta_tilde == 0.0, "{:?}", kind);
        // The flow parameter c·u sweeps [−1, 1].
        let u_values: Vec<f64> = (0..9).map(|i| (-1.0 + 0.25 * i as f64) / x.c_f3.abs()).collect();
        if verdict.exists {
            let curve = match verdict.witness.family {
                Family::VerticalPlaneX => PlaneCurve::LineX { x0: 0.4 },
                _ => PlaneCurve::LineY { y0: -0.3 },
            };
            let report = u_independence_check(x, curve, v, 0.2, &u_values, DEFAULT_STEP).unwrap();
            prop_assert!(!report.u_dependent);
            prop_assert!(report.max_residual() < 1e-5, "{report:?}");
        } else {
            let curve = PlaneCurve::Circle { cx: 0.0, cy: 0.0, r: 1.0 };
            let report = u_independence_check(x, curve, v, 0.7, &u_values, DEFAULT_STEP).unwrap();
            prop_assert!(report.u_dependent, "{report:?}");
        }
    }
}

fn f1_draw() -> impl Strategy<Value = F1Params> {
    (
        nonzero(0.25, 3.0),
        prop_oneof![Just(0.0), nonzero(0.25, 3.0)],
        -PI..PI,
    )
        .prop_map(|(l, m, t)| F1Params::new(l, m, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_ends_without_f3(lambda in nonzero(0.25, 3.0), theta0 in -PI..PI) {
        let p = F1Params::new(lambda, 0.0, theta0);
        let c = classify_f1(&p).unwrap();
        prop_assume!(c.ends.is_some());
        let ends = c.ends.unwrap();
        let tr = run(p, 30.0);
        // The lower end is the one z decreases towards.
        let (lower, upper) = if tr.first().z < tr.last().z { (0, 1) } else { (1, 0) };
        let EndKind::HorizontalPlane { z0 } = ends[lower].kind else {
            return Err(TestCaseError::fail(format!("lower end {:?}", ends[lower])));
        };
        prop_assert!(tr.samples.iter().all(|st| st.z >= z0 - 1e-9));
        prop_assert!(ends[upper].kind.shape() != EndShape::VerticalPlane);
        // At least one finite z-limit.
        let shifted = p.shifted_angle();
        prop_assert!(theta_limits(&p).iter().any(|t| (t - shifted).abs() > 1e-9));
        // Strictly monotone height.
        let dir = (tr.last().z - tr.first().z).signum();
        prop_assert!(tr.samples.windows(2).all(|w| dir * (w[1].z - w[0].z) >= 0.0));
    }

    #[test]
    fn ends_with_f3(lambda in -3.0..3.0f64, mu in nonzero(0.25, 3.0), theta0 in -PI..PI) {
        let p = F1Params::new(lambda, mu, theta0);
        let c = classify_f1(&p).unwrap();
        prop_assume!(c.ends.is_some());
        let tr = run(p, 400.0);
        for (end, limit) in [End::Backward, End::Forward].into_iter().zip(theta_limits(&p)) {
            // z diverges linearly.
            prop_assert!(limit.sin().abs() > 1e-9);
            if end.sign() * limit.sin() > 0.0 {
                continue;
            }
            prop_assert_eq!(c.end(end).unwrap().kind, EndKind::VerticalPlane { y_value: -lambda / mu });
            // λ + μy = e^{z}·(θ − θ₀ + λ): go deep enough for the gap to be small.
            let k = (limit - p.shifted_angle()).abs() / mu.abs();
            let depth = (-12.0f64).min((1e-5 / k.max(1e-300)).ln());
            let y = y_at_depth(&tr, end, depth).unwrap();
            prop_assert!((y + lambda / mu).abs() < 1e-4, "{:?}: y = {}", end, y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbolic_and_fitted_ends_agree(p in f1_draw()) {
        // Ends converging slower than this do not settle within the horizon.
        let rate = |t: f64| ((f_eval(t + 1e-6, &p) - f_eval(t - 1e-6, &p)) / 2e-6).abs();
        prop_assume!(theta_limits(&p).iter().all(|t| rate(*t) > 20.0 / MAX_CHECK_HORIZON));
        let check = cross_check(&p, &IntegratorConfig::precise(), 200.0).unwrap();
        prop_assert!(check.agree, "{:?}", check);
    }
}
