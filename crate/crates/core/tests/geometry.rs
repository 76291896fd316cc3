use proptest::prelude::*;
use soltrans_core::geometry::{
    coord_to_frame, flow, inner, killing_residual, CoordVector, KillingField, Point,
};

fn point() -> impl Strategy<Value = Point> {
    (-3.0..3.0f64, -3.0..3.0f64, -2.0..2.0f64).prop_map(|(x, y, z)| Point::new(x, y, z))
}

fn field() -> impl Strategy<Value = KillingField> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_filter("nonzero", |(a, b, c)| a.abs() + b.abs() + c.abs() > 1e-3)
        .prop_map(|(a, b, c)| KillingField::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(p in point(), q in point(), r in point()) {
        let lhs = p.compose(q).compose(r);
        let rhs = p.compose(q.compose(r));
        prop_assert!(lhs.max_abs_diff(rhs) < 1e-12, "{lhs:?} vs {rhs:?}");
        prop_assert!(p.compose(p.inverse()).max_abs_diff(Point::IDENTITY) < 1e-12);
        prop_assert!(p.inverse().compose(p).max_abs_diff(Point::IDENTITY) < 1e-12);
        prop_assert_eq!(p.compose(Point::IDENTITY), p);
        prop_assert_eq!(Point::IDENTITY.compose(p), p);
    }

    // The differential of L_p at q, pushed through by central differences,
    // preserves the metric.
    #[test]
    fn left_translations_are_isometries(
        p in point(), q in point(),
        v in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
    ) {
        let v = CoordVector::new(v.0, v.1, v.2);
        let h = 1e-5;
        let at = |t: f64| p.compose(Point::new(q.x + t * v.vx, q.y + t * v.vy, q.z + t * v.vz));
        let pushed = at(h).coord_diff(at(-h), 2.0 * h);
        let before = inner(q, v, v);
        let after = inner(p.compose(q), pushed, pushed);
        prop_assert!((before - after).abs() < 1e-7 * (1.0 + before));
        // Frame components are what left translation keeps.
        let fa = coord_to_frame(v, q);
        let fb = coord_to_frame(pushed, p.compose(q));
        prop_assert!((fa - fb).max_abs() < 1e-6 * (1.0 + fa.max_abs()));
    }

    #[test]
    fn killing_fields_are_killing(k in field(), p in point()) {
        prop_assert!(killing_residual(k, p, 1e-4).unwrap() < 1e-6);
    }

    #[test]
    fn flow_is_a_homomorphism(k in field(), t in -2.0..2.0f64, s in -2.0..2.0f64) {
        let joint = flow(k, t + s).unwrap();
        let split = flow(k, t).unwrap().compose(flow(k, s).unwrap());
        prop_assert!(joint.max_abs_diff(split) < 1e-10, "{joint:?} vs {split:?}");
    }
}

#[test]
fn basis_fields_have_small_residuals() {
    for k in [KillingField::F1, KillingField::F2, KillingField::F3] {
        for p in [
            Point::IDENTITY,
            Point::new(1.0, -2.0, 0.5),
            Point::new(-0.3, 0.7, -1.5),
        ] {
            assert!(killing_residual(k, p, 1e-4).unwrap() < 1e-6);
        }
    }
}

#[test]
fn flow_of_f3_is_the_expected_curve() {
    // (a/c)(1 − e^{−ct}), (b/c)(e^{ct} − 1), ct
    let k = KillingField::new(2.0, -1.0, 0.5);
    let t: f64 = 1.3;
    let p = flow(k, t).unwrap();
    let expected = Point::new(
        4.0 * (1.0 - (-0.5 * t).exp()),
        -2.0 * ((0.5 * t).exp() - 1.0),
        0.5 * t,
    );
    assert!(p.max_abs_diff(expected) < 1e-14);
    assert!(flow(KillingField::new(0.0, 0.0, 0.0), 1.0).is_err());
}
