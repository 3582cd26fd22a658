//! Symmetry and conservation properties over random inputs.

mod common;

use common::star;
use patchflow_core::analysis::{beurling_interior, holder_normal};
use patchflow_core::ellipse::{conserved, integrate_sampled};
use patchflow_core::field::BoundaryField;
use patchflow_core::geometry::{make_ellipse_contour, resample, Point2};
use patchflow_core::{Contour, Ellipse, KernelSpec};
use proptest::prelude::*;

fn star_strategy() -> impl Strategy<Value = Contour> {
    (-0.08..0.08f64, 0.0..6.3f64, -0.06..0.06f64, 0.0..6.3f64, -0.04..0.04f64, 0.0..6.3f64)
        .prop_map(|(c2, p2, c3, p3, c5, p5)| star(128, &[(2, c2, p2), (3, c3, p3), (5, c5, p5)]))
}

fn interior_point() -> impl Strategy<Value = Point2> {
    (0.0..0.5f64, 0.0..6.3f64).prop_map(|(r, t)| Point2::from_angle(t) * r)
}

fn exterior_point() -> impl Strategy<Value = Point2> {
    (1.6..3.0f64, 0.0..6.3f64).prop_map(|(r, t)| Point2::from_angle(t) * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_invariance(c in star_strategy(), x in interior_point(), sx in -2.0..2.0f64, sy in -2.0..2.0f64) {
        let s = Point2::new(sx, sy);
        let moved = c.translate(s);
        for k in [KernelSpec::cauchy(), KernelSpec::aggregation()] {
            let v0 = BoundaryField::new(&c, k).unwrap().velocity(x).v;
            let v1 = BoundaryField::new(&moved, k).unwrap().velocity(x + s).v;
            prop_assert!((v0 - v1).norm() < 1e-11);
        }
    }

    #[test]
    fn reflection_symmetry(c in star_strategy(), x in exterior_point()) {
        // R = reflection across the x-axis: k(Rz) = R k(z) for Cauchy and
        // aggregation, k(Rz) = -R k(z) for Euler
        let r = c.reflect_x();
        for (k, sign) in [(KernelSpec::cauchy(), 1.0), (KernelSpec::aggregation(), 1.0), (KernelSpec::euler(), -1.0)] {
            let v = BoundaryField::new(&c, k).unwrap().velocity(x).v;
            let vr = BoundaryField::new(&r, k).unwrap().velocity(x.conj()).v;
            prop_assert!((vr - v.conj() * sign).norm() < 1e-11);
        }
    }

    #[test]
    fn rotation_covariance(c in star_strategy(), x in interior_point(), phi in 0.0..6.3f64) {
        // Cauchy: v_rot(e^{i phi} z) = e^{-i phi} v(z); Euler and aggregation rotate with the patch
        let rc = c.rotate(phi);
        let vc = BoundaryField::new(&c, KernelSpec::cauchy()).unwrap().velocity(x).v;
        let vrc = BoundaryField::new(&rc, KernelSpec::cauchy()).unwrap().velocity(x.rotate(phi)).v;
        prop_assert!((vrc - vc.rotate(-phi)).norm() < 1e-11);
        let ve = BoundaryField::new(&c, KernelSpec::euler()).unwrap().velocity(x).v;
        let vre = BoundaryField::new(&rc, KernelSpec::euler()).unwrap().velocity(x.rotate(phi)).v;
        prop_assert!((vre - ve.rotate(phi)).norm() < 1e-11);
    }

    #[test]
    fn velocity_is_linear_in_kernel_scale(c in star_strategy(), x in interior_point(), s in 0.1..5.0f64) {
        let v = BoundaryField::new(&c, KernelSpec::cauchy()).unwrap().velocity(x).v;
        let vs = BoundaryField::new(&c, KernelSpec::cauchy().with_scale(s)).unwrap().velocity(x).v;
        prop_assert!((vs - v * s).norm() < 1e-12 * (1.0 + v.norm() * s));
    }

    #[test]
    fn euler_field_is_divergence_free(c in star_strategy(), x in interior_point()) {
        let f = BoundaryField::new(&c, KernelSpec::euler()).unwrap();
        prop_assert!(f.divergence(x).unwrap().abs() < 1e-10);
    }

    #[test]
    fn aggregation_divergence_is_minus_one_inside(c in star_strategy(), x in interior_point()) {
        // -grad N * chi_D has divergence -chi_D
        let f = BoundaryField::new(&c, KernelSpec::aggregation()).unwrap();
        prop_assert!((f.divergence(x).unwrap() + 1.0).abs() < 1e-10);
    }

    #[test]
    fn cauchy_dbar_is_one_in_any_patch(c in star_strategy(), x in interior_point()) {
        let s = beurling_interior(&c, x).unwrap();
        prop_assert!((s.dbar_v.re - 1.0).abs() < 1e-10 && s.dbar_v.im.abs() < 1e-10);
    }

    #[test]
    fn ellipse_ode_conserves_invariants(a in 1.1..4.0f64, b in 0.2..1.0f64, th in 0.0..1.5f64) {
        let s0 = Ellipse::new(a, b, th);
        let c0 = conserved(&s0);
        let traj = integrate_sampled(&s0, 2.0, 1e-3, 100).unwrap();
        for s in &traj {
            let c = s.conserved();
            prop_assert!((c.sum_ab - c0.sum_ab).abs() < 1e-12);
            prop_assert!((c.skew - c0.skew).abs() < 1e-9);
        }
    }

    #[test]
    fn moments_follow_the_contour(c in star_strategy(), sx in -2.0..2.0f64, phi in 0.0..3.1f64) {
        let m0 = c.moments();
        let moved = c.rotate(phi).translate(Point2::new(sx, 0.5));
        let m1 = moved.moments();
        prop_assert!((m0.area - m1.area).abs() < 1e-12);
        prop_assert!((m1.centroid - (m0.centroid.rotate(phi) + Point2::new(sx, 0.5))).norm() < 1e-12);
        let tr0 = m0.second[0][0] + m0.second[1][1];
        let tr1 = m1.second[0][0] + m1.second[1][1];
        prop_assert!((tr0 - tr1).abs() < 1e-12);
        prop_assert!(c.polygon_area() > 0.0);
    }

    #[test]
    fn fit_round_trip(a in 0.5..4.0f64, ratio in 0.1..0.95f64, th in -1.5..1.5f64) {
        let b = a * ratio;
        let f = make_ellipse_contour(a, b, th, 512).unwrap().fit_ellipse().unwrap();
        prop_assert!((f.a - a).abs() < 1e-6 && (f.b - b).abs() < 1e-6);
        prop_assert!((f.theta - th).abs() < 1e-6);
    }

    #[test]
    fn resampling_preserves_shape(c in star_strategy()) {
        let r = resample(&c, 200).unwrap();
        prop_assert_eq!(r.len(), 200);
        prop_assert!(r.is_simple());
        prop_assert!((r.area() - c.area()).abs() < 1e-5);
        prop_assert!(r.spacing_ratio() < 1.05);
    }

    #[test]
    fn holder_seminorm_decreases_with_exponent(c in star_strategy()) {
        // for unit-scale contours |X_i - X_j| <= 2.5 so d^-gamma shrinks slowly;
        // the Lipschitz constant dominates the gamma = 1/2 value up to 2.5^(1/2)
        let h1 = holder_normal(&c, 1.0).unwrap();
        let h5 = holder_normal(&c, 0.5).unwrap();
        prop_assert!(h5 <= h1 * 2.5f64.sqrt() + 1e-12);
        prop_assert!(h1 > 0.0);
    }

    #[test]
    fn star_contours_are_simple(c in star_strategy()) {
        prop_assert!(c.is_simple());
    }
}
