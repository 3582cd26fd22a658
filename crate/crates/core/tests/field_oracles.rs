//! Boundary-integral velocities against area-quadrature oracles.

mod common;

use common::*;
use patchflow_core::cde::rhs;
use patchflow_core::field::BoundaryField;
use patchflow_core::geometry::{make_ellipse_contour, Point2};
use patchflow_core::{ellipse, Ellipse, KernelSpec};
use std::f64::consts::PI;

fn kernels() -> [KernelSpec; 4] {
    [
        KernelSpec::cauchy(),
        KernelSpec::euler(),
        KernelSpec::aggregation(),
        KernelSpec::linear_map([[0.4, -1.2], [0.7, 0.3]]),
    ]
}

#[test]
fn interior_velocity_matches_polar_oracle() {
    let e = Ellipse::new(2.0, 1.0, PI / 6.0);
    let c = make_ellipse_contour(e.a, e.b, e.theta, 256).unwrap();
    for k in kernels() {
        let f = BoundaryField::new(&c, k).unwrap();
        for x in [Point2::new(0.1, 0.2), Point2::new(-1.2, -0.5), Point2::new(1.5, 0.6)] {
            let err = (f.velocity(x).v - polar_velocity_interior(&k, &e, x)).norm();
            assert!(err < 1e-9, "{k:?} at {x:?}: {err:e}");
        }
    }
}

#[test]
fn exterior_velocity_matches_elliptic_oracle() {
    let e = Ellipse::new(2.0, 1.0, 0.4);
    let c = make_ellipse_contour(e.a, e.b, e.theta, 256).unwrap();
    for k in kernels() {
        let f = BoundaryField::new(&c, k).unwrap();
        for x in [Point2::new(3.0, 0.5), Point2::new(-0.5, 2.5)] {
            let err = (f.velocity(x).v - elliptic_velocity_exterior(&k, &e, x)).norm();
            assert!(err < 1e-9, "{k:?} at {x:?}: {err:e}");
        }
    }
}

#[test]
fn marker_velocities_match_boundary_oracle() {
    let e = Ellipse::new(2.0, 1.0, 0.3);
    let n = 256;
    let c = make_ellipse_contour(e.a, e.b, e.theta, n).unwrap();
    for k in kernels() {
        let v = rhs(&c, &k).unwrap();
        for i in [0, 17, 64, 101, 200] {
            let t = 2.0 * PI * i as f64 / n as f64;
            let err = (v[i] - polar_velocity_boundary(&k, &e, t)).norm();
            assert!(err < 1e-9, "{k:?} marker {i}: {err:e}");
        }
    }
}

#[test]
fn cauchy_interior_field_has_closed_form() {
    for e in [Ellipse::new(2.0, 1.0, 0.0), Ellipse::new(2.0, 1.0, PI / 6.0), Ellipse::new(3.0, 0.4, -1.0)] {
        for x in [Point2::new(0.3, 0.1), Point2::new(-0.2, 0.25)] {
            let o = polar_velocity_interior(&KernelSpec::cauchy(), &e, x);
            assert!((ellipse::interior_velocity(&e, x) - o).norm() < 1e-10);
        }
    }
}

#[test]
fn kirchhoff_field_and_rotation_rate() {
    // interior Euler field of the (2, 1) ellipse is (-a y, b x)/(a + b)
    let e = Ellipse::new(2.0, 1.0, 0.0);
    let k = KernelSpec::euler();
    let x = Point2::new(0.4, -0.3);
    let o = polar_velocity_interior(&k, &e, x);
    assert!((o - Point2::new(-2.0 * x.y, x.x) / 3.0).norm() < 1e-11);
    // shape rotation from Q' = -(A^T Q + Q A) with Q = diag(1/a^2, 1/b^2)
    let g = fd_grad(|p| polar_velocity_interior(&k, &e, p), Point2::new(0.1, 0.1), 1e-3);
    let (qa, qb) = (1.0 / 4.0, 1.0);
    let q01 = -(g[0][1] * qa + qb * g[1][0]);
    let omega = q01 / (qa - qb);
    assert!((omega - 2.0 / 9.0).abs() < 1e-8, "{omega}");
}

#[test]
fn aggregation_vertex_speed() {
    let e = Ellipse::new(2.0, 1.0, 0.0);
    let k = KernelSpec::aggregation();
    let v = polar_velocity_boundary(&k, &e, 0.0);
    assert!((v.x + 2.0 / 3.0).abs() < 1e-11 && v.y.abs() < 1e-11);
    let x = Point2::new(0.5, 0.2);
    let o = polar_velocity_interior(&k, &e, x);
    assert!((o + Point2::new(1.0 * x.x, 2.0 * x.y) / 3.0).norm() < 1e-11);
}

#[test]
fn spectral_tangents_beat_centered_differences() {
    use patchflow_core::geometry::TangentScheme;
    let e = Ellipse::new(2.0, 1.0, 0.3);
    let c = make_ellipse_contour(e.a, e.b, e.theta, 128).unwrap();
    let x = Point2::new(0.2, 0.1);
    let exact = polar_velocity_interior(&KernelSpec::cauchy(), &e, x);
    let spec = BoundaryField::new(&c, KernelSpec::cauchy()).unwrap().velocity(x).v;
    let cd = BoundaryField::with_scheme(&c, KernelSpec::cauchy(), TangentScheme::CenteredDifference)
        .unwrap()
        .velocity(x)
        .v;
    let (es, ec) = ((spec - exact).norm(), (cd - exact).norm());
    assert!(es < 1e-10 && ec > 1e-5 && ec < 1e-2, "{es:e} {ec:e}");
}
