//! Contour dynamics for two-dimensional patches.
//!
//! A patch `D` is represented by a closed counterclockwise contour of
//! markers. For a kernel `k` that is homogeneous of degree -1 the velocity
//! `v = k * chi_D` is evaluated as a boundary integral, markers are advected
//! with it, and the exact ellipse solution of the Cauchy-kernel problem is
//! available as an oracle. The [`analysis`] module adds principal-value,
//! Beurling-transform, commutator and regularity diagnostics.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cde;
pub mod ellipse;
pub mod error;
pub mod field;
pub mod geometry;
pub mod kernels;
pub mod quadrature;

pub use cde::{evolve, rhs, step, Integrator, SimConfig, Trajectory};
pub use error::{Error, Result};
pub use geometry::{Contour, Ellipse, Mat2, Point2};
pub use kernels::{DeltaConstants, KernelKind, KernelSpec};
