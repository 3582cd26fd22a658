//! Diagnostics for singular integrals, regularity and run monitoring.

mod beurling;
mod commutator;
mod diagnostics;
mod holder;
mod pv;
mod vasin;

pub use beurling::{beurling_interior, BeurlingSample};
pub use commutator::{commutator_identity, CommutatorResult, TestField};
pub use diagnostics::{diagnostics, DiagnosticsRecord, DIAGNOSTIC_HOLDER_GAMMA};
pub use holder::holder_normal;
pub use pv::{pv_boundary, pv_solid, BoundaryKernel, Density, PvResult, SolidKernel};
pub use vasin::{vasin_profile, ProbeSet, VasinProfile};
