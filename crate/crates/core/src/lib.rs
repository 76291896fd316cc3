//! Invariant translating solitons of mean curvature flow in `Sol₃`.
//!
//! `Sol₃` is `ℝ³` with the group law
//! `(x₁,y₁,z₁)⋆(x₂,y₂,z₂) = (x₁ + e^{-z₁}x₂, y₁ + e^{z₁}y₂, z₁ + z₂)` and the
//! left-invariant metric `e^{2z}dx² + e^{-2z}dy² + dz²`. A surface is a
//! translator in the direction of a Killing field `V` when `H = ḡ(ν, V)`,
//! with `H` the *sum* of the principal curvatures.
//!
//! The crate is `no_std` (with `alloc`). File formats and the command line
//! live in the `soltrans` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub(crate) mod math;

pub mod classifier;
pub mod geometry;
pub mod ode;
pub mod profile;
pub mod surface;
pub mod verifier;

pub use geometry::{CoordVector, FrameVector, KillingField, Point};
pub use ode::IntegratorConfig;
pub use profile::{F1Params, ProfileState, SlantedParams, Trajectory};
