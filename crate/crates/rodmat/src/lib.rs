//! Exact computer algebra and numerical verification for the patching
//! matrices of stationary axisymmetric (Lorentzian) and toric (Riemannian)
//! Ricci-flat 4-metrics.
//!
//! The crate is organized around five pieces:
//!
//! - [`exact`]: arbitrary-precision rational, polynomial and rational-function
//!   arithmetic — the carrier for every patching-matrix entry.
//! - [`patching`]: the [`patching::PatchingMatrix`] type and the structural
//!   operations on it (determinant identity, node passing, pole auditing,
//!   asymptotic classification, charge extraction, conjugation search).
//! - [`catalogue`]: the known metric families as executable data, each behind
//!   the [`catalogue::Family`] trait and registered by name.
//! - [`inverse`]: rod structure + asymptotic charges → patching matrix, by
//!   building the determinant-condition polynomial system and solving it
//!   exactly (with Sturm-isolated real roots when irrational).
//! - [`splitting`]: numeric reconstruction of the Ernst potential from a
//!   patching matrix via contour integration, with finite-difference
//!   verification of harmonicity and Yang's equation.

pub mod catalogue;
pub mod exact;
pub mod inverse;
pub mod patching;
pub mod schema;
pub mod splitting;
