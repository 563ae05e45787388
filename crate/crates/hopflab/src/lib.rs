//! Exact computational workbench for finite-dimensional Hopf algebras.
//!
//! Everything is structure constants over an exact field (rationals or a
//! prime field), so every check in this crate is a decision, not an
//! approximation. The main objects:
//!
//! * [`hopf::HopfAlgebra`]: multiplication, comultiplication, antipode as
//!   explicit tables, with a full axiom verifier.
//! * [`forms`]: linear and bilinear forms under convolution, with exact
//!   convolution inverses.
//! * [`cocycles`]: cocycle and laziness predicates, coboundaries, and
//!   twisted algebras.
//! * [`enumeration`]: exhaustive classification of lazy cocycles over small
//!   prime fields.
//! * [`double`] / [`biproduct`]: the two standard constructions, together
//!   with cocycle extension along each.
//! * [`twines`]: categorical structures on corepresentations, realised as
//!   concrete matrices.
//!
//! The [`catalog`] has small built-in algebras used throughout the tests,
//! and [`suite`] bundles the end-to-end checks the CLI exposes.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod report;
pub mod hopf;
pub mod catalog;
pub mod forms;
pub mod comodule;
pub mod cocycles;
pub mod enumeration;
pub mod biproduct;
pub mod double;
pub mod twines;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
