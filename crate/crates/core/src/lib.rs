//! Exact-arithmetic laboratory for truncated formal power series over the
//! rationals, the integers, and Z/p^r.
//!
//! The crate provides:
//! - [`series`]: the series engine (arithmetic, composition, Frobenius
//!   substitution, modular reduction) with sound precision tracking;
//! - [`linalg`]: dense linear algebra over Z/p^r (Howell normal form,
//!   nullspaces with p-torsion generators);
//! - [`genlib`]: named closed-form generators, the fixture registry of
//!   printed susceptibility coefficient tables, and the fixture file format;
//! - [`congruence`]: discovery and verification of Frobenius-linear
//!   functional equations and algebraic relations modulo prime powers;
//! - [`automaton`]: p-kernel closure of a mod-p series into a DFAO;
//! - [`diagonal`]: multivariate rational-function expansion and diagonal
//!   extraction;
//! - [`campaign`]: the named verification campaign over the full catalog
//!   of congruences, functional equations and lacunary identities.

pub mod automaton;
pub mod campaign;
pub mod congruence;
pub mod diagonal;
pub mod error;
pub mod genlib;
pub mod linalg;
pub mod series;

pub use error::{Error, Result};
pub use series::{Coeff, CoefficientRing, Modulus, TruncatedSeries};
