//! Exact truncated power-series arithmetic over three coefficient rings.

pub mod ring;
#[allow(clippy::module_inception)]
pub mod series;
pub mod vars;

pub use ring::{is_prime_u64, Coeff, CoefficientRing, Modulus};
pub use series::TruncatedSeries;
