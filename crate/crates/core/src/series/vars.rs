//! Conversions between the four expansion variables s, w, v, u.
//!
//! With s = sinh(2J/kT): w = (1/2)s/(1+s^2) is the self-dual variable,
//! v = s/2 (high temperature) or s_L/2 (low temperature), and u = v^2.
//! Setting s = 2v gives w = v/(1+4v^2). All conversions are series
//! substitutions over the rationals, audited here once and shared by
//! every consumer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::ring::{Coeff, CoefficientRing};
use crate::series::series::TruncatedSeries;

/// w as a series in v: w(v) = v/(1+4v^2) = v - 4v^3 + 16v^5 - ...
pub fn w_of_v(order: usize) -> TruncatedSeries {
    let ring = CoefficientRing::Rational;
    let denom = TruncatedSeries::from_pairs("v", ring, order, &[(0, 1), (2, 4)]);
    let v = TruncatedSeries::from_pairs("v", ring, order, &[(1, 1)]);
    v.mul(&denom.inverse().expect("unit constant"))
        .expect("same ring")
}

/// The Landen argument 4v/(1+4v^2) = 4*w(v).
pub fn landen_of_v(order: usize) -> TruncatedSeries {
    let four = Coeff::Rational(BigRational::from(BigInt::from(4)));
    w_of_v(order).scalar_mul(&four).expect("rational scalar")
}

/// Substitute w = v/(1+4v^2) into a w-series over the rationals,
/// producing a v-series with precision min(N_f, order).
pub fn w_series_to_v(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if f.variable() != "w" {
        return Err(Error::VariableMismatch {
            left: f.variable().to_string(),
            right: "w".to_string(),
        });
    }
    f.compose(&w_of_v(order))
}

/// Reinterpret an even v-series as a series in u = v^2. Errors if any
/// stored odd-order coefficient is nonzero. Precision floor(N/2).
pub fn v_series_to_u(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    for (k, c) in f.coeffs().iter().enumerate() {
        if k % 2 == 1 && !c.is_zero() {
            return Err(Error::Unsupported(format!(
                "series has a nonzero odd coefficient at order {k}; not a function of u = v^2"
            )));
        }
    }
    let n = f.precision() / 2;
    let coeffs = (0..=n).map(|k| f.coeffs()[2 * k].clone()).collect();
    TruncatedSeries::new("u", *f.ring(), coeffs)
}

/// u-series back to v via u = v^2 (precision upgrades to 2N+1).
pub fn u_series_to_v(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    Ok(f.substitute_power(2)?.with_variable("v"))
}

/// One rational coefficient shorthand.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// x as a series, over any ring.
pub fn identity_series(
    variable: &str,
    ring: CoefficientRing,
    order: usize,
) -> TruncatedSeries {
    TruncatedSeries::from_pairs(variable, ring, order, &[(1, 1)])
}
