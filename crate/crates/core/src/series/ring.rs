//! Coefficient rings: exact rationals, exact integers, and Z/p^r.
//!
//! A [`Modulus`] is always a prime power with `p` and `r` recorded
//! separately; arbitrary composite moduli are rejected at construction.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A prime-power modulus m = p^r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    r: u32,
    m: u64,
}

impl Modulus {
    /// Build p^r, checking that `p` is prime (deterministic Miller-Rabin),
    /// `r >= 1`, and that p^r fits in a u64.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidModulus(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidModulus("exponent r must be >= 1".into()));
        }
        let mut m: u64 = 1;
        for _ in 0..r {
            m = m
                .checked_mul(p)
                .ok_or_else(|| Error::InvalidModulus(format!("{p}^{r} overflows u64")))?;
        }
        Ok(Modulus { p, r, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// Reduce a signed machine integer into [0, m).
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.m as i64) as u64
    }

    /// Reduce a big integer into [0, m).
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.m);
        let mut rem = v % &m;
        if rem.is_negative() {
            rem += &m;
        }
        let digits = rem.to_u64_digits().1;
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = (a as u128 + b as u128) % self.m as u128;
        s as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.m - (b - a)
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    /// Inverse of a unit (gcd(a, m) = 1); None for non-units.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128, self.m as i128);
        if g != 1 {
            return None;
        }
        Some(x.rem_euclid(self.m as i128) as u64)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.m;
        base %= self.m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// p-adic valuation of a residue; `None` for 0 (valuation is +inf).
    pub fn valuation(&self, a: u64) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// Split a nonzero residue as (valuation, unit) with a = p^v * unit.
    pub fn val_unit(&self, a: u64) -> Option<(u32, u64)> {
        let v = self.valuation(a)?;
        let mut u = a;
        for _ in 0..v {
            u /= self.p;
        }
        Some((v, u % self.m))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{} = {}", self.p, self.r, self.m)
        }
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Deterministic Miller-Rabin for u64 (the witness set below is exact
/// for all 64-bit integers).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The three coefficient rings a series can live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRing {
    Rational,
    Integer,
    Mod(Modulus),
}

impl CoefficientRing {
    pub fn modulus(&self) -> Option<Modulus> {
        match self {
            CoefficientRing::Mod(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rational => write!(f, "rational"),
            CoefficientRing::Integer => write!(f, "integer"),
            CoefficientRing::Mod(m) => write!(f, "mod {}", m.value()),
        }
    }
}

/// A single coefficient, tagged by ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Rational(BigRational),
    Integer(BigInt),
    Residue(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_zero(),
            Coeff::Integer(x) => x.is_zero(),
            Coeff::Residue(x) => *x == 0,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Coeff::Residue(x) => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Integer(x) => write!(f, "{x}"),
            Coeff::Residue(x) => write!(f, "{x}"),
        }
    }
}

impl CoefficientRing {
    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientRing::Rational => Coeff::Rational(BigRational::zero()),
            CoefficientRing::Integer => Coeff::Integer(BigInt::zero()),
            CoefficientRing::Mod(_) => Coeff::Residue(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientRing::Rational => Coeff::Rational(BigRational::one()),
            CoefficientRing::Integer => Coeff::Integer(BigInt::one()),
            CoefficientRing::Mod(m) => Coeff::Residue(1 % m.value()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoefficientRing::Rational => Coeff::Rational(BigRational::from(BigInt::from(v))),
            CoefficientRing::Integer => Coeff::Integer(BigInt::from(v)),
            CoefficientRing::Mod(m) => Coeff::Residue(m.reduce_i64(v)),
        }
    }

    /// Coerce an arbitrary coefficient value into this ring, reducing
    /// residues; mixed kinds are a caller bug and error out.
    pub fn check(&self, c: Coeff) -> Result<Coeff> {
        match (self, c) {
            (CoefficientRing::Rational, Coeff::Rational(x)) => Ok(Coeff::Rational(x)),
            (CoefficientRing::Integer, Coeff::Integer(x)) => Ok(Coeff::Integer(x)),
            (CoefficientRing::Mod(m), Coeff::Residue(x)) => Ok(Coeff::Residue(x % m.value())),
            (ring, c) => Err(Error::RingMismatch {
                left: ring.to_string(),
                right: format!("{c:?}"),
            }),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Rational, Coeff::Rational(x), Coeff::Rational(y)) => {
                Coeff::Rational(x + y)
            }
            (CoefficientRing::Integer, Coeff::Integer(x), Coeff::Integer(y)) => {
                Coeff::Integer(x + y)
            }
            (CoefficientRing::Mod(m), Coeff::Residue(x), Coeff::Residue(y)) => {
                Coeff::Residue(m.add(*x, *y))
            }
            _ => unreachable!("ring/coefficient kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Rational, Coeff::Rational(x), Coeff::Rational(y)) => {
                Coeff::Rational(x - y)
            }
            (CoefficientRing::Integer, Coeff::Integer(x), Coeff::Integer(y)) => {
                Coeff::Integer(x - y)
            }
            (CoefficientRing::Mod(m), Coeff::Residue(x), Coeff::Residue(y)) => {
                Coeff::Residue(m.sub(*x, *y))
            }
            _ => unreachable!("ring/coefficient kind mismatch"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientRing::Rational, Coeff::Rational(x)) => Coeff::Rational(-x),
            (CoefficientRing::Integer, Coeff::Integer(x)) => Coeff::Integer(-x),
            (CoefficientRing::Mod(m), Coeff::Residue(x)) => Coeff::Residue(m.neg(*x)),
            _ => unreachable!("ring/coefficient kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Rational, Coeff::Rational(x), Coeff::Rational(y)) => {
                Coeff::Rational(x * y)
            }
            (CoefficientRing::Integer, Coeff::Integer(x), Coeff::Integer(y)) => {
                Coeff::Integer(x * y)
            }
            (CoefficientRing::Mod(m), Coeff::Residue(x), Coeff::Residue(y)) => {
                Coeff::Residue(m.mul(*x, *y))
            }
            _ => unreachable!("ring/coefficient kind mismatch"),
        }
    }

    /// Multiplicative inverse of a unit; errors for zero rationals,
    /// non-±1 integers, and residues sharing a factor with p.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (CoefficientRing::Rational, Coeff::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::NonUnitConstant)
                } else {
                    Ok(Coeff::Rational(x.recip()))
                }
            }
            (CoefficientRing::Integer, Coeff::Integer(x)) => {
                if x.is_one() || (-x).is_one() {
                    Ok(Coeff::Integer(x.clone()))
                } else {
                    Err(Error::NonUnitConstant)
                }
            }
            (CoefficientRing::Mod(m), Coeff::Residue(x)) => {
                m.inv(*x).map(Coeff::Residue).ok_or(Error::NonUnitConstant)
            }
            _ => unreachable!("ring/coefficient kind mismatch"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_construction() {
        let m = Modulus::new(2, 5).unwrap();
        assert_eq!(m.value(), 32);
        assert_eq!(m.prime(), 2);
        assert_eq!(m.exponent(), 5);
        assert!(Modulus::new(4, 1).is_err());
        assert!(Modulus::new(2, 0).is_err());
        assert!(Modulus::new(1, 3).is_err());
        assert!(Modulus::new(2, 64).is_err()); // 2^64 overflows
        assert!(Modulus::new(2, 63).is_ok());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(u64::MAX));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn residue_arithmetic() {
        let m = Modulus::new(2, 2).unwrap();
        assert_eq!(m.add(3, 3), 2); // 6 mod 4
        assert_eq!(m.sub(1, 3), 2);
        assert_eq!(m.mul(2, 2), 0);
        assert_eq!(m.inv(3), Some(3));
        assert_eq!(m.inv(2), None);
        assert_eq!(m.valuation(2), Some(1));
        assert_eq!(m.valuation(0), None);
        assert_eq!(m.val_unit(2), Some((1, 1)));
    }

    #[test]
    fn bigint_reduction() {
        let m = Modulus::new(3, 2).unwrap();
        assert_eq!(m.reduce_bigint(&BigInt::from(-1)), 8);
        assert_eq!(m.reduce_bigint(&BigInt::from(10)), 1);
        assert_eq!(m.reduce_bigint(&BigInt::from(0)), 0);
    }
}
