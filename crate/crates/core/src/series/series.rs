//! Truncated formal power series with explicit precision tracking.
//!
//! A series stores the exact coefficients of x^0 .. x^N and nothing else;
//! the error is O(x^{N+1}). Precision never overstates what is known:
//! binary operations truncate to the minimum of the operand precisions,
//! while `substitute_power(f, k)` upgrades precision to k*N + (k-1)
//! because every omitted term of f lands above that order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::ring::{Coeff, CoefficientRing, Modulus};

/// A finite prefix of a one-variable formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    variable: String,
    ring: CoefficientRing,
    /// Exactly precision+1 entries, index = exponent, reduced into the ring.
    coeffs: Vec<Coeff>,
}

impl TruncatedSeries {
    /// Build a series from dense coefficients c_0..c_N. Residues are
    /// reduced into [0, m); a coefficient of the wrong kind errors.
    pub fn new(
        variable: impl Into<String>,
        ring: CoefficientRing,
        coeffs: Vec<Coeff>,
    ) -> Result<Self> {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        let coeffs = coeffs
            .into_iter()
            .map(|c| ring.check(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            variable: variable.into(),
            ring,
            coeffs,
        })
    }

    pub fn zero(variable: impl Into<String>, ring: CoefficientRing, precision: usize) -> Self {
        TruncatedSeries {
            variable: variable.into(),
            ring,
            coeffs: vec![ring.zero(); precision + 1],
        }
    }

    pub fn one(variable: impl Into<String>, ring: CoefficientRing, precision: usize) -> Self {
        let mut s = Self::zero(variable, ring, precision);
        s.coeffs[0] = ring.one();
        s
    }

    pub fn constant(
        variable: impl Into<String>,
        ring: CoefficientRing,
        value: Coeff,
        precision: usize,
    ) -> Result<Self> {
        let mut s = Self::zero(variable, ring, precision);
        s.coeffs[0] = ring.check(value)?;
        Ok(s)
    }

    pub fn monomial(
        variable: impl Into<String>,
        ring: CoefficientRing,
        value: Coeff,
        exponent: usize,
        precision: usize,
    ) -> Result<Self> {
        assert!(exponent <= precision, "monomial exponent beyond precision");
        let mut s = Self::zero(variable, ring, precision);
        s.coeffs[exponent] = ring.check(value)?;
        Ok(s)
    }

    /// Dense construction from small integers (handy in tests and
    /// generators); values are mapped into the ring.
    pub fn from_i64(
        variable: impl Into<String>,
        ring: CoefficientRing,
        values: &[i64],
    ) -> Self {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        TruncatedSeries {
            variable: variable.into(),
            ring,
            coeffs,
        }
    }

    /// Sparse construction: `pairs` are (exponent, value), everything
    /// else is zero through `precision`.
    pub fn from_pairs(
        variable: impl Into<String>,
        ring: CoefficientRing,
        precision: usize,
        pairs: &[(usize, i64)],
    ) -> Self {
        let mut s = Self::zero(variable, ring, precision);
        for &(e, v) in pairs {
            assert!(e <= precision, "exponent {e} beyond precision {precision}");
            s.coeffs[e] = ring.from_i64(v);
        }
        s
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    /// N: coefficients of x^0..x^N are exact, error is O(x^{N+1}).
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// The coefficient of x^k, or None when k lies beyond the precision
    /// (beyond-precision coefficients are unknown, not zero).
    pub fn coeff(&self, k: usize) -> Option<&Coeff> {
        self.coeffs.get(k)
    }

    /// Least k with c_k != 0 among the stored prefix; None if the whole
    /// stored prefix vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_prefix(&self) -> bool {
        self.valuation().is_none()
    }

    /// Lower the precision to `n` (a no-op when n >= precision).
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.precision() {
            return self.clone();
        }
        TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Rename the formal variable without touching coefficients.
    pub fn with_variable(&self, variable: impl Into<String>) -> Self {
        TruncatedSeries {
            variable: variable.into(),
            ring: self.ring,
            coeffs: self.coeffs.clone(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variable != other.variable {
            return Err(Error::VariableMismatch {
                left: self.variable.clone(),
                right: other.variable.clone(),
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..=n)
            .map(|k| self.ring.add(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..=n)
            .map(|k| self.ring.sub(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    /// Cauchy product, precision min(N_f, N_g).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.precision().min(other.precision());
        let mut coeffs = vec![self.ring.zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.ring.mul(&self.coeffs[i], &other.coeffs[j]);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &prod);
            }
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Result<Self> {
        let c = self.ring.check(c.clone())?;
        let coeffs = self.coeffs.iter().map(|x| self.ring.mul(x, &c)).collect();
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    /// Multiplicative inverse; c_0 must be a unit of the ring.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.precision();
        let inv0 = self.ring.inv(&self.coeffs[0])?;
        let mut g = vec![self.ring.zero(); n + 1];
        g[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = self.ring.zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || g[k - i].is_zero() {
                    continue;
                }
                let prod = self.ring.mul(&self.coeffs[i], &g[k - i]);
                acc = self.ring.add(&acc, &prod);
            }
            g[k] = self.ring.neg(&self.ring.mul(&acc, &inv0));
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs: g,
        })
    }

    /// f(g(x)) by Horner's scheme. The inner series must have valuation
    /// >= 1; the result lives in the inner series' variable and has
    /// precision min(N_f, N_g).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.ring != inner.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: inner.ring.to_string(),
            });
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.precision().min(inner.precision());
        let g = inner.truncate(n);
        let top = self.precision().min(n);
        let mut acc = TruncatedSeries::constant(
            g.variable.clone(),
            self.ring,
            self.coeffs[top].clone(),
            n,
        )?;
        for k in (0..top).rev() {
            acc = acc.mul(&g)?;
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[k]);
        }
        Ok(acc)
    }

    /// f(x^k). Precision upgrades to k*N + (k-1): every omitted term of f
    /// maps above that order. Accepts k = 1 as the identity.
    pub fn substitute_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Unsupported("substitute_power with k = 0".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let n = self.precision();
        let new_n = k * n + (k - 1);
        let mut coeffs = vec![self.ring.zero(); new_n + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c.clone();
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    /// f^n by repeated squaring; precision stays N (f^0 = 1 through N).
    pub fn power(&self, n: u64) -> Result<Self> {
        let mut acc = Self::one(self.variable.clone(), self.ring, self.precision());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// f^alpha for rational alpha, requiring the Rational ring and
    /// c_0 = 1 (callers factor out a unit constant themselves). Computed
    /// by the first-order recurrence from f * g' = alpha * f' * g.
    pub fn rational_power(&self, alpha: &BigRational) -> Result<Self> {
        let f = match self.ring {
            CoefficientRing::Rational => self,
            _ => {
                return Err(Error::Unsupported(
                    "rational_power needs the Rational ring".into(),
                ))
            }
        };
        let one = BigRational::one();
        match &f.coeffs[0] {
            Coeff::Rational(c0) if *c0 == one => {}
            _ => return Err(Error::ConstantTermNotOne),
        }
        let n = f.precision();
        let fr: Vec<&BigRational> = f
            .coeffs
            .iter()
            .map(|c| match c {
                Coeff::Rational(x) => x,
                _ => unreachable!(),
            })
            .collect();
        let mut g: Vec<BigRational> = Vec::with_capacity(n + 1);
        g.push(BigRational::one());
        for m in 1..=n {
            // (m) g_m = alpha * sum_{i=1..m} i f_i g_{m-i}
            //           - sum_{i=1..m-1} f_i (m-i) g_{m-i}
            let mut acc = BigRational::zero();
            for i in 1..=m {
                if fr[i].is_zero() {
                    continue;
                }
                let mut w = alpha * BigRational::from(BigInt::from(i));
                if i < m {
                    w -= BigRational::from(BigInt::from(m - i));
                }
                if !w.is_zero() {
                    acc += fr[i] * &g[m - i] * w;
                }
            }
            g.push(acc / BigRational::from(BigInt::from(m)));
        }
        Ok(TruncatedSeries {
            variable: f.variable.clone(),
            ring: CoefficientRing::Rational,
            coeffs: g.into_iter().map(Coeff::Rational).collect(),
        })
    }

    /// d-th root with root(f, d)^d = f through the precision. Rational
    /// ring computes directly; Integer series are lifted to rationals and
    /// converted back with a loud failure if the root is not integral.
    /// Unsupported over Z/m.
    pub fn root(&self, d: u64) -> Result<Self> {
        assert!(d >= 2, "root index must be >= 2");
        let alpha = BigRational::new(BigInt::one(), BigInt::from(d));
        match self.ring {
            CoefficientRing::Rational => self.rational_power(&alpha),
            CoefficientRing::Integer => self
                .to_rational_ring()?
                .rational_power(&alpha)?
                .to_integer_ring(),
            CoefficientRing::Mod(_) => Err(Error::Unsupported(
                "d-th roots over Z/m are not supported".into(),
            )),
        }
    }

    /// Termwise derivative; precision drops to N-1.
    pub fn derivative(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Err(Error::PrecisionTooSmall {
                needed: 1,
                available: 0,
            });
        }
        let coeffs = (1..=n)
            .map(|k| {
                let factor = self.ring.from_i64(k as i64);
                self.ring.mul(&self.coeffs[k], &factor)
            })
            .collect();
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    /// Exact division by x^k; every stored coefficient below x^k must
    /// vanish. Precision drops to N-k.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        let val = self.valuation();
        match val {
            Some(v) if v < k => {
                return Err(Error::ValuationTooSmall {
                    valuation: v,
                    shift: k,
                })
            }
            _ => {}
        }
        if self.precision() < k {
            return Err(Error::PrecisionTooSmall {
                needed: k,
                available: self.precision(),
            });
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplication by x^k (exact); precision rises to N+k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries {
            variable: self.variable.clone(),
            ring: self.ring,
            coeffs,
        }
    }

    /// Coefficientwise reduction into Z/m. Accepts Integer and Rational
    /// sources (rational denominators must be coprime to p), plus Mod
    /// sources with the same prime and a smaller or equal exponent.
    pub fn reduce_mod(&self, m: Modulus) -> Result<Self> {
        let coeffs = match self.ring {
            CoefficientRing::Integer => self
                .coeffs
                .iter()
                .map(|c| match c {
                    Coeff::Integer(x) => Ok(Coeff::Residue(m.reduce_bigint(x))),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?,
            CoefficientRing::Rational => self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| match c {
                    Coeff::Rational(x) => {
                        let num = m.reduce_bigint(x.numer());
                        let den = m.reduce_bigint(x.denom());
                        let den_inv =
                            m.inv(den).ok_or(Error::NonInvertibleDenominator {
                                order: k,
                                modulus: m.value(),
                            })?;
                        Ok(Coeff::Residue(m.mul(num, den_inv)))
                    }
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?,
            CoefficientRing::Mod(src) => {
                if src.prime() != m.prime() || src.exponent() < m.exponent() {
                    return Err(Error::InvalidModulus(format!(
                        "cannot reduce mod {} series into mod {}",
                        src, m
                    )));
                }
                self.coeffs
                    .iter()
                    .map(|c| match c {
                        Coeff::Residue(x) => Ok(Coeff::Residue(x % m.value())),
                        _ => unreachable!(),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            ring: CoefficientRing::Mod(m),
            coeffs,
        })
    }

    /// Rational -> Integer conversion that fails loudly on any
    /// denominator != 1. Integer input is returned unchanged.
    pub fn to_integer_ring(&self) -> Result<Self> {
        match self.ring {
            CoefficientRing::Integer => Ok(self.clone()),
            CoefficientRing::Rational => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| match c {
                        Coeff::Rational(x) => {
                            if x.denom().is_one() {
                                Ok(Coeff::Integer(x.numer().clone()))
                            } else {
                                Err(Error::NonIntegerCoefficient {
                                    order: k,
                                    value: x.to_string(),
                                })
                            }
                        }
                        _ => unreachable!(),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(TruncatedSeries {
                    variable: self.variable.clone(),
                    ring: CoefficientRing::Integer,
                    coeffs,
                })
            }
            CoefficientRing::Mod(_) => Err(Error::Unsupported(
                "residues do not lift to integers canonically".into(),
            )),
        }
    }

    /// Integer -> Rational lift. Rational input is returned unchanged.
    pub fn to_rational_ring(&self) -> Result<Self> {
        match self.ring {
            CoefficientRing::Rational => Ok(self.clone()),
            CoefficientRing::Integer => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| match c {
                        Coeff::Integer(x) => Coeff::Rational(BigRational::from(x.clone())),
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(TruncatedSeries {
                    variable: self.variable.clone(),
                    ring: CoefficientRing::Rational,
                    coeffs,
                })
            }
            CoefficientRing::Mod(_) => Err(Error::Unsupported(
                "residues do not lift to rationals canonically".into(),
            )),
        }
    }

    /// Residue stream of a Z/m series (errors for other rings).
    pub fn residues(&self) -> Result<Vec<u64>> {
        match self.ring {
            CoefficientRing::Mod(_) => Ok(self
                .coeffs
                .iter()
                .map(|c| c.as_residue().expect("mod-ring coefficient"))
                .collect()),
            _ => Err(Error::Unsupported(
                "residue stream requires a Z/m series".into(),
            )),
        }
    }

    /// First order where the two series differ, scanning through
    /// min(precisions, n). Returns (difference order or None, bound used).
    pub fn first_difference(&self, other: &Self, n: usize) -> Result<(Option<usize>, usize)> {
        self.check_compatible(other)?;
        let bound = self.precision().min(other.precision()).min(n);
        for k in 0..=bound {
            if self.coeffs[k] != other.coeffs[k] {
                return Ok((Some(k), bound));
            }
        }
        Ok((None, bound))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}^{k}", self.variable)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.variable, self.precision() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::{CoefficientRing as Ring, Modulus};

    fn int_ring() -> Ring {
        Ring::Integer
    }

    fn mod_ring(p: u64, r: u32) -> Ring {
        Ring::Mod(Modulus::new(p, r).unwrap())
    }

    /// Catalan numbers by the convolution recurrence — the independent
    /// oracle used by several tests here.
    fn catalan_oracle(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::from(1)];
        for k in 1..=n {
            let mut s = BigInt::from(0);
            for i in 0..k {
                s += &c[i] * &c[k - 1 - i];
            }
            c.push(s);
        }
        c
    }

    #[test]
    fn add_basic() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[1, 1, 0, 0]);
        let g = TruncatedSeries::from_i64("x", int_ring(), &[1, 0, 1]);
        let h = f.add(&g).unwrap();
        assert_eq!(h.precision(), 2);
        assert_eq!(h, TruncatedSeries::from_i64("x", int_ring(), &[2, 1, 1]));
    }

    #[test]
    fn add_zero_identity() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[3, 1, 4, 1, 5]);
        let z = TruncatedSeries::zero("x", int_ring(), 4);
        assert_eq!(f.add(&z).unwrap(), f);
    }

    #[test]
    fn add_reduces_mod() {
        // (v + 3v^2) + (3v^2) = v + 2v^2 mod 4
        let f = TruncatedSeries::from_i64("v", mod_ring(2, 2), &[0, 1, 3]);
        let g = TruncatedSeries::from_i64("v", mod_ring(2, 2), &[0, 0, 3]);
        let h = f.add(&g).unwrap();
        assert_eq!(h, TruncatedSeries::from_i64("v", mod_ring(2, 2), &[0, 1, 2]));
    }

    #[test]
    fn add_mismatch_errors() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[1]);
        let g = TruncatedSeries::from_i64("y", int_ring(), &[1]);
        assert!(f.add(&g).is_err());
        let h = TruncatedSeries::from_i64("x", mod_ring(2, 1), &[1]);
        assert!(f.add(&h).is_err());
    }

    #[test]
    fn mul_inverse_pair() {
        // (1-4w) * prefix of 2w/(1-4w) = 2w exactly through shared precision
        let n = 16;
        let mut geom = vec![0i64; n + 1];
        for (k, g) in geom.iter_mut().enumerate().skip(1) {
            *g = 2 * 4i64.pow(k as u32 - 1);
        }
        let series = TruncatedSeries::from_i64("w", int_ring(), &geom);
        let lin = {
            let mut v = vec![0i64; n + 1];
            v[0] = 1;
            v[1] = -4;
            TruncatedSeries::from_i64("w", int_ring(), &v)
        };
        let prod = lin.mul(&series).unwrap();
        let expected = TruncatedSeries::from_pairs("w", int_ring(), n, &[(1, 2)]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn mul_lacunary_square_mod2() {
        // L(u)^2 = L(u^2) mod 2 (Frobenius on the lacunary series)
        let n = 64;
        let ring = mod_ring(2, 1);
        let mut l = TruncatedSeries::zero("u", ring, n);
        l.coeffs[0] = ring.from_i64(1);
        let mut e = 1;
        while e <= n {
            l.coeffs[e] = ring.from_i64(1);
            e *= 2;
        }
        let sq = l.mul(&l).unwrap();
        let expected = l.substitute_power(2).unwrap().truncate(n);
        assert_eq!(sq, expected);
    }

    #[test]
    fn mul_catalan_coefficient() {
        // x*C(x): coefficient of x^5 is C_4 = 14
        let c = catalan_oracle(8);
        let coeffs: Vec<Coeff> = c.into_iter().map(Coeff::Integer).collect();
        let cat = TruncatedSeries::new("x", int_ring(), coeffs).unwrap();
        let xc = cat.shift_up(1);
        assert_eq!(xc.coeff(5).unwrap(), &Coeff::Integer(BigInt::from(14)));
    }

    #[test]
    fn inverse_geometric() {
        let n = 10;
        let mut v = vec![0i64; n + 1];
        v[0] = 1;
        v[1] = -4;
        let f = TruncatedSeries::from_i64("w", int_ring(), &v);
        let g = f.inverse().unwrap();
        for k in 0..=n {
            assert_eq!(
                g.coeff(k).unwrap(),
                &Coeff::Integer(BigInt::from(4).pow(k as u32))
            );
        }
    }

    #[test]
    fn inverse_involution() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[1, 7, -3, 2, 5, -11]);
        assert_eq!(f.inverse().unwrap().inverse().unwrap(), f);
    }

    #[test]
    fn inverse_non_unit_errors() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[2, 1]);
        assert!(f.inverse().is_err());
        let g = TruncatedSeries::from_i64("x", mod_ring(2, 3), &[2, 1]);
        assert!(g.inverse().is_err());
    }

    #[test]
    fn inverse_catalan_lacunary_mod8() {
        // 4 + 4/(1 - x*C(x^2)) = 4*L(x) mod 8
        let n = 128;
        let m = Modulus::new(2, 3).unwrap();
        let ring = Ring::Mod(m);
        let c = catalan_oracle(n);
        let coeffs: Vec<Coeff> = c.into_iter().map(Coeff::Integer).collect();
        let cat = TruncatedSeries::new("x", int_ring(), coeffs)
            .unwrap()
            .reduce_mod(m)
            .unwrap();
        let xc2 = cat.substitute_power(2).unwrap().shift_up(1).truncate(n);
        let one = TruncatedSeries::one("x", ring, n);
        let inv = one.sub(&xc2).unwrap().inverse().unwrap();
        let four = ring.from_i64(4);
        let result = inv
            .scalar_mul(&four)
            .unwrap()
            .add(&TruncatedSeries::constant("x", ring, four.clone(), n).unwrap())
            .unwrap();
        let mut expected = TruncatedSeries::zero("x", ring, n);
        expected.coeffs[0] = four.clone();
        let mut e = 1;
        while e <= n {
            expected.coeffs[e] = four.clone();
            e *= 2;
        }
        assert_eq!(result, expected);
    }

    #[test]
    fn compose_monomial() {
        // sum x^n composed with x^2 -> sum x^{2n}
        let n = 12;
        let f = TruncatedSeries::from_i64("x", int_ring(), &vec![1i64; n + 1]);
        let g = TruncatedSeries::from_pairs("x", int_ring(), n, &[(2, 1)]);
        let h = f.compose(&g).unwrap();
        for k in 0..=n {
            let expect = if k % 2 == 0 { 1 } else { 0 };
            assert_eq!(h.coeff(k).unwrap(), &Coeff::Integer(BigInt::from(expect)));
        }
    }

    #[test]
    fn compose_identity() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[5, -2, 7, 1]);
        let id = TruncatedSeries::from_pairs("x", int_ring(), 3, &[(1, 1)]);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn compose_rejects_unit_constant() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[1, 1]);
        let g = TruncatedSeries::from_i64("x", int_ring(), &[1, 1]);
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn substitute_power_lacunary_shift() {
        // u + L(u^2) = L(u): check L(u^2) = L(u) - u with upgraded precision
        let n = 33;
        let ring = int_ring();
        let mut l = TruncatedSeries::zero("u", ring, n);
        l.coeffs[0] = ring.from_i64(1);
        let mut e = 1;
        while e <= n {
            l.coeffs[e] = ring.from_i64(1);
            e *= 2;
        }
        let l2 = l.substitute_power(2).unwrap();
        assert_eq!(l2.precision(), 2 * n + 1);
        let u = TruncatedSeries::from_pairs("u", ring, n, &[(1, 1)]);
        let rhs = l.sub(&u).unwrap();
        assert_eq!(l2.truncate(n), rhs);
    }

    #[test]
    fn substitute_power_constant() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[9]);
        let g = f.substitute_power(5).unwrap();
        assert_eq!(g.precision(), 4);
        assert_eq!(g.coeff(0).unwrap(), &Coeff::Integer(BigInt::from(9)));
        assert!(g.coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn power_zero_is_one() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[0, 3, 1]);
        assert_eq!(f.power(0).unwrap(), TruncatedSeries::one("x", int_ring(), 2));
    }

    #[test]
    fn root_round_trip() {
        let f = TruncatedSeries::from_i64("x", Ring::Rational, &[1, 2, 3, 4, 5, 6]);
        let r = f.power(2).unwrap().root(2).unwrap();
        assert_eq!(r, f);
    }

    #[test]
    fn rational_power_requires_unit_one() {
        let f = TruncatedSeries::from_i64("x", Ring::Rational, &[2, 1]);
        assert!(f.root(2).is_err());
        let g = TruncatedSeries::from_i64("x", mod_ring(3, 1), &[1, 1]);
        assert!(g.root(2).is_err());
    }

    #[test]
    fn derivative_monomial() {
        let f = TruncatedSeries::from_pairs("x", int_ring(), 6, &[(4, 1)]);
        let d = f.derivative().unwrap();
        assert_eq!(d.precision(), 5);
        assert_eq!(d.coeff(3).unwrap(), &Coeff::Integer(BigInt::from(4)));
    }

    #[test]
    fn derivative_constant_is_zero() {
        let f = TruncatedSeries::from_i64("x", int_ring(), &[42, 0, 0]);
        let d = f.derivative().unwrap();
        assert!(d.is_zero_prefix());
        assert_eq!(d.precision(), 1);
    }

    #[test]
    fn reduce_mod_even_series_mod2() {
        let f = TruncatedSeries::from_i64("v", int_ring(), &[0, 4, 16, 104, 416]);
        let r = f.reduce_mod(Modulus::new(2, 1).unwrap()).unwrap();
        assert!(r.is_zero_prefix());
    }

    #[test]
    fn reduce_mod_rational_denominator() {
        // 1/3 mod 4 = 3 (3*3 = 9 = 1 mod 4); 1/2 mod 4 errors
        let third = Coeff::Rational(BigRational::new(BigInt::from(1), BigInt::from(3)));
        let f = TruncatedSeries::constant("x", Ring::Rational, third, 2).unwrap();
        let r = f.reduce_mod(Modulus::new(2, 2).unwrap()).unwrap();
        assert_eq!(r.coeff(0).unwrap(), &Coeff::Residue(3));
        let half = Coeff::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let g = TruncatedSeries::constant("x", Ring::Rational, half, 2).unwrap();
        assert!(g.reduce_mod(Modulus::new(2, 2).unwrap()).is_err());
    }

    #[test]
    fn reduce_mod_shadow() {
        let f = TruncatedSeries::from_i64("x", mod_ring(2, 5), &[17, 30, 9]);
        let r = f.reduce_mod(Modulus::new(2, 2).unwrap()).unwrap();
        assert_eq!(r, TruncatedSeries::from_i64("x", mod_ring(2, 2), &[1, 2, 1]));
        assert!(f.reduce_mod(Modulus::new(3, 1).unwrap()).is_err());
        let g = TruncatedSeries::from_i64("x", mod_ring(2, 2), &[1]);
        assert!(g.reduce_mod(Modulus::new(2, 5).unwrap()).is_err());
    }

    #[test]
    fn to_integer_ring_fails_loudly() {
        let half = Coeff::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let f = TruncatedSeries::constant("x", Ring::Rational, half, 1).unwrap();
        match f.to_integer_ring() {
            Err(Error::NonIntegerCoefficient { order: 0, .. }) => {}
            other => panic!("expected NonIntegerCoefficient, got {other:?}"),
        }
    }

    #[test]
    fn valuation_and_zero() {
        let f = TruncatedSeries::from_pairs("x", int_ring(), 9, &[(4, 7)]);
        assert_eq!(f.valuation(), Some(4));
        let z = TruncatedSeries::zero("x", int_ring(), 9);
        assert_eq!(z.valuation(), None);
    }

    #[test]
    fn shift_down_checks_valuation() {
        let f = TruncatedSeries::from_pairs("x", int_ring(), 5, &[(3, 2)]);
        let s = f.shift_down(3).unwrap();
        assert_eq!(s.precision(), 2);
        assert_eq!(s.coeff(0).unwrap(), &Coeff::Integer(BigInt::from(2)));
        assert!(f.shift_down(4).is_err());
    }

    #[test]
    fn precision_rules() {
        let f = TruncatedSeries::zero("x", int_ring(), 7);
        let g = TruncatedSeries::zero("x", int_ring(), 4);
        assert_eq!(f.add(&g).unwrap().precision(), 4);
        assert_eq!(f.mul(&g).unwrap().precision(), 4);
        assert_eq!(f.substitute_power(3).unwrap().precision(), 23);
        assert_eq!(f.derivative().unwrap().precision(), 6);
    }
}
