//! Scalar regimes and exact field arithmetic.
//!
//! Every algebra lives over one of two exact ground regimes: the rationals
//! (the default, standing in for the real or complex scalars of the theory)
//! or a prime field GF(p) used by the exhaustive brute-force oracles.
//! Approximate complex scalars appear only in metric outputs (spectral
//! radii), never as a ground regime.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use crate::error::AlgebraError;

/// Which scalars an algebra's structure constants live in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ScalarRegime {
    /// Exact rational arithmetic; the default ground regime.
    ExactRational,
    /// GF(p) for a prime p <= 251; the brute-force oracle regime.
    PrimeField(u64),
    /// Binary64 complex pairs. Only ever attached to metric outputs.
    ApproxComplex,
}

impl ScalarRegime {
    /// Validates the regime invariants (primality, bound, ground-regime rules).
    pub fn validate_ground(&self) -> Result<(), AlgebraError> {
        match self {
            ScalarRegime::ExactRational => Ok(()),
            ScalarRegime::PrimeField(p) => {
                if *p > 251 {
                    return Err(AlgebraError::BadScalar(format!(
                        "prime field modulus {p} exceeds 251"
                    )));
                }
                if !is_prime(*p) {
                    return Err(AlgebraError::BadScalar(format!("{p} is not prime")));
                }
                Ok(())
            }
            ScalarRegime::ApproxComplex => Err(AlgebraError::BadScalar(
                "approximate complex scalars cannot be a ground regime".into(),
            )),
        }
    }
}

impl Display for ScalarRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRegime::ExactRational => write!(f, "rational"),
            ScalarRegime::PrimeField(p) => write!(f, "GF({p})"),
            ScalarRegime::ApproxComplex => write!(f, "approx-complex"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field of scalars, passed around as an explicit context value.
///
/// The modulus of a prime field is runtime data, so field operations hang off
/// a context object rather than the element type alone. Elements are plain
/// values (`BigRational`, `u64`) with no back-pointer to their field.
pub trait Field: Clone + PartialEq + Debug {
    type El: Clone + PartialEq + Eq + Ord + Hash + Debug;

    fn regime(&self) -> ScalarRegime;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn from_i64(&self, n: i64) -> Self::El;
    /// Parses an exact rational literal ("3", "-1/2") into the field,
    /// reducing mod p in a prime field (denominator must be invertible).
    fn parse(&self, s: &str) -> Result<Self::El, AlgebraError>;
    /// Renders an element as an exact literal, the inverse of `parse`.
    fn render(&self, a: &Self::El) -> String;

    fn div(&self, a: &Self::El, b: &Self::El) -> Option<Self::El> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The exact rational scalars.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type El = BigRational;

    fn regime(&self) -> ScalarRegime {
        ScalarRegime::ExactRational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational, AlgebraError> {
        parse_rational(s)
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
}

/// Parses "p/q" or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadScalar(format!("invalid rational literal {s:?}"));
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_s.parse().map_err(|_| bad())?;
    let den: BigInt = den_s.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as "p/q", or just "p" when the denominator is one.
pub fn render_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// GF(p) with a runtime modulus. Elements are reduced `u64` values.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        ScalarRegime::PrimeField(p).validate_ground()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a rational into GF(p); fails when the denominator is 0 mod p.
    pub fn reduce_rational(&self, r: &BigRational) -> Result<u64, AlgebraError> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor_big(&p);
        let den = r.denom().mod_floor_big(&p);
        let den_inv = self.inv(&den).ok_or_else(|| {
            AlgebraError::BadScalar(format!(
                "denominator of {} not invertible mod {}",
                render_rational(r),
                self.p
            ))
        })?;
        Ok(self.mul(&num, &den_inv))
    }
}

trait ModFloor {
    fn mod_floor_big(&self, p: &BigInt) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, p: &BigInt) -> u64 {
        let mut m = self % p;
        if m.is_negative() {
            m += p;
        }
        // p <= 251 so the residue fits comfortably.
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

impl Field for PrimeField {
    type El = u64;

    fn regime(&self) -> ScalarRegime {
        ScalarRegime::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = *a % self.p;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(result)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }
    fn parse(&self, s: &str) -> Result<u64, AlgebraError> {
        let r = parse_rational(s)?;
        self.reduce_rational(&r)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(251).is_ok());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(257).is_err());
        assert!(ScalarRegime::ApproxComplex.validate_ground().is_err());
    }

    #[test]
    fn rational_parse_render_roundtrip() {
        for s in ["0", "7", "-3", "2/3", "-5/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(render_rational(&r), s);
        }
        // Unreduced input parses to reduced form.
        assert_eq!(render_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gf5_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.neg(&2), 3);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        // every nonzero element has an inverse
        for a in 1..5 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
    }

    #[test]
    fn gf_parse_reduces_rationals() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.parse("5").unwrap(), 2);
        assert_eq!(f.parse("-1").unwrap(), 2);
        // 1/2 = 2 mod 3 since 2*2 = 1
        assert_eq!(f.parse("1/2").unwrap(), 2);
        // denominator divisible by p is rejected
        assert!(f.parse("1/3").is_err());
    }
}
