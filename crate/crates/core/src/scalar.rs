//! Exact field arithmetic: arbitrary-precision rationals in characteristic
//! zero, residues in characteristic p. No floating point anywhere.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field: characteristic 0 (rationals) or a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { value: r, prime: p }
            }
        }
    }

    /// Parses "n" or "a/b" into a field element.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (text, None),
        };
        let n: i64 = num
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad scalar literal `{text}`")))?;
        let a = self.from_i64(n);
        match den {
            None => Ok(a),
            Some(d) => {
                let d: i64 = d
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad scalar literal `{text}`")))?;
                let b = self.from_i64(d);
                a.try_mul(&b.try_inv()?)
            }
        }
    }

    pub fn owns(&self, s: &Scalar) -> bool {
        match (self.characteristic, s) {
            (0, Scalar::Rat(_)) => true,
            (p, Scalar::Fp { prime, .. }) => p == *prime,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F{p}"),
        }
    }
}

/// An exact element of a [`FieldSpec`] field. Prime-field residues carry
/// their prime so mixed-field arithmetic is detected, not silently wrong.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, prime: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) if p == q => {
                Ok(Scalar::Fp {
                    value: (a + b) % p,
                    prime: *p,
                })
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) if p == q => {
                // p < 2^32 would let this overflow-free in u64; keep u128 to be safe.
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Ok(Scalar::Fp {
                    value: prod as u64,
                    prime: *p,
                })
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, prime } => Scalar::Fp {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&rhs.neg())
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(a) => Ok(Scalar::Rat(a.recip())),
            Scalar::Fp { value, prime } => {
                // Extended Euclid on (value, prime).
                let (mut t, mut new_t) = (0i128, 1i128);
                let (mut r, mut new_r) = (*prime as i128, *value as i128);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                debug_assert_eq!(r, 1);
                let inv = t.rem_euclid(*prime as i128) as u64;
                Ok(Scalar::Fp {
                    value: inv,
                    prime: *prime,
                })
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_mul(&rhs.try_inv()?)
    }

    /// Panicking variants for internal code where both operands are known to
    /// live in one field (matrix kernels, element arithmetic).
    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("mixed fields in internal arithmetic")
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("mixed fields in internal arithmetic")
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("mixed fields in internal arithmetic")
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// The operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Exact field arithmetic with the error contract spelled out: `Inv` of zero
/// and any mixed-field pair are rejected. `Inv` and `Neg` ignore `b`.
pub fn scalar_arith(a: &Scalar, b: Option<&Scalar>, op: ScalarOp) -> Result<Scalar> {
    match op {
        ScalarOp::Add => a.try_add(b.ok_or(Error::InvalidInput("add needs two operands".into()))?),
        ScalarOp::Mul => a.try_mul(b.ok_or(Error::InvalidInput("mul needs two operands".into()))?),
        ScalarOp::Inv => a.try_inv(),
        ScalarOp::Neg => Ok(a.neg()),
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_addition() {
        let f = FieldSpec::new(5).unwrap();
        let got = scalar_arith(&f.from_i64(3), Some(&f.from_i64(4)), ScalarOp::Add).unwrap();
        assert_eq!(got, f.from_i64(2));
    }

    #[test]
    fn rational_product() {
        let f = FieldSpec::rationals();
        let half = f.parse("1/2").unwrap();
        let two_thirds = f.parse("2/3").unwrap();
        let got = scalar_arith(&half, Some(&two_thirds), ScalarOp::Mul).unwrap();
        assert_eq!(got, f.parse("1/3").unwrap());
    }

    #[test]
    fn inverse_mod_7_matches_brute_force() {
        // Oracle: search for c with 3c ≡ 1 mod 7.
        let oracle = (1..7).find(|c| (3 * c) % 7 == 1).unwrap();
        assert_eq!(oracle, 5);
        let f = FieldSpec::new(7).unwrap();
        let got = scalar_arith(&f.from_i64(3), None, ScalarOp::Inv).unwrap();
        assert_eq!(got, f.from_i64(oracle as i64));
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(2).is_ok());
    }

    #[test]
    fn zero_inverse_and_mixed_fields_rejected() {
        let f5 = FieldSpec::new(5).unwrap();
        let f7 = FieldSpec::new(7).unwrap();
        assert!(matches!(
            f5.zero().try_inv(),
            Err(crate::error::Error::DivisionByZero)
        ));
        assert!(matches!(
            f5.one().try_add(&f7.one()),
            Err(crate::error::Error::MixedFields)
        ));
        assert!(matches!(
            f5.one().try_add(&FieldSpec::rationals().one()),
            Err(crate::error::Error::MixedFields)
        ));
    }
}
