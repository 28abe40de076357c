//! Exact scalar arithmetic over prime fields GF(p) and the rationals.
//!
//! Every computation in the engine is exact: prime-field elements are
//! canonical residues in `[0, p)`, rational values are reduced
//! `num_rational::BigRational`s. There is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A coefficient field: characteristic 0 means the rationals, otherwise a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Field {
    characteristic: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(n) => write!(f, "characteristic {n} is neither 0 nor prime"),
        }
    }
}

impl std::error::Error for FieldError {}

fn is_prime(n: u64) -> bool {
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

/// An exact field element. Prime-field values are canonical residues,
/// rationals are stored reduced. Serialized through `canonical_string`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl Field {
    pub fn new(characteristic: u64) -> Result<Field, FieldError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Field { characteristic })
        } else {
            Err(FieldError::NotPrime(characteristic))
        }
    }

    pub fn rationals() -> Field {
        Field { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fp(1),
        }
    }

    /// Image of the integer `n` in the field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + self.characteristic - y) % self.characteristic)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("scalar kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar kind mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) => Scalar::Fp((self.characteristic - x) % self.characteristic),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) => {
                assert!(*x != 0, "inverse of zero");
                // Fermat: x^(p-2) mod p. p is tiny so this is fine.
                let p = self.characteristic;
                let mut acc = 1u64;
                let mut base = *x % p;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Scalar::Fp(acc)
            }
            Scalar::Rat(x) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// All field elements, for brute-force enumeration in small prime fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.characteristic {
            0 => None,
            p => Some((0..p).map(Scalar::Fp).collect()),
        }
    }

    /// Whether the given integer vanishes in this field.
    pub fn int_is_zero(&self, n: i64) -> bool {
        match self.characteristic {
            0 => n == 0,
            p => n.rem_euclid(p as i64) == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar {
    /// Render deterministically for hashing and cache files.
    pub fn canonical_string(&self) -> String {
        format!("{self}")
    }

    /// Parse the canonical rendering back, given the field.
    pub fn parse(field: &Field, s: &str) -> Option<Scalar> {
        match field.characteristic() {
            0 => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.parse().ok()?;
                    let d: BigInt = d.parse().ok()?;
                    if d.is_zero() {
                        return None;
                    }
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().ok()?;
                    Some(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
            p => {
                let v: u64 = s.parse().ok()?;
                if v < p {
                    Some(Scalar::Fp(v))
                } else {
                    None
                }
            }
        }
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        for p in [0, 2, 3, 5, 7, 11] {
            assert!(Field::new(p).is_ok());
        }
    }

    #[test]
    fn gf5_inverse() {
        let f = Field::new(5).unwrap();
        // 2 * 3 = 6 = 1 mod 5
        assert_eq!(f.inv(&f.from_i64(2)), f.from_i64(3));
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let f = Field::rationals();
        let half = f.div(&f.one(), &f.from_i64(2));
        let x = f.add(&half, &half);
        assert_eq!(x, f.one());
    }
}
