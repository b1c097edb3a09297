//! Ground fields: the rationals and prime fields.
//!
//! Every scalar in this crate is exact. Rational entries are
//! arbitrary-precision reduced fractions; prime-field entries are canonical
//! representatives in `[0, p)`. There is no floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Runtime description of a ground field, as it appears in input files and
/// reports. Computation is generic over [`Field`]; this is the dynamic tag
/// used to pick a monomorphization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rationals,
    /// The prime field with `p` elements.
    PrimeField(u64),
}

impl FieldSpec {
    pub fn is_valid(&self) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => is_prime(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact field arithmetic. The field value itself carries any context the
/// elements need (the modulus for prime fields), so elements stay plain data.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Canonical exact text form (`num/den` over Q, representative over F_p).
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Parse the output of [`Field::format_elem`] (also accepts plain ints).
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;

    /// All field elements, for brute-force enumeration. `None` when infinite.
    fn enumerate(&self) -> Option<Vec<Self::Elem>>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational numbers with arbitrary-precision reduced fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
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

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
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

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Option<BigRational> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => {
                let n: BigInt = s.trim().parse().ok()?;
                Some(BigRational::from_integer(n))
            }
        }
    }

    fn enumerate(&self) -> Option<Vec<BigRational>> {
        None
    }
}

/// The prime field `F_p`, elements stored as canonical representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics when `p` is not prime; validate [`FieldSpec`] first for
    /// recoverable handling.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        assert!(p < (1u64 << 31), "modulus {p} too large");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
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

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
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
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Option<u64> {
        let n: i64 = s.trim().parse().ok()?;
        Some(self.from_i64(n))
    }

    fn enumerate(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        assert!(FieldSpec::PrimeField(2).is_valid());
        assert!(FieldSpec::PrimeField(97).is_valid());
        assert!(!FieldSpec::PrimeField(1).is_valid());
        assert!(!FieldSpec::PrimeField(91).is_valid());
        assert!(FieldSpec::Rationals.is_valid());
    }

    #[test]
    fn fp_inverses() {
        let f = PrimeField::new(7);
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rational_round_trip() {
        let f = Rationals;
        let x = f.div(&f.from_i64(-3), &f.from_i64(4)).unwrap();
        let s = f.format_elem(&x);
        assert_eq!(s, "-3/4");
        assert_eq!(f.parse_elem(&s).unwrap(), x);
        assert_eq!(f.format_elem(&f.from_i64(5)), "5");
    }

    #[test]
    fn fp_negatives_normalize() {
        let f = PrimeField::new(5);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.parse_elem("-2").unwrap(), 3);
    }
}
