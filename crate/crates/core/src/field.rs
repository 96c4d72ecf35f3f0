//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^32`.
//!
//! Scalars do not carry their field. Every arithmetic operation goes through
//! the [`FieldSpec`] that produced its operands, which keeps polynomial terms
//! and matrix entries small in the prime-field case.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// `2^31 - 1`, the working prime when none is given.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Random rational coefficients are integers drawn from `[-B, B]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1000;

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// An element of some [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
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
    /// A prime field. The modulus must be a prime below `2^32` so that
    /// products of residues fit in a `u64`.
    pub fn prime(modulus: u64) -> Result<Self> {
        if modulus >= 1 << 32 {
            return Err(Error::InvalidField(format!("modulus {modulus} must be below 2^32")));
        }
        if !is_prime(modulus) {
            return Err(Error::InvalidField(format!("{modulus} is not prime")));
        }
        Ok(FieldSpec::Prime(modulus))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    /// Contraction by a form of degree up to `degree` multiplies by
    /// falling factorials of exponents `<= degree`; these vanish mod `p`
    /// unless `p > degree`.
    pub fn check_safe_for_degree(&self, degree: u32) -> Result<()> {
        match self {
            FieldSpec::Prime(p) if *p <= u64::from(degree) => Err(Error::UnsafeField { modulus: *p, degree }),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue(v.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue(v % p),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue below modulus"))
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d).ok_or_else(|| Error::Argument(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue((x + y) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue((p - x) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(x * y % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Some(Scalar::Residue(inv_mod(*x, *p))),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Uniform over `F_p`, or an integer in `[-B, B]` over the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND)),
            FieldSpec::Prime(p) => Scalar::Residue(rng.gen_range(0..*p)),
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values; p < 2^32
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u64
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// `q` for the rationals, `p:PRIME` for a prime field.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("p:") {
            Some(num) => {
                let p = num.trim().parse::<u64>().map_err(|_| Error::InvalidField(format!("bad modulus {num:?}")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::InvalidField(format!("expected `q` or `p:PRIME`, got {s:?}"))),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Scalar {
    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(DEFAULT_PRIME).is_ok());
        assert!(FieldSpec::prime(7).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(4_294_967_311).is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = FieldSpec::Prime(DEFAULT_PRIME);
        for v in [1i64, 2, 3, 12345, -7, DEFAULT_PRIME as i64 - 1] {
            let a = f.from_i64(v);
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), f.one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn ratio_reduction() {
        let f = FieldSpec::Prime(7);
        let half = f.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(half, Scalar::Residue(4));
        assert!(f.from_ratio(&1.into(), &14.into()).is_err());
        let q = FieldSpec::Rationals;
        assert_eq!(q.from_ratio(&2.into(), &4.into()).unwrap().to_string(), "1/2");
    }

    #[test]
    fn unsafe_degree() {
        let f = FieldSpec::Prime(7);
        assert!(f.check_safe_for_degree(6).is_ok());
        assert_eq!(f.check_safe_for_degree(7), Err(Error::UnsafeField { modulus: 7, degree: 7 }));
        assert!(FieldSpec::Rationals.check_safe_for_degree(1000).is_ok());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        let f: FieldSpec = "p:2147483647".parse().unwrap();
        assert_eq!(f, FieldSpec::default());
        assert_eq!(f.to_string(), "p:2147483647");
        assert!("p:10".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }
}
