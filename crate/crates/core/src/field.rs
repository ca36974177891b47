//! Exact scalars over the rationals and over prime fields.
//!
//! A [`Scalar`] carries its field with it, so values from different fields
//! can never be combined by accident: the checked operations return
//! [`FieldError::Mismatch`], and the operator impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("residue {value} out of range for F_{p}")]
    ResidueOutOfRange { value: u64, p: u64 },
}

/// Field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rational() -> Self {
        Field::Rational
    }

    /// The prime field F_p. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        // Products of two residues must fit in u128 intermediate, which any u64 does.
        if is_prime(p) {
            Ok(Field::Prime { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// 0 for the rationals, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime { p } => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime { p } => Scalar::Mod {
                value: (v as i128).rem_euclid(*p as i128) as u64,
                p: *p,
            },
        }
    }

    /// Rational n/d, or n·d⁻¹ in F_p.
    pub fn from_fraction(&self, num: BigInt, den: BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime { p } => {
                let modulus = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &modulus) + &modulus) % &modulus;
                    r.to_u64().expect("residue fits in u64")
                };
                let n = Scalar::Mod { value: reduce(&num), p: *p };
                let d = Scalar::Mod { value: reduce(&den), p: *p };
                n.checked_div(&d)
            }
        }
    }

    /// A residue in F_p; rejects out-of-range values instead of reducing them.
    pub fn residue(&self, value: u64) -> Result<Scalar, FieldError> {
        match self {
            Field::Rational => Ok(self.from_fraction(BigInt::from(value), BigInt::one())?),
            Field::Prime { p } => {
                if value < *p {
                    Ok(Scalar::Mod { value, p: *p })
                } else {
                    Err(FieldError::ResidueOutOfRange { value, p: *p })
                }
            }
        }
    }

    /// A random scalar: uniform over F_p, or an integer in [-3, 3] over ℚ.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.random_range(-3..=3)),
            Field::Prime { p } => Scalar::Mod { value: rng.random_range(0..*p), p: *p },
        }
    }

    /// Like [`Field::random`] but never zero.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Every element of a finite field in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime { p } => Some((0..*p).map(|value| Scalar::Mod { value, p: *p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::Mismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            // Fermat: a^(p-2) = a⁻¹
            Scalar::Mod { value, p } => Scalar::Mod { value: pow_mod(*value, *p - 2, *p), p: *p },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Mod { value, p } => Scalar::Mod { value: (*p - *value) % *p, p: *p },
        }
    }

    /// Numerator and denominator of a rational value; residues report `(v, 1)`.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Mod { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// Residue of an F_p value.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// True for rationals stored with positive denominator in lowest terms and
    /// for residues in `0..p`.
    pub fn is_canonical(&self) -> bool {
        match self {
            Scalar::Rational(r) => {
                r.denom().is_positive() && num_integer::Integer::gcd(r.numer(), r.denom()).is_one()
            }
            Scalar::Mod { value, p } => value < p,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality_guard() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(97).is_ok());
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn mod_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a - &b, f.from_i64(4));
        assert_eq!(&a * &b, f.from_i64(2));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(-&a, f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn mismatched_fields_error() {
        let a = Field::rational().one();
        let b = Field::prime(3).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(FieldError::Mismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(FieldError::Mismatch(..))));
    }

    #[test]
    fn fraction_in_prime_field() {
        let f = Field::prime(7).unwrap();
        let half = f.from_fraction(BigInt::from(1), BigInt::from(2)).unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        assert_eq!(f.from_fraction(BigInt::from(1), BigInt::from(7)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn residue_range_checked() {
        let f = Field::prime(3).unwrap();
        assert!(f.residue(2).is_ok());
        assert!(f.residue(3).is_err());
    }

    #[test]
    fn random_rational_sweep_stays_canonical() {
        let q = Field::rational();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut acc = q.one();
        for _ in 0..500 {
            let x = q.random(&mut rng);
            let y = q.random_nonzero(&mut rng);
            let r = x.checked_div(&y).unwrap();
            acc = match rng.random_range(0..3) {
                0 => &acc + &r,
                1 => &acc - &r,
                _ => {
                    if r.is_zero() {
                        acc
                    } else {
                        &acc * &r
                    }
                }
            };
            assert!(r.is_canonical());
            assert!(acc.is_canonical());
        }
    }
}
