//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! Every value is kept in a unique canonical form: rationals are reduced with
//! positive denominator, residues lie in `[0, p)`. No floating point is used
//! anywhere in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Enumeration workloads dominate the use
/// of prime fields, so arbitrarily large moduli are pointless; the bound also
/// keeps `u64` products away from overflow.
pub const MAX_PRIME: u64 = 1 << 31;

/// The coefficient field: exact rationals or integers mod a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field constructor; the modulus is checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The canonical image of an integer in the field.
    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let p_i = *p as i128;
                let r = ((n as i128 % p_i) + p_i) % p_i;
                Scalar::Residue { value: r as u64, p: *p }
            }
        }
    }

    /// Parses the text form: `a` or `a/b` (b > 0) over the rationals, a
    /// residue in `[0, p)` over a prime field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let fail = |reason: &str| Error::ScalarParse {
            text: text.to_owned(),
            field: *self,
            reason: reason.to_owned(),
        };
        match self {
            FieldSpec::Rational => {
                let (num_s, den_s) = match text.split_once('/') {
                    Some((a, b)) => (a, Some(b)),
                    None => (text, None),
                };
                let numer: BigInt = num_s.trim().parse().map_err(|_| fail("bad numerator"))?;
                let denom: BigInt = match den_s {
                    Some(b) => b.trim().parse().map_err(|_| fail("bad denominator"))?,
                    None => BigInt::one(),
                };
                if denom <= BigInt::zero() {
                    return Err(fail("denominator must be positive"));
                }
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            }
            FieldSpec::Prime(p) => {
                let value: u64 = text.trim().parse().map_err(|_| fail("bad residue"))?;
                if value >= *p {
                    return Err(fail("residue out of range"));
                }
                Ok(Scalar::Residue { value, p: *p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Arithmetic between scalars of different fields is
/// a programming error and panics; all public constructors keep the entries
/// of a container in a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Residue { value, p } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Residue {
                        value: mod_pow(*value, *p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    /// Text form used in all JSON documents: `a` or `a/b` over the
    /// rationals, the residue over a prime field.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => value.to_string(),
        }
    }

    /// The residue of a prime-field scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value),
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + b) % p, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + p - b) % p, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, p } => Scalar::Residue { value: (p - value) % p, p: *p },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(31).is_ok());
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldSpec::prime(91), Err(Error::NotPrime(91))));
        assert!(matches!(
            FieldSpec::prime((1 << 31) + 11),
            Err(Error::PrimeTooLarge(_))
        ));
    }

    #[test]
    fn rational_canonical_form() {
        let q = FieldSpec::Rational;
        let half = q.parse_scalar("2/4").unwrap();
        assert_eq!(half.to_text(), "1/2");
        let neg = q.parse_scalar("-6/4").unwrap();
        assert_eq!(neg.to_text(), "-3/2");
        assert!(q.parse_scalar("1/-2").is_err());
        assert!(q.parse_scalar("1/0").is_err());
        assert_eq!(q.parse_scalar("7").unwrap().to_text(), "7");
    }

    #[test]
    fn residue_arithmetic_round_trips() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = f5.integer(3);
        let b = f5.integer(4);
        assert_eq!((&a + &b).to_text(), "2");
        assert_eq!((&a - &b).to_text(), "4");
        assert_eq!((&a * &b).to_text(), "2");
        assert_eq!((&a + &(-&a)), f5.zero());
        assert_eq!(&a * &a.inv().unwrap(), f5.one());
        assert!(f5.zero().inv().is_none());
        assert!(f5.parse_scalar("5").is_err());
    }

    #[test]
    fn rational_field_laws() {
        let q = FieldSpec::Rational;
        let a = q.parse_scalar("-7/3").unwrap();
        assert_eq!(&a + &(-&a), q.zero());
        assert_eq!(&a * &a.inv().unwrap(), q.one());
        let b = q.parse_scalar("5/6").unwrap();
        assert_eq!((&a * &b).to_text(), "-35/18");
    }
}
