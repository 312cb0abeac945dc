//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default prime for the fast path: 2^31 - 1.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Prime field `F_p`, validating that `p` is a prime below 2^31.
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("modulus {p} outside [2, 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular { value: v.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    /// Maps an exact rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let num = q.numer().mod_floor(&pm).to_u32().unwrap_or(0);
                let den = q.denom().mod_floor(&pm).to_u32().unwrap_or(0);
                if den == 0 {
                    return Err(Error::InvalidArgument(format!("denominator of {q} vanishes mod {p}")));
                }
                let num = Scalar::Modular { value: num, modulus: p };
                let den = Scalar::Modular { value: den, modulus: p };
                Ok(num.mul(&den.inv().expect("nonzero")))
            }
        }
    }

    /// Whether `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (Field::Rational, Scalar::Rational(_)) | (Field::Prime(_), Scalar::Modular { .. })
        ) && match (self, s) {
            (Field::Prime(p), Scalar::Modular { modulus, .. }) => p == modulus,
            _ => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; modular values lie in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                let s = (*a as u64 + *b as u64) % *p as u64;
                Scalar::Modular { value: s as u32, modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                let s = (*a as u64 * *b as u64) % *p as u64;
                Scalar::Modular { value: s as u32, modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(a) => Some(Scalar::Rational(a.recip())),
            Scalar::Modular { value, modulus } => {
                let (mut t, mut new_t) = (0i64, 1i64);
                let (mut r, mut new_r) = (*modulus as i64, *value as i64);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                Some(Scalar::Modular { value: t.rem_euclid(*modulus as i64) as u32, modulus: *modulus })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero scalar"))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the printed form carries a leading minus sign.
    pub fn is_negative_repr(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { value, modulus } => *value > modulus / 2,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, modulus } => {
                if *value > modulus / 2 {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_large_moduli() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(DEFAULT_PRIME).is_ok());
        assert!(Field::prime(u32::MAX).is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = Field::prime(DEFAULT_PRIME).unwrap();
        for v in [1i64, 2, 3, 12345, -7] {
            let s = f.from_i64(v);
            assert!(s.mul(&s.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_lowest_terms() {
        let f = Field::Rational;
        let a = f.from_i64(6).div(&f.from_i64(-4));
        assert_eq!(a.to_string(), "-3/2");
    }

    #[test]
    fn symmetric_modular_display() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1).to_string(), "-1");
        assert_eq!(f.from_i64(3).to_string(), "3");
    }

    #[test]
    fn rational_maps_into_prime_field() {
        let f = Field::prime(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let h = f.from_rational(&half).unwrap();
        assert!(h.mul(&f.from_i64(2)).is_one());
        let bad = BigRational::new(1.into(), 7.into());
        assert!(f.from_rational(&bad).is_err());
    }
}
