//! Exact scalars over the rationals or a prime field.
//!
//! Every quantity in this crate is a [`Scalar`]: either an
//! arbitrary-precision rational kept in lowest terms, or a residue modulo a
//! prime. There is no floating point anywhere; equality of scalars is
//! decidable and all downstream verdicts are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The coefficient field an instance lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field with `p` elements.
    Prime(u64),
}

impl Field {
    /// Checks that a `Prime` modulus really is prime. `Rational` is always fine.
    pub fn is_valid(self) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => is_prime(p),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_integer(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_integer(self, 1)
    }

    /// Field characteristic: 0 for the rationals, p for F_p.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
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

/// An exact element of Q or of F_p.
///
/// Rationals are stored reduced with positive denominator (maintained by
/// `num_rational`); residues are stored in `0..p`. Mixing scalars from
/// different fields in arithmetic is a programming error and panics; the
/// public entry points validate field agreement before any arithmetic runs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn from_integer(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Modular { value: r, modulus: p }
            }
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                let value = digits.first().copied().unwrap_or(0);
                Scalar::Modular { value, modulus: p }
            }
        }
    }

    /// Exact rational n/d (panics if d = 0 or the field is modular and p | d).
    pub fn ratio(field: Field, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        match field {
            Field::Rational => {
                Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Field::Prime(_) => {
                let den = Scalar::from_integer(field, d);
                let inv = den.inverse().expect("denominator divisible by modulus");
                Scalar::from_integer(field, n).mul(&inv)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn expect_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar arithmetic across fields: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
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
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(a) => Some(Scalar::Rational(a.recip())),
            Scalar::Modular { value, modulus } => {
                let inv = mod_inverse(*value, *modulus)?;
                Some(Scalar::Modular { value: inv, modulus: *modulus })
            }
        }
    }

    /// Exact division; `None` when `other` is zero.
    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    /// Canonical text form: `n` or `n/d` over Q, the residue over F_p.
    /// This is the form used in instance files and certificate reports.
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => value.to_string(),
        }
    }

    /// Parses the forms accepted in instance files: an integer, or `n/d`.
    /// Over F_p the denominator must be a unit and negatives reduce properly.
    pub fn parse(field: Field, text: &str) -> Result<Scalar, String> {
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let n: BigInt = num_text
            .parse()
            .map_err(|_| format!("malformed scalar `{text}`"))?;
        let numer = Scalar::from_bigint(field, &n);
        match den_text {
            None => Ok(numer),
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| format!("malformed scalar `{text}`"))?;
                if d.is_zero() {
                    return Err(format!("zero denominator in `{text}`"));
                }
                let denom = Scalar::from_bigint(field, &d);
                numer
                    .div(&denom)
                    .ok_or_else(|| format!("denominator of `{text}` is not invertible in {field}"))
            }
        }
    }

    /// For rationals: (numerator, denominator) as big integers. Used by the
    /// fraction-free elimination to clear denominators.
    pub fn as_ratio(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rational(r) => Some((r.numer().clone(), r.denom().clone())),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn abs_cmp_key(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.numer().abs() + r.denom(),
            Scalar::Modular { value, .. } => BigInt::from(*value),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid over signed 128-bit; p is prime and a in 0..p.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_reduces() {
        let f = Field::Rational;
        let a = Scalar::ratio(f, 1, 2);
        let b = Scalar::ratio(f, 1, 3);
        let s = a.add(&b);
        assert_eq!(s.canonical_string(), "5/6");
        let p = a.mul(&b);
        assert_eq!(p.canonical_string(), "1/6");
        assert_eq!(a.sub(&a), f.zero());
        assert_eq!(a.div(&b).unwrap().canonical_string(), "3/2");
    }

    #[test]
    fn modular_arithmetic_wraps() {
        let f = Field::Prime(7);
        let a = Scalar::from_integer(f, 5);
        let b = Scalar::from_integer(f, 4);
        assert_eq!(a.add(&b), Scalar::from_integer(f, 2));
        assert_eq!(a.mul(&b), Scalar::from_integer(f, 6));
        assert_eq!(a.neg(), Scalar::from_integer(f, 2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), f.one());
    }

    #[test]
    fn negative_integers_reduce_into_range() {
        let f = Field::Prime(5);
        assert_eq!(Scalar::from_integer(f, -1), Scalar::from_integer(f, 4));
        assert_eq!(Scalar::parse(f, "-3").unwrap(), Scalar::from_integer(f, 2));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Rational.zero().inverse().is_none());
        assert!(Field::Prime(3).zero().inverse().is_none());
    }

    #[test]
    fn parse_round_trips_canonical_strings() {
        let f = Field::Rational;
        for text in ["0", "7", "-3", "2/3", "-11/4"] {
            let s = Scalar::parse(f, text).unwrap();
            assert_eq!(s.canonical_string(), text);
        }
        let f2 = Field::Prime(2);
        assert_eq!(Scalar::parse(f2, "1/1").unwrap(), f2.one());
        assert!(Scalar::parse(f2, "1/2").is_err());
    }

    #[test]
    fn primality_screen() {
        assert!(Field::Prime(2).is_valid());
        assert!(Field::Prime(97).is_valid());
        assert!(!Field::Prime(1).is_valid());
        assert!(!Field::Prime(91).is_valid());
    }
}
