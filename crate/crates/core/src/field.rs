//! Exact arithmetic in the real quadratic field `Q(sqrt d)`.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with rational `a`, `b`. Purely rational
//! values carry no field parameter, so they mix freely with elements of any
//! `Q(sqrt d)`. Combining two irrational values from different fields is a
//! programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default field parameter: every worked example lives in `Q(sqrt 2)`.
pub const DEFAULT_D: u64 = 2;

/// Checks that `d` can serve as the field parameter: square-free and at least 2.
pub fn validate_field(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidField(d));
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return Err(Error::InvalidField(d));
        }
        k += 1;
    }
    Ok(d)
}

/// Element `a + b*sqrt(d)` of a real quadratic field.
///
/// Canonical form: when `b == 0` the stored field parameter is 0, so equal
/// values are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational number `num / den`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    /// `a + b*sqrt(d)`; `d` must be square-free and at least 2.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        validate_field(d)?;
        Ok(Self { a, b, d }.normalized())
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    /// Rational part.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `sqrt(d)`.
    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// Field parameter, or `None` for a rational value.
    pub fn field(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn joint_field(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing elements of Q(sqrt {d}) and Q(sqrt {e})"),
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm `a^2 - d*b^2`, a rational number.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d,
        }
        .normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Sign of the real number, computed exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with d*b^2
        let d = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = d * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    /// Parses a literal of the form `rat`, `rat*r` or `rat(+|-)rat*r`, where
    /// `r` stands for `sqrt(d)`. A bare `r` or `-r` is accepted as shorthand.
    pub fn parse(literal: &str, d: u64) -> Result<Self> {
        validate_field(d)?;
        let err = |reason: &str| Error::Parse {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let s = literal.trim();
        if s.is_empty() {
            return Err(err("empty literal"));
        }
        let Some(body) = s.strip_suffix('r') else {
            return Ok(Self::rational(parse_rational(s).ok_or_else(|| err("bad rational"))?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split off the rational part at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat, surd) = match split {
            Some(i) => (Some(&body[..i]), &body[i..]),
            None => (None, body),
        };
        let a = match rat {
            Some(r) => parse_rational(r).ok_or_else(|| err("bad rational part"))?,
            None => BigRational::zero(),
        };
        let surd = surd.strip_prefix('+').unwrap_or(surd);
        let b = match surd {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other).ok_or_else(|| err("bad surd coefficient"))?,
        };
        Self::new(a, b, d)
    }

    /// Literal form accepted by [`Scalar::parse`].
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !valid(num, true) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) if valid(d, false) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*r", fmt_rational(&self.b));
        }
        let sep = if self.b.is_negative() { "" } else { "+" };
        write!(f, "{}{}{}*r", fmt_rational(&self.a), sep, fmt_rational(&self.b))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{self}")
        } else {
            write!(f, "{self} (r = sqrt {})", self.d)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.joint_field(rhs);
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.joint_field(rhs);
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        }
        .normalized()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::rational(&self.a * &rhs.a);
        }
        let d = self.joint_field(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        Scalar {
            a: &self.a * &rhs.a + dd * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// Serialized as its literal, e.g. `"1/2+3*r"`.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_literal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lit: &str) -> Scalar {
        Scalar::parse(lit, 2).unwrap()
    }

    #[test]
    fn conjugate_pair_multiplies_to_one() {
        assert_eq!(s("1+1*r") * s("-1+1*r"), Scalar::one());
    }

    #[test]
    fn halves_of_sqrt_two_add_up() {
        assert_eq!(s("1/2*r") + s("1/2*r"), s("r"));
    }

    #[test]
    fn inverse_of_sqrt_two() {
        assert_eq!(s("r").inv().unwrap(), s("1/2*r"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn literals_round_trip() {
        for lit in ["0", "1", "-3/2", "1/2*r", "1+2*r", "-1-1/3*r", "-7*r"] {
            assert_eq!(s(lit).to_string(), lit);
        }
        assert_eq!(s("r").to_string(), "1*r");
        assert_eq!(s("-r").to_string(), "-1*r");
        assert_eq!(s("2/4"), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn bad_literals_are_rejected() {
        for lit in ["", "x", "1/0", "1/-2", "1+", "r*r", "1.5", "--1"] {
            assert!(Scalar::parse(lit, 2).is_err(), "{lit}");
        }
    }

    #[test]
    fn field_parameter_must_be_square_free() {
        assert!(validate_field(2).is_ok());
        assert!(validate_field(6).is_ok());
        assert!(validate_field(4).is_err());
        assert!(validate_field(12).is_err());
        assert!(validate_field(1).is_err());
    }

    #[test]
    fn canonical_zero_forgets_the_field() {
        let z = s("r") - s("r");
        assert_eq!(z, Scalar::zero());
        assert!(z.field().is_none());
    }

    #[test]
    fn signum_is_exact() {
        assert_eq!(s("3/2-1*r").signum(), 1);
        assert_eq!(s("7/5-1*r").signum(), -1);
        assert_eq!(s("-2+1*r").signum(), -1);
        assert_eq!(Scalar::zero().signum(), 0);
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_fields_panics() {
        let _ = Scalar::sqrt_d(2).unwrap() + Scalar::sqrt_d(3).unwrap();
    }
}
