use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CccError, Result};

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline;
/// everything else falls back to `BigRational`. The representation is
/// canonical, so structural equality and hashing agree with numeric equality.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let (mut n, mut d) = (num, den);
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => return Rational::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))),
            }
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
        let den = den.into();
        if den.is_zero() {
            return Err(CccError::invalid("zero denominator"));
        }
        Ok(Rational::from_big(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(Repr::Small(n, 1))
    }

    pub fn zero() -> Rational {
        Rational::from_int(0)
    }

    pub fn one() -> Rational {
        Rational::from_int(1)
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(CccError::invalid("division by zero"));
        }
        Ok(match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Rational::from_big(r.recip()),
        })
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational> {
        Ok(self * &other.recip()?)
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_floor(d)),
            Repr::Big(r) => r.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_ceil(d)),
            Repr::Big(r) => r.ceil().to_integer(),
        }
    }

    /// Floor as a rational, avoiding a round trip through `BigInt`.
    pub fn floor_r(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_int(n.div_floor(d)),
            Repr::Big(r) => Rational::from_big(r.floor()),
        }
    }

    pub fn ceil_r(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_int(n.div_ceil(d)),
            Repr::Big(r) => Rational::from_big(r.ceil()),
        }
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.numer())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Decimal rendering rounded half away from zero to `digits` fractional
    /// digits, with trailing zeros removed.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let num = self.numer() * &scale;
        let den = self.denom();
        let neg = num.is_negative();
        let num = num.abs();
        let (q, r) = num.div_rem(&den);
        let q = if r * 2 >= den { q + 1 } else { q };
        let (int_part, frac_part) = q.div_rem(&scale);
        let mut frac = frac_part.to_string();
        while frac.len() < digits as usize {
            frac.insert(0, '0');
        }
        let frac = frac.trim_end_matches('0');
        let sign = if neg && !(int_part.is_zero() && frac.is_empty()) { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Rational::from_int(v),
            None => Rational(Repr::Big(BigRational::from_integer(n.clone()))),
        }
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from(&n)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_impl(x: &Rational, y: &Rational) -> Rational {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if *b == 1 && *d == 1 {
            return Rational::from_i128(*a as i128 + *c as i128, 1);
        }
        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
        if let (Some(p), Some(q), Some(den)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
            if let Some(num) = p.checked_add(q) {
                return Rational::from_i128(num, den);
            }
        }
    }
    Rational::from_big(x.to_big() + y.to_big())
}

fn mul_impl(x: &Rational, y: &Rational) -> Rational {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
        if let (Some(num), Some(den)) = (a.checked_mul(c), b.checked_mul(d)) {
            return Rational::from_i128(num, den);
        }
    }
    Rational::from_big(x.to_big() * y.to_big())
}

fn neg_impl(x: &Rational) -> Rational {
    match &x.0 {
        Repr::Small(n, d) => match n.checked_neg() {
            Some(m) => Rational(Repr::Small(m, *d)),
            None => Rational::from_big(-x.to_big()),
        },
        Repr::Big(r) => Rational::from_big(-r.clone()),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                $f(self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                $f(&self, rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, |x: &Rational, y: &Rational| add_impl(x, &neg_impl(y)));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |x: &Rational, y: &Rational| mul_impl(
    x,
    &y.recip().expect("division by zero rational")
));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_impl(&self)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_impl(self)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = CccError;

    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| CccError::invalid(format!("malformed rational '{s}'")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rational::from_int(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(2, -4).to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(0, -5), Rational::zero());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(q(7, 2).ceil(), BigInt::from(4));
        assert_eq!(q(4, 1).ceil(), BigInt::from(4));
    }

    #[test]
    fn overflow_promotes_to_big() {
        let a = Rational::from_int(i64::MAX);
        let b = &a + &a;
        assert_eq!(b.numer(), BigInt::from(i64::MAX) * 2);
        let c = &b - &a;
        assert_eq!(c, a);
        let m = Rational::from_int(i64::MIN);
        assert_eq!((-&m).numer(), -BigInt::from(i64::MIN));
        let tiny = q(1, i64::MAX);
        let sq = &tiny * &tiny;
        assert_eq!(sq.denom(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        assert_eq!(&sq * &Rational::from_int(i64::MAX), tiny);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(q(2, 3).to_decimal(12), "0.666666666667");
        assert_eq!(q(-1, 2).to_decimal(12), "-0.5");
        assert_eq!(q(400, 1).to_decimal(12), "400");
        assert_eq!(q(-1, 10i64.pow(15)).to_decimal(12), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/4", "-5", "0", "-12/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let j: Rational = serde_json::from_str("\"-2/6\"").unwrap();
        assert_eq!(j, q(-1, 3));
        let k: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(k, q(7, 1));
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let (x, y) = (q(a, b), q(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.floor(), bx.floor().to_integer());
            prop_assert_eq!(x.ceil(), bx.ceil().to_integer());
        }

        #[test]
        fn large_values_match_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let (x, y) = (q(a, b), q(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}
