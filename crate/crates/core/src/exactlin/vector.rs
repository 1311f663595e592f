use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{CccError, Result};

/// Integer vector in N (or M, depending on context).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(
    #[serde(
        serialize_with = "crate::bigint_serde::serialize_vec",
        deserialize_with = "crate::bigint_serde::deserialize_vec"
    )]
    pub Vec<BigInt>,
);

/// Rational vector, used for points of M_R.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(pub Vec<Rational>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> LatticeVector {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> LatticeVector {
        LatticeVector(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(Rational::from).collect())
    }
}

impl RationalVector {
    pub fn zero(dim: usize) -> RationalVector {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> RationalVector {
        RationalVector(v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Least integer k with k >= p/q.
pub fn ceil_div(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    if q.is_zero() {
        return Err(CccError::invalid("ceil_div by zero"));
    }
    Ok(Integer::div_ceil(p, q))
}

pub fn floor_div(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    if q.is_zero() {
        return Err(CccError::invalid("floor_div by zero"));
    }
    Ok(Integer::div_floor(p, q))
}

/// Canonical pairing of M_R with N.
pub fn pair(x: &RationalVector, v: &LatticeVector) -> Result<Rational> {
    if x.dim() != v.dim() {
        return Err(CccError::invalid(format!(
            "dimension mismatch in pairing: {} vs {}",
            x.dim(),
            v.dim()
        )));
    }
    Ok(pair_unchecked(x, v))
}

pub(crate) fn pair_unchecked(x: &RationalVector, v: &LatticeVector) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.0.iter().zip(&v.0) {
        if !b.is_zero() {
            acc = acc + a * Rational::from(b);
        }
    }
    acc
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::from(1), |l, x| l.lcm(&x.abs()))
}
