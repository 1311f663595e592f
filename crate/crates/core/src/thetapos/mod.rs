//! Theta indices, their supports in M_R, and the poset they form.

mod ample;
mod lagrangian;

pub use ample::{ample_polytope, is_q_ample, minkowski_sum};
pub use lagrangian::{lambda_skeleton, LagrangianPiece};

pub use crate::exactlin::{HalfSpace, Polyhedron};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CccError, Result};
use crate::exactlin::{pair_unchecked, solve_apex, LatticeVector, Rational, RationalVector};
use crate::stackyfan::{Cone, StackyFan};

/// A cone together with a character on it, recorded by the integers
/// `t_k = <chi, b_k>` over the rays of the cone in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaIndex {
    pub cone: Cone,
    pub t: Vec<BigInt>,
}

impl ThetaIndex {
    pub fn new(cone: Cone, t: Vec<BigInt>) -> Result<ThetaIndex> {
        if cone.dim() != t.len() {
            return Err(CccError::invalid(format!(
                "theta index: cone has {} rays but {} thresholds were given",
                cone.dim(),
                t.len()
            )));
        }
        Ok(ThetaIndex { cone, t })
    }

    /// From ray indices and thresholds paired in any order.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<ThetaIndex> {
        let mut p = pairs.to_vec();
        p.sort();
        if p.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CccError::invalid("theta index: repeated ray"));
        }
        ThetaIndex::new(
            Cone::new(p.iter().map(|x| x.0).collect()),
            p.iter().map(|x| BigInt::from(x.1)).collect(),
        )
    }

    pub fn zero() -> ThetaIndex {
        ThetaIndex {
            cone: Cone::zero(),
            t: Vec::new(),
        }
    }

    /// Threshold on ray `i`, if `i` is a ray of the cone.
    pub fn threshold(&self, i: usize) -> Option<&BigInt> {
        self.cone.position(i).map(|k| &self.t[k])
    }

    pub fn validate(&self, fan: &StackyFan) -> Result<()> {
        if self.cone.dim() != self.t.len() {
            return Err(CccError::invalid("theta index: threshold count mismatch"));
        }
        if !fan.has_cone(&self.cone) {
            return Err(CccError::invalid(format!("cone {:?} is not a cone of the fan", self.cone)));
        }
        Ok(())
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone={};t=", self.cone)?;
        for (i, x) in self.t.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| CccError::invalid(format!("malformed {what} entry '{x}'")))
        })
        .collect()
}

impl FromStr for ThetaIndex {
    type Err = CccError;

    /// Parses `cone=i,j,...;t=a,b,...`; the zero cone is `cone=;t=`.
    fn from_str(s: &str) -> Result<ThetaIndex> {
        let mut cone = None;
        let mut t = None;
        for part in s.split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CccError::invalid(format!("malformed theta index '{s}'")))?;
            match k.trim() {
                "cone" => cone = Some(parse_list::<usize>(v, "cone")?),
                "t" => t = Some(parse_list::<BigInt>(v, "t")?),
                other => return Err(CccError::invalid(format!("unknown theta field '{other}'"))),
            }
        }
        let (Some(c), Some(t)) = (cone, t) else {
            return Err(CccError::invalid(format!("theta index '{s}' needs both cone= and t=")));
        };
        if c.len() != t.len() {
            return Err(CccError::invalid("theta index: cone and t lengths differ"));
        }
        let mut pairs: Vec<(usize, BigInt)> = c.into_iter().zip(t).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CccError::invalid("theta index: repeated ray"));
        }
        ThetaIndex::new(
            Cone::new(pairs.iter().map(|p| p.0).collect()),
            pairs.into_iter().map(|p| p.1).collect(),
        )
    }
}

impl Serialize for ThetaIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ThetaIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ThetaIndex, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `{x : <x, v_k> >= t_k / r_k}` over the rays of the cone, strict when
/// `open`.
pub fn support(fan: &StackyFan, theta: &ThetaIndex, open: bool) -> Result<Polyhedron> {
    theta.validate(fan)?;
    let constraints = theta
        .cone
        .rays()
        .iter()
        .zip(&theta.t)
        .map(|(&i, t)| {
            let r = fan.ray(i);
            HalfSpace::new(
                r.v.clone(),
                &Rational::from(t) / &Rational::from_int(r.weight as i64),
                open,
            )
        })
        .collect();
    Polyhedron::new(fan.dim(), constraints)
}

/// Apex of the shifted dual cone, taken in the span of the cone.
pub fn apex(fan: &StackyFan, theta: &ThetaIndex) -> Result<RationalVector> {
    theta.validate(fan)?;
    let rays: Vec<LatticeVector> = theta.cone.rays().iter().map(|&i| fan.ray(i).b()).collect();
    let th: Vec<Rational> = theta.t.iter().map(Rational::from).collect();
    solve_apex(fan.dim(), &rays, &th)
}

/// Inclusion of closed supports: `supp(theta1) ⊆ supp(theta2)`.
///
/// Decided by the apex criterion: the cone of `theta2` is a face of the cone
/// of `theta1`, and the apex difference pairs nonnegatively with the rays of
/// `theta2`.
pub fn leq(fan: &StackyFan, theta1: &ThetaIndex, theta2: &ThetaIndex) -> Result<bool> {
    theta1.validate(fan)?;
    theta2.validate(fan)?;
    if !theta2.cone.is_face_of(&theta1.cone) {
        return Ok(false);
    }
    let d = apex(fan, theta1)?.sub(&apex(fan, theta2)?);
    Ok(theta2
        .cone
        .rays()
        .iter()
        .all(|&k| !pair_unchecked(&d, &fan.ray(k).b()).is_negative()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomValue {
    #[serde(rename = "C0")]
    C0,
    #[serde(rename = "0")]
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum HomReason {
    /// Supports are nested.
    Inclusion,
    /// The second cone is not a face of the first.
    ConeNotFace,
    /// The threshold on this ray of the second cone is not met.
    ThresholdFails { ray: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomResult {
    pub value: HomValue,
    pub reason: HomReason,
}

/// Hom between the costandard sheaves of two theta indices.
pub fn hom_constructible(fan: &StackyFan, theta1: &ThetaIndex, theta2: &ThetaIndex) -> Result<HomResult> {
    if leq(fan, theta1, theta2)? {
        return Ok(HomResult {
            value: HomValue::C0,
            reason: HomReason::Inclusion,
        });
    }
    if !theta2.cone.is_face_of(&theta1.cone) {
        return Ok(HomResult {
            value: HomValue::Zero,
            reason: HomReason::ConeNotFace,
        });
    }
    let ray = theta2
        .cone
        .rays()
        .iter()
        .zip(&theta2.t)
        .find(|(&k, t2)| theta1.threshold(k).is_some_and(|t1| t1 < *t2))
        .map(|(&k, _)| k)
        .expect("some threshold fails");
    Ok(HomResult {
        value: HomValue::Zero,
        reason: HomReason::ThresholdFails { ray },
    })
}

/// All theta indices over the fan with thresholds in `[-window, window]`.
pub fn enumerate_thetas(fan: &StackyFan, window: i64) -> Vec<ThetaIndex> {
    let mut out = Vec::new();
    for c in fan.cones() {
        let d = c.dim();
        let mut cur = vec![-window; d];
        loop {
            out.push(ThetaIndex {
                cone: c.clone(),
                t: cur.iter().map(|&x| BigInt::from(x)).collect(),
            });
            let mut k = 0;
            while k < d && cur[k] == window {
                cur[k] = -window;
                k += 1;
            }
            if k == d {
                break;
            }
            cur[k] += 1;
        }
    }
    out
}
