use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{CccError, Result};
use crate::exactlin::ceil_div;
use crate::stackyfan::SameBaseSetup;
use crate::thetapos::{enumerate_thetas, leq, ThetaIndex};

fn per_ray(theta: &ThetaIndex, f: impl Fn(usize, &BigInt) -> Result<BigInt>) -> Result<ThetaIndex> {
    let t = theta
        .cone
        .rays()
        .iter()
        .zip(&theta.t)
        .map(|(&k, t)| f(k, t))
        .collect::<Result<Vec<_>>>()?;
    ThetaIndex::new(theta.cone.clone(), t)
}

/// Pullback from the `s`-weighted side to the dominating `lcm` side:
/// `t_k -> n_k t_k`.
pub fn pullback_case1(setup: &SameBaseSetup, theta: &ThetaIndex) -> Result<ThetaIndex> {
    theta.validate(setup.fan_s())?;
    per_ray(theta, |k, t| Ok(t * BigInt::from(setup.n()[k])))
}

/// Pushforward from the dominating side to the `r`-weighted side:
/// `t_k -> ceil(t_k / m_k)`.
pub fn pushforward_case1(setup: &SameBaseSetup, theta: &ThetaIndex) -> Result<ThetaIndex> {
    theta.validate(setup.fan_t())?;
    per_ray(theta, |k, t| ceil_div(t, &BigInt::from(setup.m()[k])))
}

/// The transform from the `s`-weighted side to the `r`-weighted side:
/// `t_k -> ceil(r_k t_k / s_k)`.
pub fn fm_case1(setup: &SameBaseSetup, theta: &ThetaIndex) -> Result<ThetaIndex> {
    theta.validate(setup.fan_s())?;
    per_ray(theta, |k, t| {
        ceil_div(&(t * BigInt::from(setup.r()[k])), &BigInt::from(setup.s()[k]))
    })
}

/// Image of the line bundle `O(sum c_i D_i)`, glued from the images of its
/// restrictions to the maximal cones. `None` if the local images do not
/// glue to a line bundle.
pub fn fm_line_bundle_case1(setup: &SameBaseSetup, c: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let fan = setup.fan_s();
    if !fan.is_complete() {
        return Err(CccError::precondition("line bundle transform needs a complete fan"));
    }
    if c.len() != fan.rays().len() {
        return Err(CccError::invalid(format!(
            "expected {} coefficients, got {}",
            fan.rays().len(),
            c.len()
        )));
    }
    let mut glued: BTreeMap<usize, BigInt> = BTreeMap::new();
    for mc in fan.max_cones() {
        let theta = ThetaIndex::new(mc.clone(), mc.rays().iter().map(|&i| -&c[i]).collect())?;
        let img = fm_case1(setup, &theta)?;
        for (&k, t) in img.cone.rays().iter().zip(&img.t) {
            let v = -t;
            match glued.get(&k) {
                Some(prev) if *prev != v => return Ok(None),
                _ => {
                    glued.insert(k, v);
                }
            }
        }
    }
    Ok(Some(glued.into_values().collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `theta1 <= theta2` but the images are not ordered.
    NotPreserved,
    /// The images are ordered but `theta1 <= theta2` fails.
    NotReflected,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub theta1: ThetaIndex,
    pub theta2: ThetaIndex,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct FFReport {
    pub embedding: bool,
    pub pairs: usize,
    pub violations: Vec<Violation>,
}

/// Checks that the transform is an order embedding on every theta index
/// with thresholds in `[-window, window]`.
pub fn poset_embedding_report(setup: &SameBaseSetup, window: i64) -> Result<FFReport> {
    let src = setup.fan_s();
    let dst = setup.fan_r();
    let thetas = enumerate_thetas(src, window);
    let images: Vec<ThetaIndex> = thetas.iter().map(|t| fm_case1(setup, t)).collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for (a, fa) in thetas.iter().zip(&images) {
        for (b, fb) in thetas.iter().zip(&images) {
            let before = leq(src, a, b)?;
            let after = leq(dst, fa, fb)?;
            if before != after {
                violations.push(Violation {
                    theta1: a.clone(),
                    theta2: b.clone(),
                    kind: if before {
                        ViolationKind::NotPreserved
                    } else {
                        ViolationKind::NotReflected
                    },
                });
            }
        }
    }
    violations.sort();
    Ok(FFReport {
        embedding: violations.is_empty(),
        pairs: thetas.len() * thetas.len(),
        violations,
    })
}
