use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{CccError, Result};
use crate::exactlin::{HalfSpace, Polyhedron, Rational, RationalVector};
use crate::stackyfan::{Cone, ContractionSetup, Discrepancy, KComparison};
use crate::thetapos::{leq, support, HomValue, ThetaIndex};

/// One term of the Cech resolution of an image, a theta index on the
/// blown-up side placed in the given cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CechTerm {
    pub degree: usize,
    pub theta: ThetaIndex,
}

/// Image of a theta index of the contracted side on the blown-up side.
#[derive(Clone, Debug, Serialize)]
pub struct Case2Image {
    /// Open support of the image.
    pub support: Polyhedron,
    /// Threshold acquired on the extra ray, when the cone contains I'.
    #[serde(serialize_with = "crate::bigint_serde::serialize_opt")]
    pub extra_threshold: Option<BigInt>,
    pub cech: Vec<CechTerm>,
}

impl Case2Image {
    /// Alternating count of Cech terms whose open support contains `x`.
    pub fn cech_euler(&self, setup: &ContractionSetup, x: &RationalVector) -> Result<i64> {
        let mut e = 0;
        for term in &self.cech {
            if support(setup.sigma1(), &term.theta, true)?.contains(x) {
                e += if term.degree % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(e)
    }
}

/// `ceil(sum_{i in I'} alpha_i t_i)`.
pub fn extra_threshold(setup: &ContractionSetup, theta: &ThetaIndex) -> Option<BigInt> {
    let ip = setup.i_prime();
    if !ip.is_face_of(&theta.cone) {
        return None;
    }
    let s: Rational = ip
        .rays()
        .iter()
        .map(|&i| &setup.alpha()[i] * &Rational::from(theta.threshold(i).unwrap()))
        .sum();
    Some(s.ceil())
}

pub fn fm_case2(setup: &ContractionSetup, theta: &ThetaIndex) -> Result<Case2Image> {
    let fan2 = setup.sigma2();
    let mut supp = support(fan2, theta, true)?;
    let n = setup.extra_index();
    let Some(t_extra) = extra_threshold(setup, theta) else {
        return Ok(Case2Image {
            support: supp,
            extra_threshold: None,
            cech: vec![CechTerm {
                degree: 0,
                theta: theta.clone(),
            }],
        });
    };
    let w = Rational::from_int(setup.extra().weight as i64);
    supp.push(HalfSpace::new(setup.extra().v.clone(), &Rational::from(&t_extra) / &w, true));
    let ip = setup.i_prime();
    let mut cech = Vec::new();
    for s in ip.faces() {
        if s.dim() == 0 {
            continue;
        }
        let cone = theta.cone.minus(&s).union(&Cone::new(vec![n]));
        let t = cone
            .rays()
            .iter()
            .map(|&i| if i == n { t_extra.clone() } else { theta.threshold(i).unwrap().clone() })
            .collect();
        cech.push(CechTerm {
            degree: s.dim() - 1,
            theta: ThetaIndex::new(cone, t)?,
        });
    }
    cech.sort_by(|a, b| a.degree.cmp(&b.degree).then(a.theta.cmp(&b.theta)));
    Ok(Case2Image {
        support: supp,
        extra_threshold: Some(t_extra),
        cech,
    })
}

/// Image of `O(sum c_i D_i)` from the contracted side: the coefficient on
/// the extra divisor is `floor(sum alpha_i c_i)`.
pub fn fm_line_bundle_case2(setup: &ContractionSetup, c: &[BigInt]) -> Result<Vec<BigInt>> {
    if c.len() != setup.dim() {
        return Err(CccError::invalid(format!("expected {} coefficients, got {}", setup.dim(), c.len())));
    }
    let theta = ThetaIndex::new(setup.i_all(), c.iter().map(|x| -x).collect())?;
    let t = extra_threshold(setup, &theta).expect("full cone contains I'");
    let mut out = c.to_vec();
    out.push(-t);
    Ok(out)
}

/// Evidence for a vanishing hom between images.
#[derive(Clone, Debug, Serialize)]
pub struct Case2Certificate {
    /// A point of the first image outside the second.
    pub witness: RationalVector,
    /// Whether the first cone misses a ray of the second.
    pub cone_not_face: bool,
    /// Both cones contain I' and every I'-threshold strictly increases.
    pub all_shifted: bool,
    /// Increase of the extra threshold, when both cones contain I'.
    #[serde(serialize_with = "crate::bigint_serde::serialize_opt")]
    pub extra_gap: Option<BigInt>,
    /// `ceil(sum alpha_k (t'_k - t_k))` over I'.
    #[serde(serialize_with = "crate::bigint_serde::serialize_opt")]
    pub gap_bound: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case2Ext {
    pub value: HomValue,
    pub images_nested: bool,
    pub source_leq: bool,
    pub certificate: Option<Case2Certificate>,
}

/// Hom between the images of two theta indices of the contracted side.
pub fn ext_case2(setup: &ContractionSetup, theta: &ThetaIndex, theta_p: &ThetaIndex) -> Result<Case2Ext> {
    if !matches!(setup.discrepancy(), KComparison::Geq | KComparison::Equal) {
        return Err(CccError::precondition(
            "images of the contracted side are compared only when sum alpha_i >= 1",
        ));
    }
    let a = fm_case2(setup, theta)?;
    let b = fm_case2(setup, theta_p)?;
    let source_leq = leq(setup.sigma2(), theta, theta_p)?;
    let witness = a.support.difference_witness(&b.support);
    let images_nested = witness.is_none();
    let certificate = witness.map(|w| {
        let mut all_shifted = false;
        let mut extra_gap = None;
        let mut gap_bound = None;
        if let (Some(t), Some(tp)) = (&a.extra_threshold, &b.extra_threshold) {
            let ip = setup.i_prime();
            let diffs: Vec<BigInt> = ip
                .rays()
                .iter()
                .map(|&k| theta_p.threshold(k).unwrap() - theta.threshold(k).unwrap())
                .collect();
            all_shifted = diffs.iter().all(|d| *d >= BigInt::from(1));
            let bound: Rational = ip
                .rays()
                .iter()
                .zip(&diffs)
                .map(|(&k, d)| &setup.alpha()[k] * &Rational::from(d))
                .sum();
            extra_gap = Some(tp - t);
            gap_bound = Some(bound.ceil());
        }
        Case2Certificate {
            witness: w,
            cone_not_face: !theta_p.cone.is_face_of(&theta.cone),
            all_shifted,
            extra_gap,
            gap_bound,
        }
    });
    Ok(Case2Ext {
        value: if images_nested { HomValue::C0 } else { HomValue::Zero },
        images_nested,
        source_leq,
        certificate,
    })
}
