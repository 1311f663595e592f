//! Coherent-side oracles: character sets of theta modules enumerated in a
//! box, and Koszul resolutions of the pulled-back modules.

mod check;
mod koszul;

pub use check::{
    case3_sandwich_check, chart_characters, generic_samples, koszul_check, KoszulReport, PointFailure, SandwichReport,
};
pub use koszul::{koszul_euler, max_window, q2_characters, q2_contains, stalk_euler};

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{CccError, Result};
use crate::exactlin::{lcm_all, pair_unchecked, solve_full_column_rank, Rational, RationalVector};
use crate::stackyfan::{Cone, StackyFan};
use crate::thetapos::{enumerate_thetas, hom_constructible, support, HomValue, ThetaIndex};

/// Which lattice of characters to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    /// `{x : <x, b_k> in Z for the rays of the cone}`; the cone must be
    /// full-dimensional.
    OfCone,
    /// `(1/denominator) Z^n`.
    Grid { denominator: BigInt },
}

pub type PointSet = BTreeSet<RationalVector>;

fn grid_points(dim: usize, den: &BigInt, bound: &Rational) -> Result<Vec<RationalVector>> {
    if den <= &BigInt::zero() {
        return Err(CccError::invalid("grid denominator must be positive"));
    }
    if bound.is_negative() {
        return Err(CccError::invalid("box bound must be nonnegative"));
    }
    let d = Rational::from(den);
    let k = (bound * &d).floor();
    let k: i64 = i64::try_from(k).map_err(|_| CccError::invalid("box too large"))?;
    let span = (2 * k + 1) as u128;
    if span.pow(dim as u32) > 50_000_000 {
        return Err(CccError::invalid("box too large to enumerate"));
    }
    let steps: Vec<Rational> = (-k..=k).map(|i| &Rational::from_int(i) / &d).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        out.push(RationalVector(idx.iter().map(|&i| steps[i].clone()).collect()));
        let mut j = 0;
        while j < dim && idx[j] == steps.len() - 1 {
            idx[j] = 0;
            j += 1;
        }
        if j == dim {
            break;
        }
        idx[j] += 1;
    }
    Ok(out)
}

/// Characters of the theta module of `theta` lying in `[-bound, bound]^n`.
pub fn module_points(fan: &StackyFan, theta: &ThetaIndex, lattice: &LatticeChoice, bound: &Rational) -> Result<PointSet> {
    let supp = support(fan, theta, false)?;
    let (den, integral_on): (BigInt, Vec<usize>) = match lattice {
        LatticeChoice::Grid { denominator } => (denominator.clone(), Vec::new()),
        LatticeChoice::OfCone => {
            if theta.cone.dim() != fan.dim() {
                return Err(CccError::invalid(
                    "the lattice of a cone is embedded in M_R only for full-dimensional cones",
                ));
            }
            let idx = cone_index(fan, &theta.cone);
            (idx, theta.cone.rays().to_vec())
        }
    };
    let mut out = PointSet::new();
    for x in grid_points(fan.dim(), &den, bound)? {
        if integral_on.iter().all(|&k| pair_unchecked(&x, &fan.ray(k).b()).is_integer()) && supp.contains(&x) {
            out.insert(x);
        }
    }
    Ok(out)
}

fn cone_index(fan: &StackyFan, c: &Cone) -> BigInt {
    let m: Vec<Vec<Rational>> = c.rays().iter().map(|&i| fan.ray(i).b().to_rational().0).collect();
    crate::exactlin::determinant(&m)
        .expect("square")
        .abs()
        .to_integer()
        .expect("integral")
}

/// Denominator of a grid containing the character lattice of every
/// full-dimensional maximal cone.
pub fn fan_grid_denominator(fan: &StackyFan) -> BigInt {
    lcm_all(fan.max_cone_indices().iter())
}

/// Character lying on every facet of the closed support of `theta`, with
/// zero pairing against the remaining rays of a full-dimensional maximal
/// cone containing it. It lies on the grid of `fan_grid_denominator`.
pub fn lattice_apex(fan: &StackyFan, theta: &ThetaIndex) -> Result<RationalVector> {
    theta.validate(fan)?;
    let tau = fan
        .max_cones()
        .iter()
        .find(|m| m.dim() == fan.dim() && theta.cone.is_face_of(m))
        .ok_or_else(|| CccError::Unsupported("cone lies in no full-dimensional maximal cone".into()))?;
    let a: Vec<Vec<Rational>> = tau.rays().iter().map(|&i| fan.ray(i).b().to_rational().0).collect();
    let rhs: Vec<Rational> = tau
        .rays()
        .iter()
        .map(|&i| theta.threshold(i).map(Rational::from).unwrap_or_else(Rational::zero))
        .collect();
    Ok(RationalVector(solve_full_column_rank(&a, &rhs)?.expect("invertible")))
}

/// Smallest integral box bound for which the oracle is conclusive on
/// `thetas`.
pub fn required_bound<'a>(fan: &StackyFan, thetas: impl IntoIterator<Item = &'a ThetaIndex>) -> Result<Rational> {
    let mut b = Rational::zero();
    for t in thetas {
        for x in lattice_apex(fan, t)?.0 {
            b = b.max(x.abs());
        }
    }
    Ok(Rational::from(b.ceil()) + Rational::one())
}

/// Hom between theta modules decided from their character sets: nonzero
/// exactly when the second cone is a face of the first and every character
/// of the first module is a character of the second.
pub fn hom_module_oracle(fan: &StackyFan, theta1: &ThetaIndex, theta2: &ThetaIndex, bound: &Rational) -> Result<HomValue> {
    HomOracle::new(fan, bound.clone()).hom(theta1, theta2)
}

/// Caches character sets across many queries on one fan.
pub struct HomOracle<'a> {
    fan: &'a StackyFan,
    bound: Rational,
    lattice: LatticeChoice,
    cache: HashMap<ThetaIndex, PointSet>,
}

impl<'a> HomOracle<'a> {
    pub fn new(fan: &'a StackyFan, bound: Rational) -> HomOracle<'a> {
        HomOracle {
            fan,
            bound,
            lattice: LatticeChoice::Grid {
                denominator: fan_grid_denominator(fan),
            },
            cache: HashMap::new(),
        }
    }

    fn points(&mut self, theta: &ThetaIndex) -> Result<&PointSet> {
        if !self.cache.contains_key(theta) {
            let need = required_bound(self.fan, [theta])?;
            if self.bound < need {
                return Err(CccError::invalid(format!(
                    "box bound {} too small for {theta}; need at least {need}",
                    self.bound
                )));
            }
            let p = module_points(self.fan, theta, &self.lattice, &self.bound)?;
            self.cache.insert(theta.clone(), p);
        }
        Ok(&self.cache[theta])
    }

    pub fn hom(&mut self, theta1: &ThetaIndex, theta2: &ThetaIndex) -> Result<HomValue> {
        theta1.validate(self.fan)?;
        theta2.validate(self.fan)?;
        if !theta2.cone.is_face_of(&theta1.cone) {
            return Ok(HomValue::Zero);
        }
        let p1 = self.points(theta1)?.clone();
        let p2 = self.points(theta2)?;
        Ok(if p1.is_subset(p2) { HomValue::C0 } else { HomValue::Zero })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomCheckReport {
    pub pairs: usize,
    pub nonzero: usize,
    pub disagreements: Vec<(ThetaIndex, ThetaIndex)>,
    pub bound: Rational,
}

/// Compares the constructible hom with the character-set oracle over every
/// pair of theta indices with thresholds in `[-window, window]`.
pub fn hom_oracle_check(fan: &StackyFan, window: i64, bound: Option<Rational>) -> Result<HomCheckReport> {
    let thetas = enumerate_thetas(fan, window);
    let bound = match bound {
        Some(b) => b,
        None => required_bound(fan, &thetas)?,
    };
    let mut oracle = HomOracle::new(fan, bound.clone());
    let mut nonzero = 0;
    let mut dis = Vec::new();
    for a in &thetas {
        for b in &thetas {
            let c = hom_constructible(fan, a, b)?.value;
            let o = oracle.hom(a, b)?;
            if c == HomValue::C0 {
                nonzero += 1;
            }
            if c != o {
                dis.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(HomCheckReport {
        pairs: thetas.len() * thetas.len(),
        nonzero,
        disagreements: dis,
        bound,
    })
}
