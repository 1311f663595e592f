//! Simplicial stacky fans and the two kinds of birational setups between them.

mod bundled;
mod setup;

pub use bundled::*;
pub use setup::{
    build_contraction, build_same_base, discrepancy_compare, parse_contraction, parse_same_base, ContractionSetup,
    Discrepancy, KComparison, SameBaseSetup,
};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{CccError, Result};
use crate::exactlin::{determinant, lattice_rank, solve_system, LatticeVector, Rational};

/// Primitive ray generator together with its stacky weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedRay {
    pub v: LatticeVector,
    pub weight: u64,
}

impl WeightedRay {
    pub fn new(v: &[i64], weight: u64) -> WeightedRay {
        WeightedRay {
            v: LatticeVector::from_i64(v),
            weight,
        }
    }

    /// The stacky generator `weight * v`.
    pub fn b(&self) -> LatticeVector {
        self.v.scale(&BigInt::from(self.weight))
    }
}

/// A cone given by the sorted indices of its rays. The empty set is the zero
/// cone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Cone {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn zero() -> Cone {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Position of ray `i` in the sorted ray list.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|&i| other.contains_ray(i))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|&i| other.contains_ray(i)).collect())
    }

    pub fn union(&self, other: &Cone) -> Cone {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Cone::new(v)
    }

    pub fn minus(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|&i| !other.contains_ray(i)).collect())
    }

    /// All faces, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.0.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u64..(1u64 << k) {
            out.push(Cone(
                (0..k).filter(|b| mask >> b & 1 == 1).map(|b| self.0[b]).collect(),
            ));
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Simplicial stacky fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    dim: usize,
    rays: Vec<WeightedRay>,
    max_cones: Vec<Cone>,
    cones: Vec<Cone>,
}

#[derive(Serialize, Deserialize)]
struct RayJson {
    #[serde(
        serialize_with = "crate::bigint_serde::serialize_vec",
        deserialize_with = "crate::bigint_serde::deserialize_vec"
    )]
    v: Vec<BigInt>,
    #[serde(default = "one")]
    weight: u64,
}

fn one() -> u64 {
    1
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    dim: usize,
    rays: Vec<RayJson>,
    max_cones: Vec<Vec<usize>>,
}

impl StackyFan {
    pub fn new(dim: usize, rays: Vec<WeightedRay>, max_cones: Vec<Vec<usize>>) -> Result<StackyFan> {
        for (i, r) in rays.iter().enumerate() {
            let loc = format!("rays[{i}]");
            if r.v.dim() != dim {
                return Err(CccError::validation(loc, format!("expected {dim} coordinates")));
            }
            if r.weight == 0 {
                return Err(CccError::validation(loc + ".weight", "weight must be positive"));
            }
            if !r.v.is_primitive() {
                return Err(CccError::validation(loc + ".v", format!("{} is not primitive", r.v)));
            }
        }
        for i in 0..rays.len() {
            for j in 0..i {
                if rays[i].v == rays[j].v {
                    return Err(CccError::validation(format!("rays[{i}]"), format!("duplicates rays[{j}]")));
                }
            }
        }
        let mut maxes = Vec::new();
        for (k, mc) in max_cones.iter().enumerate() {
            let loc = format!("max_cones[{k}]");
            if let Some(&bad) = mc.iter().find(|&&i| i >= rays.len()) {
                return Err(CccError::validation(loc, format!("ray index {bad} out of range")));
            }
            let c = Cone::new(mc.clone());
            if c.dim() != mc.len() {
                return Err(CccError::validation(loc, "repeated ray index"));
            }
            let gens: Vec<LatticeVector> = c.rays().iter().map(|&i| rays[i].v.clone()).collect();
            if lattice_rank(&gens) != gens.len() {
                return Err(CccError::validation(loc, "cone is not simplicial"));
            }
            maxes.push(c);
        }
        for i in 0..maxes.len() {
            for j in 0..maxes.len() {
                if i != j && maxes[i].is_face_of(&maxes[j]) {
                    return Err(CccError::validation(
                        format!("max_cones[{i}]"),
                        format!("contained in max_cones[{j}]"),
                    ));
                }
            }
        }
        let used: BTreeSet<usize> = maxes.iter().flat_map(|c| c.rays().iter().copied()).collect();
        if let Some(i) = (0..rays.len()).find(|i| !used.contains(i)) {
            return Err(CccError::validation(format!("rays[{i}]"), "ray lies in no cone"));
        }
        let fan = StackyFan {
            dim,
            rays,
            cones: Vec::new(),
            max_cones: maxes,
        };
        fan.check_intersections()?;
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in &fan.max_cones {
            all.extend(c.faces());
        }
        if all.is_empty() {
            all.insert(Cone::zero());
        }
        let mut cones: Vec<Cone> = all.into_iter().collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.cmp(b)));
        Ok(StackyFan { cones, ..fan })
    }

    /// Checks that any two maximal cones meet along their common face.
    fn check_intersections(&self) -> Result<()> {
        for (x, s) in self.max_cones.iter().enumerate() {
            for (y, t) in self.max_cones.iter().enumerate().skip(x + 1) {
                let common = s.intersection(t);
                let sv: Vec<usize> = s.rays().to_vec();
                let tv: Vec<usize> = t.rays().to_vec();
                let nv = sv.len() + tv.len();
                // variables: lambda (rays of s), mu (rays of t)
                let mut ineq = Vec::new();
                for k in 0..nv {
                    let mut a = vec![Rational::zero(); nv];
                    a[k] = Rational::one();
                    ineq.push((a, Rational::zero(), false));
                }
                let mut eq = Vec::new();
                for d in 0..self.dim {
                    let mut a = Vec::with_capacity(nv);
                    for &i in &sv {
                        a.push(Rational::from(&self.rays[i].v.0[d]));
                    }
                    for &j in &tv {
                        a.push(-Rational::from(&self.rays[j].v.0[d]));
                    }
                    eq.push((a, Rational::zero()));
                }
                for (k, &i) in sv.iter().enumerate() {
                    if common.contains_ray(i) {
                        continue;
                    }
                    let mut ineq2 = ineq.clone();
                    let mut a = vec![Rational::zero(); nv];
                    a[k] = Rational::one();
                    ineq2.push((a, Rational::zero(), true));
                    if solve_system(nv, &ineq2, &eq).is_some() {
                        return Err(CccError::validation(
                            format!("max_cones[{x}]"),
                            format!("overlaps max_cones[{y}] beyond their common face"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[WeightedRay] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &WeightedRay {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Every cone of the fan, ordered by dimension then lexicographically.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn has_cone(&self, c: &Cone) -> bool {
        self.max_cones.iter().any(|m| c.is_face_of(m))
    }

    pub fn weights(&self) -> Vec<u64> {
        self.rays.iter().map(|r| r.weight).collect()
    }

    /// Same combinatorics with new weights.
    pub fn reweighted(&self, weights: &[u64]) -> Result<StackyFan> {
        if weights.len() != self.rays.len() {
            return Err(CccError::invalid(format!(
                "expected {} weights, got {}",
                self.rays.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(CccError::invalid("weights must be positive"));
        }
        let rays = self
            .rays
            .iter()
            .zip(weights)
            .map(|(r, &w)| WeightedRay { v: r.v.clone(), weight: w })
            .collect();
        Ok(StackyFan { rays, ..self.clone() })
    }

    /// `|det|` of the stacky generators of each full-dimensional maximal cone.
    pub fn max_cone_indices(&self) -> Vec<BigInt> {
        self.max_cones
            .iter()
            .filter(|c| c.dim() == self.dim)
            .map(|c| {
                let m: Vec<Vec<Rational>> = c.rays().iter().map(|&i| self.rays[i].b().to_rational().0).collect();
                let d = determinant(&m).expect("square");
                d.abs().to_integer().expect("integer determinant")
            })
            .collect()
    }

    /// Completeness: every maximal cone is full-dimensional, every facet of a
    /// maximal cone lies in exactly two maximal cones, and maximal cones are
    /// connected through shared facets.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.dim() != self.dim) {
            return false;
        }
        for c in &self.max_cones {
            for &r in c.rays() {
                let facet = c.minus(&Cone(vec![r]));
                let n = self.max_cones.iter().filter(|m| facet.is_face_of(m)).count();
                if n != 2 {
                    return false;
                }
            }
        }
        let k = self.max_cones.len();
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !seen[j] && self.max_cones[i].intersection(&self.max_cones[j]).dim() + 1 == self.dim {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = FanJson {
            dim: self.dim,
            rays: self
                .rays
                .iter()
                .map(|r| RayJson {
                    v: r.v.0.clone(),
                    weight: r.weight,
                })
                .collect(),
            max_cones: self.max_cones.iter().map(|c| c.0.clone()).collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

pub(crate) fn fan_from_value(v: &serde_json::Value) -> Result<StackyFan> {
    let j: FanJson = serde_json::from_value(v.clone())?;
    let rays = j
        .rays
        .into_iter()
        .map(|r| WeightedRay {
            v: LatticeVector(r.v),
            weight: r.weight,
        })
        .collect();
    StackyFan::new(j.dim, rays, j.max_cones)
}

/// Parses and validates a fan from its JSON text.
pub fn parse_fan(json: &str) -> Result<StackyFan> {
    let v: serde_json::Value = serde_json::from_str(json)?;
    fan_from_value(&v)
}
