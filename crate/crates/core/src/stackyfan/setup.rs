use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{fan_from_value, Cone, StackyFan, WeightedRay};
use crate::error::{CccError, Result};
use crate::exactlin::{cone_coefficients, lattice_rank, lcm_all, LatticeVector, Rational};

/// Comparison of the pulled-back canonical classes of the two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KComparison {
    /// Source side dominates: the forward transform is expected fully faithful.
    Geq,
    Leq,
    Equal,
    Incomparable,
}

pub trait Discrepancy {
    fn discrepancy(&self) -> KComparison;
}

pub fn discrepancy_compare<D: Discrepancy + ?Sized>(d: &D) -> KComparison {
    d.discrepancy()
}

/// Two stacky fans on the same underlying fan, weights `r` (target) and `s`
/// (source), dominated by the one with weights `lcm(r_i, s_i)`.
#[derive(Clone, Debug)]
pub struct SameBaseSetup {
    fan_r: StackyFan,
    fan_s: StackyFan,
    fan_t: StackyFan,
    r: Vec<u64>,
    s: Vec<u64>,
    t: Vec<u64>,
    m: Vec<u64>,
    n: Vec<u64>,
}

pub fn build_same_base(fan: &StackyFan, r: &[u64], s: &[u64]) -> Result<SameBaseSetup> {
    let k = fan.rays().len();
    if r.len() != k || s.len() != k {
        return Err(CccError::invalid(format!(
            "weight vectors must have length {k} (got {} and {})",
            r.len(),
            s.len()
        )));
    }
    if r.iter().chain(s).any(|&w| w == 0) {
        return Err(CccError::invalid("weights must be positive"));
    }
    let mut t = Vec::with_capacity(k);
    for i in 0..k {
        let l = (r[i] as u128).lcm(&(s[i] as u128));
        t.push(u64::try_from(l).map_err(|_| CccError::invalid("weight lcm overflows"))?);
    }
    let m = (0..k).map(|i| t[i] / r[i]).collect();
    let n = (0..k).map(|i| t[i] / s[i]).collect();
    Ok(SameBaseSetup {
        fan_r: fan.reweighted(r)?,
        fan_s: fan.reweighted(s)?,
        fan_t: fan.reweighted(&t)?,
        r: r.to_vec(),
        s: s.to_vec(),
        t,
        m,
        n,
    })
}

impl SameBaseSetup {
    pub fn fan_r(&self) -> &StackyFan {
        &self.fan_r
    }
    pub fn fan_s(&self) -> &StackyFan {
        &self.fan_s
    }
    pub fn fan_t(&self) -> &StackyFan {
        &self.fan_t
    }
    pub fn r(&self) -> &[u64] {
        &self.r
    }
    pub fn s(&self) -> &[u64] {
        &self.s
    }
    pub fn t(&self) -> &[u64] {
        &self.t
    }
    /// `t_i / r_i`.
    pub fn m(&self) -> &[u64] {
        &self.m
    }
    /// `t_i / s_i`.
    pub fn n(&self) -> &[u64] {
        &self.n
    }
}

impl Discrepancy for SameBaseSetup {
    fn discrepancy(&self) -> KComparison {
        let ge = self.r.iter().zip(&self.s).all(|(a, b)| a >= b);
        let le = self.r.iter().zip(&self.s).all(|(a, b)| a <= b);
        match (ge, le) {
            (true, true) => KComparison::Equal,
            (true, false) => KComparison::Geq,
            (false, true) => KComparison::Leq,
            (false, false) => KComparison::Incomparable,
        }
    }
}

#[derive(Deserialize)]
struct SameBaseJson {
    fan: serde_json::Value,
    r: Vec<u64>,
    s: Vec<u64>,
}

pub fn parse_same_base(json: &str) -> Result<SameBaseSetup> {
    let j: SameBaseJson = serde_json::from_str(json)?;
    let fan = fan_from_value(&j.fan)?;
    build_same_base(&fan, &j.r, &j.s)
}

/// Contraction of the extra ray `v_{n+1}` lying in the interior of the face
/// of the cone spanned by the positive-coefficient rays.
///
/// Rays are reindexed so the rays with positive coefficient come first; the
/// extra ray has index `n`. `perm[k]` is the input index of internal ray `k`.
#[derive(Clone, Debug)]
pub struct ContractionSetup {
    dim: usize,
    rays: Vec<WeightedRay>,
    extra: WeightedRay,
    perm: Vec<usize>,
    a: Vec<Rational>,
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
    n_prime: usize,
    m: u64,
    r_prime: u64,
    sigma1: StackyFan,
    sigma2: StackyFan,
    sigma_prime: StackyFan,
}

pub fn build_contraction(rays: Vec<WeightedRay>, extra: WeightedRay) -> Result<ContractionSetup> {
    let dim = extra.v.dim();
    if rays.len() != dim {
        return Err(CccError::validation("rays", format!("expected {dim} rays for a {dim}-dimensional cone")));
    }
    for (i, r) in rays.iter().enumerate() {
        if r.v.dim() != dim {
            return Err(CccError::validation(format!("rays[{i}].v"), "dimension mismatch"));
        }
        if r.weight == 0 {
            return Err(CccError::validation(format!("rays[{i}].weight"), "weight must be positive"));
        }
        if !r.v.is_primitive() {
            return Err(CccError::validation(format!("rays[{i}].v"), "not primitive"));
        }
    }
    if extra.weight == 0 {
        return Err(CccError::validation("extra.weight", "weight must be positive"));
    }
    if !extra.v.is_primitive() {
        return Err(CccError::validation("extra.v", "not primitive"));
    }
    let gens: Vec<LatticeVector> = rays.iter().map(|r| r.v.clone()).collect();
    if lattice_rank(&gens) != dim {
        return Err(CccError::validation("rays", "rays do not span a simplicial full-dimensional cone"));
    }
    let coeffs = cone_coefficients(&extra.v, &gens)?.expect("full rank");
    if let Some(i) = coeffs.iter().position(|c| c.is_negative()) {
        return Err(CccError::validation("extra.v", format!("not in the cone: coefficient {} on rays[{i}]", coeffs[i])));
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.sort_by_key(|&i| coeffs[i].is_zero());
    let n_prime = coeffs.iter().filter(|c| c.is_positive()).count();
    if n_prime < 2 {
        return Err(CccError::validation("extra.v", "extra ray must lie in the interior of a face of dimension >= 2"));
    }
    let rays: Vec<WeightedRay> = perm.iter().map(|&i| rays[i].clone()).collect();
    let a: Vec<Rational> = perm.iter().map(|&i| coeffs[i].clone()).collect();
    let re = Rational::from_int(extra.weight as i64);
    let alpha: Vec<Rational> = a
        .iter()
        .zip(&rays)
        .map(|(ai, r)| &(&re * ai) / &Rational::from_int(r.weight as i64))
        .collect();
    let dens: Vec<BigInt> = alpha.iter().map(|x| x.denom()).collect();
    let m_big = lcm_all(dens.iter());
    let m = m_big
        .to_u64()
        .ok_or_else(|| CccError::invalid("weight of the contracted ray overflows"))?;
    let r_prime = m
        .checked_mul(extra.weight)
        .ok_or_else(|| CccError::invalid("weight of the contracted ray overflows"))?;
    let mr = Rational::from_int(m as i64);
    let beta: Vec<Rational> = alpha.iter().map(|x| x * &mr).collect();

    let mut rays1 = rays.clone();
    rays1.push(extra.clone());
    let maxes1: Vec<Vec<usize>> = (0..n_prime).map(|i0| (0..=dim).filter(|&k| k != i0).collect()).collect();
    let sigma1 = StackyFan::new(dim, rays1.clone(), maxes1.clone())?;
    let sigma2 = StackyFan::new(dim, rays.clone(), vec![(0..dim).collect()])?;
    rays1[dim].weight = r_prime;
    let sigma_prime = StackyFan::new(dim, rays1, maxes1)?;
    Ok(ContractionSetup {
        dim,
        rays,
        extra,
        perm,
        a,
        alpha,
        beta,
        n_prime,
        m,
        r_prime,
        sigma1,
        sigma2,
        sigma_prime,
    })
}

impl ContractionSetup {
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Internal index of the extra ray.
    pub fn extra_index(&self) -> usize {
        self.dim
    }
    pub fn rays(&self) -> &[WeightedRay] {
        &self.rays
    }
    pub fn extra(&self) -> &WeightedRay {
        &self.extra
    }
    pub fn a(&self) -> &[Rational] {
        &self.a
    }
    /// `r_{n+1} a_i / r_i`.
    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }
    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }
    pub fn n_prime(&self) -> usize {
        self.n_prime
    }
    /// `r'_{n+1} / r_{n+1}`.
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn r_prime(&self) -> u64 {
        self.r_prime
    }
    pub fn sigma1(&self) -> &StackyFan {
        &self.sigma1
    }
    pub fn sigma2(&self) -> &StackyFan {
        &self.sigma2
    }
    pub fn sigma_prime(&self) -> &StackyFan {
        &self.sigma_prime
    }
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Stacky generator of internal ray `i` on the blown-up side.
    pub fn b(&self, i: usize) -> LatticeVector {
        if i == self.dim {
            self.extra.b()
        } else {
            self.rays[i].b()
        }
    }

    pub fn weight(&self, i: usize) -> u64 {
        if i == self.dim {
            self.extra.weight
        } else {
            self.rays[i].weight
        }
    }

    /// Rays with positive coefficient.
    pub fn i_prime(&self) -> Cone {
        Cone::new((0..self.n_prime).collect())
    }

    /// All original rays.
    pub fn i_all(&self) -> Cone {
        Cone::new((0..self.dim).collect())
    }

    pub fn alpha_sum(&self) -> Rational {
        self.alpha[..self.n_prime].iter().sum()
    }

    /// Cones of the blown-up side: subsets of all rays not containing I'.
    pub fn in_lambda(&self, j: &Cone) -> bool {
        j.rays().iter().all(|&i| i <= self.dim) && !self.i_prime().is_face_of(j)
    }

    /// `J'`: replace the extra ray by I'.
    pub fn j_prime(&self, j: &Cone) -> Cone {
        if j.contains_ray(self.dim) {
            j.minus(&Cone::new(vec![self.dim])).union(&self.i_prime())
        } else {
            j.clone()
        }
    }

    pub fn to_internal(&self, original: usize) -> Result<usize> {
        if original == self.dim {
            return Ok(self.dim);
        }
        self.perm
            .iter()
            .position(|&p| p == original)
            .ok_or_else(|| CccError::invalid(format!("ray index {original} out of range")))
    }

    pub fn to_original(&self, internal: usize) -> usize {
        if internal == self.dim {
            self.dim
        } else {
            self.perm[internal]
        }
    }
}

impl Discrepancy for ContractionSetup {
    fn discrepancy(&self) -> KComparison {
        match self.alpha_sum().cmp(&Rational::one()) {
            std::cmp::Ordering::Greater => KComparison::Geq,
            std::cmp::Ordering::Less => KComparison::Leq,
            std::cmp::Ordering::Equal => KComparison::Equal,
        }
    }
}

#[derive(Deserialize)]
struct RayIn {
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

#[derive(Deserialize)]
struct ContractionJson {
    rays: Vec<RayIn>,
    extra: RayIn,
}

pub fn parse_contraction(json: &str) -> Result<ContractionSetup> {
    let j: ContractionJson = serde_json::from_str(json)?;
    let conv = |r: RayIn| WeightedRay {
        v: LatticeVector(r.v),
        weight: r.weight,
    };
    build_contraction(j.rays.into_iter().map(conv).collect(), conv(j.extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stackyfan::{crepant_a1, discrepancy_example, o_minus, p1, same_base_p12_p13};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn crepant_data() {
        let s = crepant_a1();
        assert_eq!(s.a(), &[q(1, 2), q(1, 2)]);
        assert_eq!(s.alpha(), &[q(1, 2), q(1, 2)]);
        assert_eq!(s.r_prime(), 2);
        assert_eq!(s.beta(), &[q(1, 1), q(1, 1)]);
        assert_eq!(s.discrepancy(), KComparison::Equal);
        assert_eq!(s.sigma1().max_cones().len(), 2);
    }

    #[test]
    fn discrepancy_example_data() {
        let s = discrepancy_example();
        assert_eq!(s.a(), &[q(1, 1), q(1, 1)]);
        assert_eq!(s.alpha(), &[q(1, 2), q(1, 1)]);
        assert_eq!(s.r_prime(), 2);
        assert_eq!(s.beta(), &[q(1, 1), q(2, 1)]);
        assert_eq!(discrepancy_compare(&s), KComparison::Geq);
    }

    #[test]
    fn o_minus_m_data() {
        let s = o_minus(3);
        assert_eq!(s.alpha_sum(), q(2, 3));
        assert_eq!(s.discrepancy(), KComparison::Leq);
        assert_eq!(s.r_prime(), 3);
        assert_eq!(o_minus(2).discrepancy(), KComparison::Equal);
        assert_eq!(s.j_prime(&Cone::new(vec![2])), Cone::new(vec![0, 1]));
        assert!(!s.in_lambda(&Cone::new(vec![0, 1])));
        assert!(s.in_lambda(&Cone::new(vec![1, 2])));
    }

    #[test]
    fn same_base_data() {
        let sb = same_base_p12_p13();
        assert_eq!(sb.t(), &[6, 1]);
        assert_eq!(sb.m(), &[2, 1]);
        assert_eq!(sb.n(), &[3, 1]);
        assert_eq!(sb.discrepancy(), KComparison::Geq);
        let mixed = build_same_base(&p1(), &[3, 1], &[1, 2]).unwrap();
        assert_eq!(mixed.discrepancy(), KComparison::Incomparable);
    }

    #[test]
    fn reindexing_puts_positive_coefficients_first() {
        let s = build_contraction(
            vec![
                WeightedRay::new(&[0, 0, 1], 1),
                WeightedRay::new(&[1, 0, 0], 1),
                WeightedRay::new(&[0, 1, 0], 1),
            ],
            WeightedRay::new(&[1, 1, 0], 1),
        )
        .unwrap();
        assert_eq!(s.n_prime(), 2);
        assert_eq!(s.perm(), &[1, 2, 0]);
        assert_eq!(s.to_internal(0).unwrap(), 2);
        assert_eq!(s.to_original(0), 1);
    }

    #[test]
    fn rejects_bad_contractions() {
        let r = || vec![WeightedRay::new(&[1, 0], 1), WeightedRay::new(&[0, 1], 1)];
        assert!(build_contraction(r(), WeightedRay::new(&[1, -1], 1)).is_err());
        assert!(build_contraction(r(), WeightedRay::new(&[1, 0], 1)).is_err());
        assert!(build_contraction(r(), WeightedRay::new(&[2, 2], 1)).is_err());
        let e = parse_contraction(r#"{"rays":[{"v":[1,0]},{"v":[0,1]}],"extra":{"v":[1,-1]}}"#).unwrap_err();
        assert!(matches!(e, CccError::Validation { .. }));
    }
}
