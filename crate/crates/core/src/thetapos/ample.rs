use num_bigint::BigInt;

use crate::error::{CccError, Result};
use crate::exactlin::{pair_unchecked, solve_apex, HalfSpace, LatticeVector, Polyhedron, Rational};
use crate::stackyfan::StackyFan;

/// `{x : <x, b_i> >= -c_i for all rays}`.
pub fn ample_polytope(fan: &StackyFan, c: &[BigInt]) -> Result<Polyhedron> {
    if c.len() != fan.rays().len() {
        return Err(CccError::invalid(format!(
            "divisor has {} coefficients, fan has {} rays",
            c.len(),
            fan.rays().len()
        )));
    }
    let cs = fan
        .rays()
        .iter()
        .zip(c)
        .map(|(r, ci)| {
            HalfSpace::new(
                r.v.clone(),
                &(-Rational::from(ci)) / &Rational::from_int(r.weight as i64),
                false,
            )
        })
        .collect();
    Polyhedron::new(fan.dim(), cs)
}

/// Q-ampleness: the fan is complete and, for every maximal cone, the vertex
/// cut out by its rays satisfies every other ray's inequality strictly.
pub fn is_q_ample(fan: &StackyFan, c: &[BigInt]) -> Result<bool> {
    let p = ample_polytope(fan, c)?;
    if !fan.is_complete() {
        return Ok(false);
    }
    for mc in fan.max_cones() {
        let rays: Vec<LatticeVector> = mc.rays().iter().map(|&i| fan.ray(i).b()).collect();
        let th: Vec<Rational> = mc.rays().iter().map(|&i| -Rational::from(&c[i])).collect();
        let vertex = solve_apex(fan.dim(), &rays, &th)?;
        for (j, r) in fan.rays().iter().enumerate() {
            if mc.contains_ray(j) {
                continue;
            }
            if pair_unchecked(&vertex, &r.b()) <= -Rational::from(&c[j]) {
                return Ok(false);
            }
        }
    }
    Ok(p.is_bounded() && !p.interior().is_empty())
}

pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    p.minkowski_sum(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stackyfan::{p1, p112, p13};

    fn c(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn p13_polytopes() {
        let f = p13();
        let p = ample_polytope(&f, &c(&[1, 1])).unwrap();
        let (lo, hi) = p.axis_bounds(0).unwrap();
        assert_eq!(lo, Some((q(-1, 3), false)));
        assert_eq!(hi, Some((q(1, 1), false)));
        assert!(is_q_ample(&f, &c(&[1, 1])).unwrap());
        assert!(!is_q_ample(&f, &c(&[0, 0])).unwrap());
        assert!(is_q_ample(&f, &c(&[-2, 1])).unwrap());
        assert!(!is_q_ample(&f, &c(&[-3, 1])).unwrap());
        assert!(!is_q_ample(&p1(), &c(&[1, -1])).unwrap());
    }

    #[test]
    fn p112_ampleness_is_positive_degree() {
        // relation v0 + 2 v1 + v2 = 0 gives degree c0 + 2 c1 + c2
        for a in -3..=3 {
            for b in -3..=3 {
                for d in -3..=3 {
                    let got = is_q_ample(&p112(), &c(&[a, b, d])).unwrap();
                    assert_eq!(got, a + 2 * b + d > 0, "c = ({a},{b},{d})");
                }
            }
        }
    }

    #[test]
    fn monoidal_on_p13() {
        let f = p13();
        let a = ample_polytope(&f, &c(&[1, 1])).unwrap();
        let b = ample_polytope(&f, &c(&[2, 0])).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert!(s.same_set(&ample_polytope(&f, &c(&[3, 1])).unwrap()));
    }
}
