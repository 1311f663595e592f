use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::vector::pair_unchecked;
use super::{LatticeVector, Rational, RationalVector};
use crate::error::{CccError, Result};

/// `<x, normal> >= threshold`, or `>` when `strict`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub threshold: Rational,
    pub strict: bool,
}

impl HalfSpace {
    pub fn new(normal: LatticeVector, threshold: Rational, strict: bool) -> HalfSpace {
        HalfSpace {
            normal,
            threshold,
            strict,
        }
    }

    pub fn value(&self, x: &RationalVector) -> Rational {
        pair_unchecked(x, &self.normal)
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        let v = self.value(x);
        if self.strict {
            v > self.threshold
        } else {
            v >= self.threshold
        }
    }

    pub fn on_boundary(&self, x: &RationalVector) -> bool {
        self.value(x) == self.threshold
    }

    /// The complementary open or closed half-space.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.neg(),
            threshold: -&self.threshold,
            strict: !self.strict,
        }
    }

    /// Same half-space with primitive normal.
    pub fn normalized(&self) -> HalfSpace {
        let g = self.normal.content();
        if g <= BigInt::from(1) {
            return self.clone();
        }
        HalfSpace {
            normal: LatticeVector(self.normal.0.iter().map(|x| x / &g).collect()),
            threshold: &self.threshold / Rational::from(&g),
            strict: self.strict,
        }
    }
}

impl fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { ">" } else { ">=" };
        write!(f, "<x,{:?}> {} {}", self.normal, op, self.threshold)
    }
}

/// Finite intersection of half-spaces in M_R, each closed or open.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub dim: usize,
    pub constraints: Vec<HalfSpace>,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.constraints.iter()).finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
    kind: Kind,
}

impl Row {
    fn is_constant(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    fn constant_ok(&self) -> bool {
        let zero = Rational::zero();
        match self.kind {
            Kind::Ge => zero >= self.b,
            Kind::Gt => zero > self.b,
            Kind::Eq => zero == self.b,
        }
    }

    fn normalize(mut self) -> Row {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).cloned() {
            let s = if self.kind == Kind::Eq { lead } else { lead.abs() };
            let inv = s.recip().expect("nonzero");
            for x in self.a.iter_mut() {
                *x = &*x * &inv;
            }
            self.b = &self.b * &inv;
        }
        self
    }
}

enum Stage {
    Fm(Vec<Row>),
    Substituted(Row),
}

/// Fourier-Motzkin elimination with strictness and equalities.
struct Fm {
    dim: usize,
}

impl Fm {
    fn dedup(rows: Vec<Row>) -> Option<Vec<Row>> {
        let mut best: HashMap<(Vec<Rational>, bool), (Rational, Kind)> = HashMap::new();
        let mut order = Vec::new();
        for r in rows {
            let r = r.normalize();
            if r.is_constant() {
                if !r.constant_ok() {
                    return None;
                }
                continue;
            }
            let key = (r.a.clone(), r.kind == Kind::Eq);
            match best.get_mut(&key) {
                None => {
                    order.push(key.clone());
                    best.insert(key, (r.b, r.kind));
                }
                Some((b, kind)) => {
                    if r.kind == Kind::Eq {
                        if *b != r.b {
                            return None;
                        }
                    } else if r.b > *b || (r.b == *b && r.kind == Kind::Gt) {
                        *b = r.b;
                        *kind = r.kind;
                    }
                }
            }
        }
        Some(
            order
                .into_iter()
                .map(|k| {
                    let (b, kind) = best.remove(&k).unwrap();
                    Row { a: k.0, b, kind }
                })
                .collect(),
        )
    }

    /// Eliminates variable `j`; returns the new system and how `j` is
    /// recovered.
    fn eliminate(rows: &[Row], j: usize) -> Option<(Vec<Row>, Option<Row>)> {
        if let Some(k) = rows.iter().position(|r| r.kind == Kind::Eq && !r.a[j].is_zero()) {
            let eq = rows[k].clone();
            let mut out = Vec::with_capacity(rows.len());
            for (i, r) in rows.iter().enumerate() {
                if i == k {
                    continue;
                }
                if r.a[j].is_zero() {
                    out.push(r.clone());
                    continue;
                }
                let f = &r.a[j] / &eq.a[j];
                let a = r.a.iter().zip(&eq.a).map(|(x, y)| x - &(&f * y)).collect();
                let b = &r.b - &(&f * &eq.b);
                out.push(Row { a, b, kind: r.kind });
            }
            return Fm::dedup(out).map(|o| (o, Some(eq)));
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut out = Vec::new();
        for r in rows {
            let s = r.a[j].signum();
            if s > 0 {
                pos.push(r);
            } else if s < 0 {
                neg.push(r);
            } else {
                out.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let fp = -&n.a[j];
                let fn_ = p.a[j].clone();
                let a = p.a.iter().zip(&n.a).map(|(x, y)| &(x * &fp) + &(y * &fn_)).collect();
                let b = &(&p.b * &fp) + &(&n.b * &fn_);
                let kind = if p.kind == Kind::Gt || n.kind == Kind::Gt {
                    Kind::Gt
                } else {
                    Kind::Ge
                };
                out.push(Row { a, b, kind });
            }
        }
        Fm::dedup(out).map(|o| (o, None))
    }

    /// A point satisfying every row, or `None` if infeasible.
    fn solve(&self, rows: Vec<Row>) -> Option<Vec<Rational>> {
        let rows = Fm::dedup(rows)?;
        let mut stages: Vec<Stage> = Vec::with_capacity(self.dim + 1);
        let mut cur = rows;
        for j in (0..self.dim).rev() {
            let (next, sub) = Fm::eliminate(&cur, j)?;
            stages.push(match sub {
                Some(eq) => Stage::Substituted(eq),
                None => Stage::Fm(cur),
            });
            cur = next;
        }
        if cur.iter().any(|r| !r.constant_ok()) {
            return None;
        }
        stages.reverse();
        let mut x = vec![Rational::zero(); self.dim];
        for (j, stage) in stages.iter().enumerate() {
            x[j] = match stage {
                Stage::Substituted(eq) => {
                    let rest: Rational = (0..j).map(|i| &eq.a[i] * &x[i]).sum();
                    &(&eq.b - &rest) / &eq.a[j]
                }
                Stage::Fm(rows) => pick_value(rows, j, &x)?,
            };
        }
        Some(x)
    }
}

fn pick_value(rows: &[Row], j: usize, x: &[Rational]) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for r in rows {
        if r.a[j].is_zero() {
            continue;
        }
        let rest: Rational = (0..j).map(|i| &r.a[i] * &x[i]).sum();
        let bound = &(&r.b - &rest) / &r.a[j];
        let strict = r.kind == Kind::Gt;
        if r.a[j].is_positive() {
            lo = Some(match lo {
                Some((l, s)) if l > bound || (l == bound && s) => (l, s),
                _ => (bound, strict),
            });
        } else {
            hi = Some(match hi {
                Some((h, s)) if h < bound || (h == bound && s) => (h, s),
                _ => (bound, strict),
            });
        }
    }
    let above = |l: &(Rational, bool), v: &Rational| if l.1 { v > &l.0 } else { v >= &l.0 };
    let below = |h: &(Rational, bool), v: &Rational| if h.1 { v < &h.0 } else { v <= &h.0 };
    match (lo, hi) {
        (None, None) => Some(Rational::zero()),
        (Some(l), None) => Some(if l.1 { l.0.floor_r() + Rational::one() } else { l.0.ceil_r() }),
        (None, Some(h)) => Some(if h.1 { h.0.ceil_r() - Rational::one() } else { h.0.floor_r() }),
        (Some(l), Some(h)) => {
            let k = if l.1 { l.0.floor_r() + Rational::one() } else { l.0.ceil_r() };
            if below(&h, &k) {
                return Some(k);
            }
            if l.0 < h.0 {
                let mid = &(&l.0 + &h.0) / &Rational::from_int(2);
                return Some(mid);
            }
            if l.0 == h.0 && !l.1 && !h.1 {
                return Some(l.0);
            }
            debug_assert!(!above(&l, &h.0));
            None
        }
    }
}

/// Feasibility of a mixed system of rational inequalities
/// `a.x >= b` (`> b` when strict) and equalities `a.x = b`.
pub fn solve_system(
    dim: usize,
    inequalities: &[(Vec<Rational>, Rational, bool)],
    equalities: &[(Vec<Rational>, Rational)],
) -> Option<Vec<Rational>> {
    let mut rows: Vec<Row> = inequalities
        .iter()
        .map(|(a, b, s)| Row {
            a: a.clone(),
            b: b.clone(),
            kind: if *s { Kind::Gt } else { Kind::Ge },
        })
        .collect();
    rows.extend(equalities.iter().map(|(a, b)| Row {
        a: a.clone(),
        b: b.clone(),
        kind: Kind::Eq,
    }));
    Fm { dim }.solve(rows)
}

impl Polyhedron {
    /// The whole space.
    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn new(dim: usize, constraints: Vec<HalfSpace>) -> Result<Polyhedron> {
        if constraints.iter().any(|h| h.normal.dim() != dim) {
            return Err(CccError::invalid("half-space dimension mismatch"));
        }
        Ok(Polyhedron { dim, constraints })
    }

    /// Closed cube `[-bound, bound]^dim`.
    pub fn cube(dim: usize, bound: &Rational) -> Polyhedron {
        let mut cs = Vec::new();
        for i in 0..dim {
            let mut e = vec![BigInt::from(0); dim];
            e[i] = BigInt::from(1);
            let e = LatticeVector(e);
            cs.push(HalfSpace::new(e.clone(), -bound, false));
            cs.push(HalfSpace::new(e.neg(), -bound, false));
        }
        Polyhedron { dim, constraints: cs }
    }

    pub fn push(&mut self, h: HalfSpace) {
        self.constraints.push(h);
    }

    pub fn with(mut self, h: HalfSpace) -> Polyhedron {
        self.push(h);
        self
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.constraints.iter().all(|h| h.contains(x))
    }

    pub fn on_boundary(&self, x: &RationalVector) -> bool {
        self.constraints.iter().any(|h| h.on_boundary(x))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        let mut c = self.constraints.clone();
        c.extend(other.constraints.iter().cloned());
        Polyhedron {
            dim: self.dim,
            constraints: c,
        }
    }

    pub fn closure(&self) -> Polyhedron {
        self.map_strict(false)
    }

    pub fn interior(&self) -> Polyhedron {
        self.map_strict(true)
    }

    fn map_strict(&self, strict: bool) -> Polyhedron {
        Polyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|h| HalfSpace {
                    strict,
                    ..h.clone()
                })
                .collect(),
        }
    }

    fn rows(&self) -> Vec<Row> {
        self.constraints
            .iter()
            .map(|h| Row {
                a: h.normal.to_rational().0,
                b: h.threshold.clone(),
                kind: if h.strict { Kind::Gt } else { Kind::Ge },
            })
            .collect()
    }

    /// Some point of the polyhedron, found exactly.
    pub fn find_point(&self) -> Option<RationalVector> {
        let p = Fm { dim: self.dim }.solve(self.rows())?;
        let p = RationalVector(p);
        debug_assert!(self.contains(&p), "FM witness fails membership");
        Some(p)
    }

    pub fn is_empty(&self) -> bool {
        self.find_point().is_none()
    }

    /// Exact inclusion test: `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        self.difference_witness(other).is_none()
    }

    /// A point of `self` outside `other`, if one exists.
    pub fn difference_witness(&self, other: &Polyhedron) -> Option<RationalVector> {
        for h in &other.constraints {
            let probe = self.clone().with(h.complement());
            if let Some(p) = probe.find_point() {
                return Some(p);
            }
        }
        None
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Lower and upper bounds of coordinate `axis` over the polyhedron, each
    /// with a strictness flag. `None` means unbounded in that direction.
    /// Returns `Err` if the polyhedron is empty.
    #[allow(clippy::type_complexity)]
    pub fn axis_bounds(&self, axis: usize) -> Result<(Option<(Rational, bool)>, Option<(Rational, bool)>)> {
        if axis >= self.dim {
            return Err(CccError::invalid("axis out of range"));
        }
        let mut rows = self.rows();
        for r in rows.iter_mut() {
            r.a.swap(0, axis);
        }
        let mut cur = Fm::dedup(rows).ok_or_else(|| CccError::invalid("empty polyhedron"))?;
        for j in (1..self.dim).rev() {
            cur = Fm::eliminate(&cur, j)
                .ok_or_else(|| CccError::invalid("empty polyhedron"))?
                .0;
        }
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for r in &cur {
            if r.a[0].is_zero() {
                continue;
            }
            let bound = &r.b / &r.a[0];
            let strict = r.kind == Kind::Gt;
            if r.kind == Kind::Eq {
                return Ok((Some((bound.clone(), false)), Some((bound, false))));
            }
            if r.a[0].is_positive() {
                if lo.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && strict && !s)) {
                    lo = Some((bound, strict));
                }
            } else if hi.as_ref().is_none_or(|(h, s)| bound < *h || (bound == *h && strict && !s)) {
                hi = Some((bound, strict));
            }
        }
        Ok((lo, hi))
    }

    /// Nonempty and contained in a bounded box.
    pub fn is_bounded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        (0..self.dim).all(|i| matches!(self.axis_bounds(i), Ok((Some(_), Some(_)))))
    }

    /// The single point of the polyhedron, if it has exactly one.
    pub fn as_point(&self) -> Option<RationalVector> {
        let p = self.find_point()?;
        for i in 0..self.dim {
            let mut e = vec![BigInt::from(0); self.dim];
            e[i] = BigInt::from(1);
            let e = LatticeVector(e);
            let up = self.clone().with(HalfSpace::new(e.clone(), p.0[i].clone(), true));
            let down = self.clone().with(HalfSpace::new(e.neg(), -&p.0[i], true));
            if !up.is_empty() || !down.is_empty() {
                return None;
            }
        }
        Some(p)
    }

    pub fn translate(&self, p: &RationalVector) -> Polyhedron {
        Polyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|h| HalfSpace {
                    threshold: &h.threshold + &h.value(p),
                    ..h.clone()
                })
                .collect(),
        }
    }

    /// Minkowski sum for polyhedra sharing their normal fan: thresholds add
    /// per shared normal. A single-point operand acts by translation.
    /// Both operands must be given by tight (irredundant) inequalities.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return Err(CccError::invalid("minkowski_sum: dimension mismatch"));
        }
        if let Some(p) = other.as_point() {
            return Ok(self.translate(&p));
        }
        if let Some(p) = self.as_point() {
            return Ok(other.translate(&p));
        }
        let a = normal_table(self)?;
        let b = normal_table(other)?;
        if a.len() != b.len() || a.iter().any(|(n, _)| !b.iter().any(|(m, _)| m == n)) {
            return Err(CccError::Unsupported(
                "minkowski_sum of polyhedra with different normal fans".into(),
            ));
        }
        let constraints = a
            .iter()
            .map(|(n, (t, s))| {
                let (u, z) = &b.iter().find(|(m, _)| m == n).unwrap().1;
                HalfSpace::new(n.clone(), t + u, *s || *z)
            })
            .collect();
        Ok(Polyhedron {
            dim: self.dim,
            constraints,
        })
    }
}

#[allow(clippy::type_complexity)]
fn normal_table(p: &Polyhedron) -> Result<Vec<(LatticeVector, (Rational, bool))>> {
    let mut out: Vec<(LatticeVector, (Rational, bool))> = Vec::new();
    for h in &p.constraints {
        let h = h.normalized();
        if let Some((_, (t, s))) = out.iter_mut().find(|(n, _)| *n == h.normal) {
            if h.threshold > *t || (h.threshold == *t && h.strict) {
                *t = h.threshold;
                *s = h.strict;
            }
        } else {
            out.push((h.normal, (h.threshold, h.strict)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn hs(n: &[i64], t: Rational, strict: bool) -> HalfSpace {
        HalfSpace::new(LatticeVector::from_i64(n), t, strict)
    }

    fn interval(lo: Rational, hi: Rational, open: bool) -> Polyhedron {
        Polyhedron::new(1, vec![hs(&[1], lo, open), hs(&[-1], -hi, open)]).unwrap()
    }

    #[test]
    fn strictness_decides_emptiness() {
        assert!(!interval(q(1, 1), q(1, 1), false).is_empty());
        assert!(interval(q(1, 1), q(1, 1), true).is_empty());
        assert_eq!(interval(q(1, 1), q(1, 1), false).as_point(), Some(RationalVector::from_ints(&[1])));
    }

    #[test]
    fn inclusion_2d() {
        let quad = |a: i64, b: i64| {
            Polyhedron::new(2, vec![hs(&[1, 0], q(a, 1), true), hs(&[0, 1], q(b, 1), true)]).unwrap()
        };
        assert!(quad(1, 1).is_subset_of(&quad(0, 0)));
        assert!(!quad(0, 0).is_subset_of(&quad(1, 1)));
        let w = quad(0, 0).difference_witness(&quad(1, 1)).unwrap();
        assert!(quad(0, 0).contains(&w) && !quad(1, 1).contains(&w));
        // open quadrant inside its closure but not conversely
        assert!(quad(0, 0).is_subset_of(&quad(0, 0).closure()));
        assert!(!quad(0, 0).closure().is_subset_of(&quad(0, 0)));
    }

    #[test]
    fn equalities_via_paired_constraints() {
        // x + y = 1, x - y = 0 pins (1/2, 1/2)
        let p = Polyhedron::new(
            2,
            vec![
                hs(&[1, 1], q(1, 1), false),
                hs(&[-1, -1], q(-1, 1), false),
                hs(&[1, -1], q(0, 1), false),
                hs(&[-1, 1], q(0, 1), false),
            ],
        )
        .unwrap();
        assert_eq!(p.as_point(), Some(RationalVector(vec![q(1, 2), q(1, 2)])));
        assert!(p.is_bounded());
    }

    #[test]
    fn boundedness() {
        let ray = Polyhedron::new(1, vec![hs(&[3], q(-1, 1), false)]).unwrap();
        assert!(!ray.is_bounded());
        assert!(interval(q(-1, 3), q(1, 1), false).is_bounded());
        let b = interval(q(-1, 3), q(1, 1), false).axis_bounds(0).unwrap();
        assert_eq!(b, (Some((q(-1, 3), false)), Some((q(1, 1), false))));
    }

    #[test]
    fn minkowski_intervals() {
        let a = interval(q(-1, 3), q(1, 1), false);
        let b = interval(q(-2, 3), q(2, 1), false);
        let s = a.minkowski_sum(&b).unwrap();
        assert!(s.same_set(&interval(q(-1, 1), q(3, 1), false)));
        let pt = interval(q(2, 1), q(2, 1), false);
        assert!(a.minkowski_sum(&pt).unwrap().same_set(&interval(q(5, 3), q(3, 1), false)));
    }

    proptest! {
        #[test]
        fn witness_is_member(c in proptest::collection::vec((-3i64..4, -3i64..4, -6i64..7, any::<bool>()), 1..6)) {
            let p = Polyhedron::new(2, c.iter().filter(|(a, b, _, _)| *a != 0 || *b != 0)
                .map(|&(a, b, t, s)| hs(&[a, b], q(t, 2), s)).collect()).unwrap();
            match p.find_point() {
                Some(x) => prop_assert!(p.contains(&x)),
                None => {
                    // brute-force search on a fine grid must also fail
                    for i in -40..=40 {
                        for j in -40..=40 {
                            let x = RationalVector(vec![q(i, 8), q(j, 8)]);
                            prop_assert!(!p.contains(&x));
                        }
                    }
                }
            }
        }
    }
}
