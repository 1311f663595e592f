use super::{LatticeVector, Rational, RationalVector};
use crate::error::{CccError, Result};

/// Row-reduces `m` in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let d = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Rank of a family of lattice vectors.
pub fn lattice_rank(rows: &[LatticeVector]) -> usize {
    let m: Vec<Vec<Rational>> = rows.iter().map(|v| v.to_rational().0).collect();
    rank(&m)
}

/// Determinant of a square matrix given by rows.
pub fn determinant(rows: &[Vec<Rational>]) -> Result<Rational> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CccError::invalid("determinant of a non-square matrix"));
    }
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].recip()?;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let d = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &d;
                }
            }
        }
    }
    Ok(det)
}

/// Solves `a x = b` where `a` has full column rank. Returns `None` when the
/// system is inconsistent.
pub fn solve_full_column_rank(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, cols);
    if pivots.len() < cols {
        return Err(CccError::invalid("linear system is not of full column rank"));
    }
    for row in &m[pivots.len()..] {
        if !row[cols].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some((0..cols).map(|i| m[i][cols].clone()).collect()))
}

/// The point x of M_R with `<x, rays[k]> = thresholds[k]` for all k, chosen
/// in the span of the rays (under the standard identification of M_R with
/// N_R). The rays must be linearly independent.
pub fn solve_apex(dim: usize, rays: &[LatticeVector], thresholds: &[Rational]) -> Result<RationalVector> {
    if rays.len() != thresholds.len() {
        return Err(CccError::invalid("apex: ray and threshold counts differ"));
    }
    if rays.iter().any(|r| r.dim() != dim) {
        return Err(CccError::invalid("apex: ray dimension mismatch"));
    }
    if rays.is_empty() {
        return Ok(RationalVector::zero(dim));
    }
    if lattice_rank(rays) != rays.len() {
        return Err(CccError::invalid("apex: rays are linearly dependent"));
    }
    let rv: Vec<RationalVector> = rays.iter().map(|r| r.to_rational()).collect();
    let gram: Vec<Vec<Rational>> = rv.iter().map(|a| rv.iter().map(|b| a.dot(b)).collect()).collect();
    let y = solve_full_column_rank(&gram, thresholds)?.expect("Gram matrix of independent vectors is invertible");
    let mut x = RationalVector::zero(dim);
    for (yk, r) in y.iter().zip(&rv) {
        x = x.add(&r.scale(yk));
    }
    Ok(x)
}

/// Coefficients c with `target = sum c_j generators[j]`, or `None` if the
/// target is outside their span. Generators must be linearly independent.
pub fn cone_coefficients(target: &LatticeVector, generators: &[LatticeVector]) -> Result<Option<Vec<Rational>>> {
    let dim = target.dim();
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(CccError::invalid("cone_coefficients: dimension mismatch"));
    }
    if lattice_rank(generators) != generators.len() {
        return Err(CccError::invalid("cone_coefficients: generators are linearly dependent"));
    }
    let a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| generators.iter().map(|g| Rational::from(&g.0[i])).collect())
        .collect();
    let b = target.to_rational().0;
    if generators.is_empty() {
        return Ok(if target.is_zero() { Some(vec![]) } else { None });
    }
    solve_full_column_rank(&a, &b)
}
