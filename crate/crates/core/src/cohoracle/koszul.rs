//! Koszul resolution of the pushed-forward module and stalks of the
//! constructible image, both summed over the truncated index set Gamma.

use super::{grid_points, PointSet};
use crate::error::{CccError, Result};
use crate::exactlin::{pair_unchecked, Rational, RationalVector};
use crate::fm::{fm3_region, Case3Region};
use crate::stackyfan::ContractionSetup;
use crate::thetapos::ThetaIndex;

const DEFAULT_MAX_WINDOW: u32 = 16;

/// Hard cap on the multi-index window, from `CCC_MAX_WINDOW`.
pub fn max_window() -> u32 {
    std::env::var("CCC_MAX_WINDOW")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_WINDOW)
}

fn staircase(setup: &ContractionSetup, theta: &ThetaIndex) -> Result<Case3Region> {
    if !theta.cone.contains_ray(setup.extra_index()) {
        return Err(CccError::precondition("the cone must contain the extra ray"));
    }
    fm3_region(setup, theta)
}

/// Sums `term` over the multi-indices of a window, doubling the window
/// while a boundary multi-index still contributes. Growth stops at
/// `max_window()` or at `start`, whichever is larger.
///
/// Along a Koszul coordinate `i` the alternating sum over `S` telescopes
/// to the indicator of `k_i < p_i <= k_i + 1` (open) or `p_i = k_i`
/// (closed), so a boundary index contributes exactly when the probe passes
/// the boundary term's constraint on that coordinate.
fn stabilised(
    region: &Case3Region,
    start: u32,
    p: &[Rational],
    open: bool,
    mut term: impl FnMut(&ThetaIndex) -> i64,
) -> Result<i64> {
    let cap = max_window().max(start);
    let nonneg = region.multi_index_nonneg();
    let rays = region.multi_index_rays().to_vec();
    let mut w = start.max(1).min(cap);
    loop {
        let wr = Rational::from_int(w as i64);
        let edge = rays.iter().zip(&nonneg).any(|(&i, &pos)| {
            let base = if pos {
                Rational::from(region.theta().threshold(i).unwrap())
            } else {
                Rational::zero()
            };
            let upper = &base + &wr;
            let past_upper = if open { p[i] > upper } else { p[i] >= upper };
            let lower = &(-&wr) + &Rational::one();
            let past_lower = !pos && if open { p[i] <= lower } else { p[i] < lower };
            past_upper || past_lower
        });
        if !edge {
            let mut total = 0i64;
            crate::fm::for_each_multi_index(&nonneg, w as i64, &mut |m| {
                total += term(&region.gamma(m)?);
                Ok(())
            })?;
            return Ok(total);
        }
        if w >= cap {
            return Err(CccError::WindowTooSmall { window: w, cap });
        }
        w = (w * 2).min(cap);
    }
}

fn pairings(setup: &ContractionSetup, y: &RationalVector) -> Result<Vec<Rational>> {
    if y.dim() != setup.dim() {
        return Err(CccError::invalid(format!("point has dimension {}, expected {}", y.dim(), setup.dim())));
    }
    Ok((0..setup.dim()).map(|i| pair_unchecked(y, &setup.b(i))).collect())
}

/// Euler count of the Koszul resolution of the module at the character
/// `probe`: the sum over `m` and `S` of `(-1)^|S|` whenever
/// `<probe, b_i> >= gamma(m)_i + [i in S]` on every ray of J'.
pub fn koszul_euler(setup: &ContractionSetup, theta: &ThetaIndex, probe: &RationalVector, window: u32) -> Result<i64> {
    let region = staircase(setup, theta)?;
    let p = pairings(setup, probe)?;
    if !p.iter().all(Rational::is_integer) {
        return Err(CccError::invalid(format!("{probe} is not a character of the contracted chart")));
    }
    let koszul = region.multi_index_rays().to_vec();
    stabilised(&region, window, &p, false, |g| signed_subsets(&p, g, &koszul, false))
}

/// Euler characteristic of the stalk complex at a generic point: the same
/// sum with open cones.
pub fn stalk_euler(setup: &ContractionSetup, theta: &ThetaIndex, point: &RationalVector, window: u32) -> Result<i64> {
    let region = staircase(setup, theta)?;
    let p = pairings(setup, point)?;
    if region.j_prime().rays().iter().any(|&i| p[i].is_integer()) {
        return Err(CccError::NonGenericPoint(point.to_string()));
    }
    let koszul = region.multi_index_rays().to_vec();
    stabilised(&region, window, &p, true, |g| signed_subsets(&p, g, &koszul, true))
}

fn signed_subsets(p: &[Rational], g: &ThetaIndex, koszul: &[usize], open: bool) -> i64 {
    let mut total = 0;
    for mask in 0u32..(1 << koszul.len()) {
        let inside = g.cone.rays().iter().zip(&g.t).all(|(&i, t)| {
            let mut t = Rational::from(t);
            if let Some(k) = koszul.iter().position(|&r| r == i) {
                if mask >> k & 1 == 1 {
                    t = &t + &Rational::one();
                }
            }
            if open {
                p[i] > t
            } else {
                p[i] >= t
            }
        });
        if inside {
            total += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    total
}

/// Membership in the character set of the module by its inequalities:
/// `<y, b_j> >= c_j` on the rays of J other than the extra one and
/// `sum alpha_i <y, b_i> >= c_{n+1}`.
pub fn q2_contains(setup: &ContractionSetup, theta: &ThetaIndex, y: &RationalVector) -> Result<bool> {
    staircase(setup, theta)?;
    let p = pairings(setup, y)?;
    let n = setup.extra_index();
    for (&i, t) in theta.cone.rays().iter().zip(&theta.t) {
        if i != n && p[i] < Rational::from(t) {
            return Ok(false);
        }
    }
    let s: Rational = (0..setup.n_prime()).map(|i| &setup.alpha()[i] * &p[i]).sum();
    Ok(s >= Rational::from(theta.threshold(n).unwrap()))
}

/// Characters of the contracted chart in `[-bound, bound]^n` lying in some
/// closed cone `gamma(m)` with `m` in the window.
pub fn q2_characters(setup: &ContractionSetup, theta: &ThetaIndex, bound: &Rational, window: u32) -> Result<PointSet> {
    let region = staircase(setup, theta)?;
    let den = crate::exactlin::lcm_all(setup.sigma2().max_cone_indices().iter());
    let mut cones = Vec::new();
    crate::fm::for_each_multi_index(&region.multi_index_nonneg(), window as i64, &mut |m| {
        cones.push(region.gamma(m)?);
        Ok(())
    })?;
    let mut out = PointSet::new();
    for y in grid_points(setup.dim(), &den, bound)? {
        let p = pairings(setup, &y)?;
        if !p.iter().all(Rational::is_integer) {
            continue;
        }
        if cones
            .iter()
            .any(|g| g.cone.rays().iter().zip(&g.t).all(|(&i, t)| p[i] >= Rational::from(t)))
        {
            out.insert(y);
        }
    }
    Ok(out)
}
