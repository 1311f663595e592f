//! Window sweeps comparing the staircase regions and the pushed-forward
//! module against the oracles of this module.

use serde::Serialize;

use super::koszul::{koszul_euler, q2_characters, q2_contains, stalk_euler};
use super::{grid_points, PointSet};
use crate::error::{CccError, Result};
use crate::exactlin::{pair_unchecked, Rational, RationalVector};
use crate::fm::fm3_region;
use crate::stackyfan::ContractionSetup;
use crate::thetapos::{enumerate_thetas, ThetaIndex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PointFailure {
    pub theta: ThetaIndex,
    pub point: RationalVector,
    pub what: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub thetas: usize,
    pub staircases: usize,
    /// Fewest generic points checked for any one theta index.
    pub min_points: usize,
    pub checked: usize,
    pub failures: Vec<PointFailure>,
}

/// Sample points `(i/4 + 1/13, j/4 + 1/29, ...)` in `[-bound, bound]^n`;
/// pairings with small integral vectors are never integers.
pub fn generic_samples(dim: usize, bound: i64) -> Vec<RationalVector> {
    let offs = [(1, 13), (1, 29), (1, 37), (1, 53)];
    let mut out = Vec::new();
    let k = 4 * bound;
    let mut idx = vec![-k; dim];
    loop {
        out.push(RationalVector(
            idx.iter()
                .enumerate()
                .map(|(d, &i)| Rational::new(i, 4).unwrap() + Rational::new(offs[d % 4].0, offs[d % 4].1).unwrap())
                .collect(),
        ));
        let mut d = 0;
        while d < dim && idx[d] == k {
            idx[d] = -k;
            d += 1;
        }
        if d == dim {
            return out;
        }
        idx[d] += 1;
    }
}

fn union_window(setup: &ContractionSetup, theta: &ThetaIndex, bound: i64) -> i64 {
    let bmax = (0..=setup.extra_index())
        .flat_map(|i| setup.b(i).0)
        .map(|x| i64::try_from(x).unwrap_or(i64::MAX).abs())
        .max()
        .unwrap_or(1);
    let tmax = theta.t.iter().map(|x| i64::try_from(x).unwrap_or(0).abs()).max().unwrap_or(0);
    bound * bmax * setup.dim() as i64 + tmax + 2
}

/// For every theta index of the blown-up side with thresholds in
/// `[-window, window]` and every generic sample point: inner set, region
/// and outer set are nested, and the region's membership agrees with the
/// stalk Euler characteristic and with the union of cones over Gamma.
pub fn case3_sandwich_check(setup: &ContractionSetup, window: i64, bound: i64) -> Result<SandwichReport> {
    let n = setup.extra_index();
    let samples = generic_samples(setup.dim(), bound);
    let thetas = enumerate_thetas(setup.sigma1(), window);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut min_points = usize::MAX;
    let mut staircases = 0;
    for theta in &thetas {
        let region = fm3_region(setup, theta)?;
        let stair = theta.cone.contains_ray(n);
        staircases += stair as usize;
        let uw = union_window(setup, theta, bound);
        let mut here = 0;
        for x in &samples {
            if region.on_boundary(x) {
                continue;
            }
            here += 1;
            let mut fail = |what: &str| {
                failures.push(PointFailure {
                    theta: theta.clone(),
                    point: x.clone(),
                    what: what.to_string(),
                })
            };
            let inside = region.contains(x);
            if region.inner().contains(x) && !inside {
                fail("inner point outside region");
            }
            if inside && !region.outer().contains(x) {
                fail("region point outside outer set");
            }
            if stair {
                let e = stalk_euler(setup, theta, x, uw as u32)?;
                if e != inside as i64 {
                    fail(&format!("stalk Euler characteristic {e}"));
                }
                if region.contains_union(x, uw)? != inside {
                    fail("union over Gamma disagrees");
                }
            }
        }
        checked += here;
        min_points = min_points.min(here);
    }
    failures.sort();
    Ok(SandwichReport {
        thetas: thetas.len(),
        staircases,
        min_points: if thetas.is_empty() { 0 } else { min_points },
        checked,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub thetas: usize,
    pub probes: usize,
    pub members: usize,
    pub failures: Vec<PointFailure>,
}

/// Characters of the contracted chart in `[-bound, bound]^n`.
pub fn chart_characters(setup: &ContractionSetup, bound: i64) -> Result<Vec<RationalVector>> {
    let den = crate::exactlin::lcm_all(setup.sigma2().max_cone_indices().iter());
    let rays: Vec<_> = (0..setup.dim()).map(|i| setup.b(i)).collect();
    Ok(grid_points(setup.dim(), &den, &Rational::from_int(bound))?
        .into_iter()
        .filter(|y| rays.iter().all(|b| pair_unchecked(y, b).is_integer()))
        .collect())
}

/// Koszul Euler counts are 0 or 1 and agree with membership in the module,
/// decided both by its inequalities and by enumerating the union of cones
/// over Gamma, at every character in the box.
pub fn koszul_check(setup: &ContractionSetup, window: i64, bound: i64) -> Result<KoszulReport> {
    let n = setup.extra_index();
    let probes = chart_characters(setup, bound)?;
    if probes.is_empty() {
        return Err(CccError::invalid("no characters in the box"));
    }
    let thetas: Vec<ThetaIndex> = enumerate_thetas(setup.sigma1(), window)
        .into_iter()
        .filter(|t| t.cone.contains_ray(n))
        .collect();
    let mut failures = Vec::new();
    let mut members = 0;
    let b = Rational::from_int(bound);
    for theta in &thetas {
        let uw = union_window(setup, theta, bound) as u32;
        let union: PointSet = q2_characters(setup, theta, &b, uw)?;
        for y in &probes {
            let k = koszul_euler(setup, theta, y, uw)?;
            let inside = q2_contains(setup, theta, y)?;
            members += inside as usize;
            let mut fail = |what: String| {
                failures.push(PointFailure {
                    theta: theta.clone(),
                    point: y.clone(),
                    what,
                })
            };
            if k != inside as i64 {
                fail(format!("Koszul Euler count {k}, membership {inside}"));
            }
            if union.contains(y) != inside {
                fail(format!("union over Gamma says {}", !inside));
            }
        }
    }
    failures.sort();
    Ok(KoszulReport {
        thetas: thetas.len(),
        probes: probes.len(),
        members,
        failures,
    })
}
