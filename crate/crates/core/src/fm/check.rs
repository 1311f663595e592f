//! Raster confirmation of vanishing homs between images in the plane.

use serde::Serialize;

use super::case2::{ext_case2, fm_case2};
use super::case3::{ext_case3, fm3_region, Case3Reason};
use super::raster::{rasterize_all, PlanarRegion, Topology};
use crate::error::{CccError, Result};
use crate::exactlin::Rational;
use crate::stackyfan::{ContractionSetup, Discrepancy, KComparison};
use crate::thetapos::{enumerate_thetas, HomValue, ThetaIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Contracted side to blown-up side.
    Push,
    /// Blown-up side to contracted side.
    Pull,
}

#[derive(Clone, Debug, Serialize)]
pub struct RasterDisagreement {
    pub direction: Direction,
    pub theta1: ThetaIndex,
    pub theta2: ThetaIndex,
    pub topology: Topology,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractibilityReport {
    pub directions: Vec<Direction>,
    pub pairs: usize,
    pub zero_verdicts: usize,
    pub confirmed: usize,
    /// Vanishing homs whose difference does not meet the box.
    pub outside_box: usize,
    pub disagreements: Vec<RasterDisagreement>,
    pub offset: Vec<(Rational, Rational)>,
}

fn sweep(
    direction: Direction,
    thetas: &[ThetaIndex],
    regions: &[&dyn PlanarRegion],
    zero: &mut dyn FnMut(&ThetaIndex, &ThetaIndex) -> Result<bool>,
    bbox: &Rational,
    step: &Rational,
    report: &mut ContractibilityReport,
) -> Result<()> {
    let (grid, maps, _) = rasterize_all(regions, bbox, step)?;
    report.offset.push(grid.offset.clone());
    for (a, ma) in thetas.iter().zip(&maps) {
        for (b, mb) in thetas.iter().zip(&maps) {
            report.pairs += 1;
            if !zero(a, b)? {
                continue;
            }
            report.zero_verdicts += 1;
            let topology = ma.difference(mb).topology();
            if topology.pixels == 0 {
                report.outside_box += 1;
            } else if topology.contractible() {
                report.confirmed += 1;
            } else {
                report.disagreements.push(RasterDisagreement {
                    direction,
                    theta1: a.clone(),
                    theta2: b.clone(),
                    topology,
                });
            }
        }
    }
    Ok(())
}

/// Every pair of theta indices with thresholds in `[-window, window]` whose
/// images have vanishing hom by a contractible difference, in each direction
/// allowed by the discrepancy, has a raster of that difference that is
/// contractible.
pub fn contractibility_check_2d(
    setup: &ContractionSetup,
    window: i64,
    bbox: &Rational,
    step: &Rational,
) -> Result<ContractibilityReport> {
    if setup.dim() != 2 {
        return Err(CccError::invalid("the raster check is planar only"));
    }
    let d = setup.discrepancy();
    let mut report = ContractibilityReport {
        directions: Vec::new(),
        pairs: 0,
        zero_verdicts: 0,
        confirmed: 0,
        outside_box: 0,
        disagreements: Vec::new(),
        offset: Vec::new(),
    };
    if matches!(d, KComparison::Geq | KComparison::Equal) {
        report.directions.push(Direction::Push);
        let thetas = enumerate_thetas(setup.sigma2(), window);
        let images = thetas.iter().map(|t| fm_case2(setup, t)).collect::<Result<Vec<_>>>()?;
        let regions: Vec<&dyn PlanarRegion> = images.iter().map(|i| &i.support as &dyn PlanarRegion).collect();
        let mut zero = |a: &ThetaIndex, b: &ThetaIndex| Ok(ext_case2(setup, a, b)?.value == HomValue::Zero);
        sweep(Direction::Push, &thetas, &regions, &mut zero, bbox, step, &mut report)?;
    }
    if matches!(d, KComparison::Leq | KComparison::Equal) {
        report.directions.push(Direction::Pull);
        let thetas = enumerate_thetas(setup.sigma1(), window);
        let images = thetas.iter().map(|t| fm3_region(setup, t)).collect::<Result<Vec<_>>>()?;
        let regions: Vec<&dyn PlanarRegion> = images.iter().map(|r| r as &dyn PlanarRegion).collect();
        let mut zero = |a: &ThetaIndex, b: &ThetaIndex| {
            let e = ext_case3(setup, a, b)?;
            if e.reason == Case3Reason::NoWitness {
                return Err(CccError::Unsupported(format!("no witness for the vanishing hom from {a} to {b}")));
            }
            Ok(e.value == HomValue::Zero)
        };
        sweep(Direction::Pull, &thetas, &regions, &mut zero, bbox, step, &mut report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stackyfan::crepant_a1;

    #[test]
    fn crepant_small_box() {
        let r = contractibility_check_2d(&crepant_a1(), 1, &Rational::from_int(4), &Rational::new(1, 4).unwrap()).unwrap();
        assert_eq!(r.directions, vec![Direction::Push, Direction::Pull]);
        assert!(r.zero_verdicts > 0);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements.first());
    }
}
