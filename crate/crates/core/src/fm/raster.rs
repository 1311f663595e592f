//! Pixel rasters of planar regions and the topology of their closed pixel
//! unions.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{CccError, Result};
use crate::exactlin::{Polyhedron, Rational, RationalVector};

/// A subset of the plane with exact membership.
pub trait PlanarRegion {
    fn contains(&self, x: &RationalVector) -> bool;
    /// True where membership may change, so that a pixel sampled there says
    /// nothing reliable about its neighbourhood.
    fn on_boundary(&self, x: &RationalVector) -> bool;
}

impl PlanarRegion for Polyhedron {
    fn contains(&self, x: &RationalVector) -> bool {
        Polyhedron::contains(self, x)
    }
    fn on_boundary(&self, x: &RationalVector) -> bool {
        Polyhedron::on_boundary(self, x)
    }
}

/// Points of `a` not in `b`.
pub struct Difference<'a> {
    pub a: &'a dyn PlanarRegion,
    pub b: &'a dyn PlanarRegion,
}

impl PlanarRegion for Difference<'_> {
    fn contains(&self, x: &RationalVector) -> bool {
        self.a.contains(x) && !self.b.contains(x)
    }
    fn on_boundary(&self, x: &RationalVector) -> bool {
        self.a.on_boundary(x) || self.b.on_boundary(x)
    }
}

/// Offsets of pixel centres inside their pixel, tried in order.
fn offsets() -> Vec<(Rational, Rational)> {
    let h = Rational::new(1, 2).unwrap();
    let mut out = vec![(h.clone(), h.clone())];
    for (p, q) in [(97, 193), (389, 769), (1543, 3079)] {
        out.push((&h + &Rational::new(1, p).unwrap(), &h + &Rational::new(1, q).unwrap()));
    }
    out
}

/// Square pixel grid covering `[-bbox, bbox]^2`.
#[derive(Clone, Debug)]
pub struct PixelGrid {
    pub bbox: Rational,
    pub step: Rational,
    pub size: usize,
    pub offset: (Rational, Rational),
}

impl PixelGrid {
    fn new(bbox: &Rational, step: &Rational, offset: (Rational, Rational)) -> Result<PixelGrid> {
        if !step.is_positive() || !bbox.is_positive() {
            return Err(CccError::invalid("bbox and step must be positive"));
        }
        let n = &(bbox * &Rational::from_int(2)) / step;
        let size = n
            .to_integer()
            .and_then(|k| usize::try_from(k).ok())
            .ok_or_else(|| CccError::invalid("2 * bbox must be a multiple of step"))?;
        if size > 4096 {
            return Err(CccError::invalid("raster too large"));
        }
        Ok(PixelGrid {
            bbox: bbox.clone(),
            step: step.clone(),
            size,
            offset,
        })
    }

    fn axis(&self, off: &Rational) -> Vec<Rational> {
        (0..self.size)
            .map(|i| &(&(&Rational::from_int(i as i64) + off) * &self.step) - &self.bbox)
            .collect()
    }

    /// Pixel centres in row-major order, `x` fastest.
    pub fn centres(&self) -> Vec<RationalVector> {
        let xs = self.axis(&self.offset.0);
        let ys = self.axis(&self.offset.1);
        let mut out = Vec::with_capacity(self.size * self.size);
        for y in &ys {
            for x in &xs {
                out.push(RationalVector(vec![x.clone(), y.clone()]));
            }
        }
        out
    }
}

/// Filled pixels of a raster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    pub size: usize,
    pub cells: Vec<bool>,
}

impl Bitmap {
    pub fn difference(&self, other: &Bitmap) -> Bitmap {
        Bitmap {
            size: self.size,
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| *a && !*b).collect(),
        }
    }

    fn filled(&self, i: isize, j: isize) -> bool {
        let n = self.size as isize;
        i >= 0 && j >= 0 && i < n && j < n && self.cells[(j * n + i) as usize]
    }

    /// Pixel count, 8-connected components, and Euler characteristic of
    /// the union of closed filled pixels.
    pub fn topology(&self) -> Topology {
        let n = self.size as isize;
        let faces = self.cells.iter().filter(|c| **c).count();
        let mut vertices = 0i64;
        for j in 0..=n {
            for i in 0..=n {
                if self.filled(i - 1, j - 1) || self.filled(i, j - 1) || self.filled(i - 1, j) || self.filled(i, j) {
                    vertices += 1;
                }
            }
        }
        let mut edges = 0i64;
        for j in 0..=n {
            for i in 0..n {
                if self.filled(i, j - 1) || self.filled(i, j) {
                    edges += 1;
                }
            }
        }
        for j in 0..n {
            for i in 0..=n {
                if self.filled(i - 1, j) || self.filled(i, j) {
                    edges += 1;
                }
            }
        }
        let mut seen = vec![false; self.cells.len()];
        let mut components = 0;
        for start in 0..self.cells.len() {
            if !self.cells[start] || seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let (i, j) = ((c % self.size) as isize, (c / self.size) as isize);
                for dj in -1..=1 {
                    for di in -1..=1 {
                        let (a, b) = (i + di, j + dj);
                        if self.filled(a, b) {
                            let k = (b * n + a) as usize;
                            if !seen[k] {
                                seen[k] = true;
                                queue.push_back(k);
                            }
                        }
                    }
                }
            }
        }
        Topology {
            pixels: faces,
            components,
            euler: vertices - edges + faces as i64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Topology {
    pub pixels: usize,
    pub components: usize,
    pub euler: i64,
}

impl Topology {
    /// Nonempty, connected, Euler characteristic one.
    pub fn contractible(&self) -> bool {
        self.pixels > 0 && self.components == 1 && self.euler == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RasterReport {
    pub contractible: bool,
    pub topology: Topology,
    pub size: usize,
    pub offset: (Rational, Rational),
    pub attempts: usize,
}

/// Rasters several regions on one grid whose pixel centres avoid every
/// region's boundary. Fails with `GridAlignment` when no offset in the
/// schedule works.
pub fn rasterize_all(regions: &[&dyn PlanarRegion], bbox: &Rational, step: &Rational) -> Result<(PixelGrid, Vec<Bitmap>, usize)> {
    let schedule = offsets();
    for (attempt, off) in schedule.iter().enumerate() {
        let grid = PixelGrid::new(bbox, step, off.clone())?;
        let centres = grid.centres();
        let mut maps = Vec::with_capacity(regions.len());
        let mut ok = true;
        'regions: for r in regions {
            let mut cells = Vec::with_capacity(centres.len());
            for x in &centres {
                if r.on_boundary(x) {
                    ok = false;
                    break 'regions;
                }
                cells.push(r.contains(x));
            }
            maps.push(Bitmap { size: grid.size, cells });
        }
        if ok {
            return Ok((grid, maps, attempt + 1));
        }
    }
    Err(CccError::GridAlignment(format!(
        "every pixel-centre offset in the schedule meets a region boundary (bbox {bbox}, step {step})"
    )))
}

/// The empty set.
pub struct Nowhere;

impl PlanarRegion for Nowhere {
    fn contains(&self, _: &RationalVector) -> bool {
        false
    }
    fn on_boundary(&self, _: &RationalVector) -> bool {
        false
    }
}

/// Whether `a - b`, restricted to `[-bbox, bbox]^2`, rasters to a
/// contractible union of pixels.
pub fn raster_contractible_2d(a: &dyn PlanarRegion, b: &dyn PlanarRegion, bbox: &Rational, step: &Rational) -> Result<RasterReport> {
    let region = Difference { a, b };
    raster_region_2d(&region, bbox, step)
}

/// Topology of one region's raster.
pub fn raster_region_2d(region: &dyn PlanarRegion, bbox: &Rational, step: &Rational) -> Result<RasterReport> {
    let (grid, maps, attempts) = rasterize_all(&[region], bbox, step)?;
    let topology = maps[0].topology();
    Ok(RasterReport {
        contractible: topology.contractible(),
        topology,
        size: grid.size,
        offset: grid.offset,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{HalfSpace, LatticeVector};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn hs(v: &[i64], t: Rational, strict: bool) -> HalfSpace {
        HalfSpace::new(LatticeVector::from_i64(v), t, strict)
    }

    struct Annulus;
    impl PlanarRegion for Annulus {
        fn contains(&self, x: &RationalVector) -> bool {
            let m = x.0[0].abs().max(x.0[1].abs());
            m > q(1, 1) && m < q(2, 1)
        }
        fn on_boundary(&self, _: &RationalVector) -> bool {
            false
        }
    }

    #[test]
    fn half_plane_and_strip() {
        let p = Polyhedron::universe(2).with(hs(&[1, 0], q(0, 1), true));
        let r = raster_region_2d(&p, &q(3, 1), &q(1, 4)).unwrap();
        assert!(r.contractible);
        assert_eq!(r.topology.pixels, 12 * 24);
        assert_eq!(r.attempts, 1);
    }

    #[test]
    fn quadrant_minus_shifted_quadrant() {
        let a = Polyhedron::universe(2).with(hs(&[1, 0], q(0, 1), true)).with(hs(&[0, 1], q(0, 1), true));
        let b = Polyhedron::universe(2).with(hs(&[1, 0], q(1, 1), true)).with(hs(&[0, 1], q(1, 1), true));
        let r = raster_contractible_2d(&a, &b, &q(4, 1), &q(1, 8)).unwrap();
        assert!(r.contractible);
    }

    #[test]
    fn square_minus_closed_square() {
        let a = Polyhedron::cube(2, &q(2, 1)).interior();
        let b = Polyhedron::cube(2, &q(1, 1));
        let r = raster_contractible_2d(&a, &b, &q(3, 1), &q(1, 8)).unwrap();
        assert_eq!(r.topology.euler, 0);
        assert!(!r.contractible);
    }

    #[test]
    fn annulus_has_a_hole() {
        let r = raster_region_2d(&Annulus, &q(3, 1), &q(1, 4)).unwrap();
        assert_eq!(r.topology.components, 1);
        assert_eq!(r.topology.euler, 0);
        assert!(!r.contractible);
    }

    #[test]
    fn two_half_planes_disconnect() {
        let a = Polyhedron::universe(2).with(hs(&[1, 0], q(1, 1), true));
        let b = Polyhedron::universe(2).with(hs(&[1, 0], q(-1, 1), true));
        // complement of a strip: x > 1 or x <= -1
        struct Outside(Polyhedron, Polyhedron);
        impl PlanarRegion for Outside {
            fn contains(&self, x: &RationalVector) -> bool {
                self.0.contains(x) || !self.1.contains(x)
            }
            fn on_boundary(&self, x: &RationalVector) -> bool {
                self.0.on_boundary(x) || self.1.on_boundary(x)
            }
        }
        let r = raster_region_2d(&Outside(a, b), &q(3, 1), &q(1, 4)).unwrap();
        assert_eq!(r.topology.components, 2);
        assert!(!r.contractible);
    }

    #[test]
    fn offset_schedule_moves_off_boundaries() {
        // x = 1/8 is a pixel centre for the first offset at step 1/4
        let p = Polyhedron::universe(2).with(hs(&[1, 0], q(1, 8), true));
        let r = raster_region_2d(&p, &q(1, 1), &q(1, 4)).unwrap();
        assert_eq!(r.attempts, 2);
        assert!(r.contractible);
    }

    #[test]
    fn diagonal_touching_pixels_are_connected() {
        let b = Bitmap {
            size: 2,
            cells: vec![true, false, false, true],
        };
        let t = b.topology();
        assert_eq!((t.components, t.euler), (1, 1));
        let empty = Bitmap {
            size: 2,
            cells: vec![false; 4],
        };
        assert!(!empty.topology().contractible());
    }

    #[test]
    fn bad_step_is_rejected() {
        let p = Polyhedron::universe(2);
        assert!(raster_contractible_2d(&p, &Nowhere, &q(1, 1), &q(3, 4)).is_err());
    }
}
