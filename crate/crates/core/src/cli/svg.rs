//! Deterministic SVG figures: conical Lagrangians over a line, and shaded
//! regions in dimension one or two.

use std::fmt::Write;

use crate::error::{CccError, Result};
use crate::exactlin::{pair_unchecked, HalfSpace, Polyhedron, Rational, RationalVector};
use crate::stackyfan::StackyFan;
use crate::thetapos::LagrangianPiece;

const WIDTH: i64 = 800;
const HEIGHT: i64 = 600;
const FILL: &str = "#c6dbef";
const EDGE: &str = "#08519c";
const AXIS: &str = "#969696";

fn num(r: &Rational) -> String {
    r.to_decimal(12)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
}

fn line(out: &mut String, a: (&Rational, &Rational), b: (&Rational, &Rational), colour: &str, width: &str, dashed: bool) {
    let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{width}"{dash}/>"#,
        num(a.0),
        num(a.1),
        num(b.0),
        num(b.1)
    );
}

fn text(out: &mut String, x: &Rational, y: &Rational, s: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{s}</text>"#,
        num(x),
        num(y)
    );
}

fn check_bbox(bbox: &Rational) -> Result<()> {
    if bbox.is_positive() {
        Ok(())
    } else {
        Err(CccError::invalid("plot box must be positive"))
    }
}

/// M_R drawn horizontally, N_R vertically; each piece is a spike at its
/// base point pointing along the negated cone.
pub fn lagrangian_svg(fan: &StackyFan, pieces: &[LagrangianPiece], bbox: &Rational) -> Result<String> {
    if fan.dim() != 1 {
        return Err(CccError::invalid("Lagrangian plots need a one-dimensional fan"));
    }
    check_bbox(bbox)?;
    let scale = &q(340, 1) / bbox;
    let x_of = |x: &Rational| &q(400, 1) + &(x * &scale);
    let y0 = q(300, 1);
    let mut out = String::new();
    header(&mut out);
    line(&mut out, (&q(400, 1), &q(60, 1)), (&q(400, 1), &q(540, 1)), AXIS, "1", false);
    let mut sorted: Vec<&LagrangianPiece> = pieces.iter().collect();
    sorted.sort_by(|a, b| a.theta.cmp(&b.theta));
    for p in sorted {
        match p.cone.rays() {
            [] => line(&mut out, (&x_of(&-bbox), &y0), (&x_of(bbox), &y0), "black", "2", false),
            [i] => {
                let x = p
                    .base
                    .as_point()
                    .ok_or_else(|| CccError::invalid("Lagrangian base is not a point"))?
                    .0[0]
                    .clone();
                let down = fan.ray(*i).b().0[0] > 0.into();
                let (tip, label) = if down { (q(500, 1), q(516, 1)) } else { (q(100, 1), q(92, 1)) };
                let xs = x_of(&x);
                line(&mut out, (&xs, &y0), (&xs, &tip), EDGE, "2", false);
                text(&mut out, &xs, &label, &x.to_string());
            }
            _ => return Err(CccError::invalid("unexpected cone in a one-dimensional fan")),
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertex of a clipped polygon and the constraint along the edge leaving it
/// (`None` for the frame).
type Vertex = (RationalVector, Option<usize>);

fn clip(poly: Vec<Vertex>, h: &HalfSpace, label: usize) -> Vec<Vertex> {
    let n = poly.len();
    let mut out = Vec::new();
    let val = |x: &RationalVector| &pair_unchecked(x, &h.normal) - &h.threshold;
    for k in 0..n {
        let (p, lp) = &poly[k];
        let (qv, _) = &poly[(k + 1) % n];
        let (vp, vq) = (val(p), val(qv));
        let pin = !vp.is_negative();
        let qin = !vq.is_negative();
        let cross = || {
            let lam = &vp / &(&vp - &vq);
            p.add(&qv.sub(p).scale(&lam))
        };
        match (pin, qin) {
            (true, true) => out.push((p.clone(), *lp)),
            (true, false) => {
                out.push((p.clone(), *lp));
                if !vp.is_zero() {
                    out.push((cross(), Some(label)));
                } else {
                    out.last_mut().unwrap().1 = Some(label);
                }
            }
            (false, true) => {
                if !vq.is_zero() {
                    out.push((cross(), *lp));
                }
            }
            (false, false) => {}
        }
    }
    out
}

fn frame(bbox: &Rational) -> Vec<Vertex> {
    let b = bbox.clone();
    let m = -bbox;
    vec![
        (RationalVector(vec![m.clone(), m.clone()]), None),
        (RationalVector(vec![b.clone(), m.clone()]), None),
        (RationalVector(vec![b.clone(), b.clone()]), None),
        (RationalVector(vec![m, b]), None),
    ]
}

/// Shaded pieces, drawn with dashed edges along strict constraints and,
/// when `stroke_closed`, solid edges along closed ones.
pub fn region_svg(pieces: &[Polyhedron], bbox: &Rational, stroke_closed: bool) -> Result<String> {
    check_bbox(bbox)?;
    let dim = pieces.first().map(|p| p.dim).unwrap_or(2);
    if pieces.iter().any(|p| p.dim != dim) {
        return Err(CccError::invalid("pieces of different dimensions"));
    }
    match dim {
        1 => Ok(region_1d(pieces, bbox, stroke_closed)),
        2 => Ok(region_2d(pieces, bbox, stroke_closed)),
        d => Err(CccError::invalid(format!("cannot plot a region of dimension {d}"))),
    }
}

fn region_1d(pieces: &[Polyhedron], bbox: &Rational, stroke_closed: bool) -> String {
    let scale = &q(340, 1) / bbox;
    let x_of = |x: &Rational| &q(400, 1) + &(x * &scale);
    let mut out = String::new();
    header(&mut out);
    line(&mut out, (&x_of(&-bbox), &q(300, 1)), (&x_of(bbox), &q(300, 1)), AXIS, "1", false);
    for p in pieces {
        let Ok((lo, hi)) = p.axis_bounds(0) else { continue };
        if p.is_empty() {
            continue;
        }
        let clamp = |v: Option<(Rational, bool)>, default: Rational| match v {
            Some((x, strict)) if x.abs() <= *bbox => (x, Some(strict)),
            Some((x, _)) => (if x.is_negative() { -bbox } else { bbox.clone() }, None),
            None => (default, None),
        };
        let (a, sa) = clamp(lo, -bbox);
        let (b, sb) = clamp(hi, bbox.clone());
        let (xa, xb) = (x_of(&a), x_of(&b));
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="280" width="{}" height="40" fill="{FILL}"/>"#,
            num(&xa),
            num(&(&xb - &xa))
        );
        for (x, s) in [(xa, sa), (xb, sb)] {
            if let Some(strict) = s {
                if strict || stroke_closed {
                    line(&mut out, (&x, &q(270, 1)), (&x, &q(330, 1)), EDGE, "2", strict);
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn region_2d(pieces: &[Polyhedron], bbox: &Rational, stroke_closed: bool) -> String {
    let scale = &q(280, 1) / bbox;
    let to_px = |x: &RationalVector| (&q(400, 1) + &(&x.0[0] * &scale), &q(300, 1) - &(&x.0[1] * &scale));
    let mut out = String::new();
    header(&mut out);
    let (l, r) = (to_px(&RationalVector(vec![-bbox, Rational::zero()])), to_px(&RationalVector(vec![bbox.clone(), Rational::zero()])));
    line(&mut out, (&l.0, &l.1), (&r.0, &r.1), AXIS, "1", false);
    let (b, t) = (to_px(&RationalVector(vec![Rational::zero(), -bbox])), to_px(&RationalVector(vec![Rational::zero(), bbox.clone()])));
    line(&mut out, (&b.0, &b.1), (&t.0, &t.1), AXIS, "1", false);
    let mut strokes = String::new();
    for p in pieces {
        let mut poly = frame(bbox);
        for (k, h) in p.constraints.iter().enumerate() {
            poly = clip(poly, h, k);
            if poly.is_empty() {
                break;
            }
        }
        if poly.len() < 3 {
            continue;
        }
        let mut d = String::new();
        for (k, (v, _)) in poly.iter().enumerate() {
            let (x, y) = to_px(v);
            let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, num(&x), num(&y));
        }
        d.push('Z');
        let _ = writeln!(out, r#"<path d="{d}" fill="{FILL}" stroke="none"/>"#);
        for k in 0..poly.len() {
            let (v, label) = &poly[k];
            let Some(c) = label else { continue };
            let strict = p.constraints[*c].strict;
            if !strict && !stroke_closed {
                continue;
            }
            let w = &poly[(k + 1) % poly.len()].0;
            let (a, b) = (to_px(v), to_px(w));
            line(&mut strokes, (&a.0, &a.1), (&b.0, &b.1), EDGE, "1.5", strict);
        }
    }
    out.push_str(&strokes);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::LatticeVector;
    use crate::stackyfan::p13;
    use crate::thetapos::lambda_skeleton;

    #[test]
    fn lagrangian_is_deterministic() {
        let f = p13();
        let pieces = lambda_skeleton(&f, 3, &q(1, 1)).unwrap();
        let a = lagrangian_svg(&f, &pieces, &q(1, 1)).unwrap();
        let mut rev = pieces.clone();
        rev.reverse();
        assert_eq!(a, lagrangian_svg(&f, &rev, &q(1, 1)).unwrap());
        assert_eq!(a.matches("<line").count(), 1 + 1 + 7 + 3);
        assert!(a.contains(">-2/3</text>"));
        assert!(a.contains(r#"width="800" height="600""#));
    }

    #[test]
    fn quadrant_has_dashed_edges() {
        let p = Polyhedron::universe(2)
            .with(HalfSpace::new(LatticeVector::from_i64(&[1, 0]), q(0, 1), true))
            .with(HalfSpace::new(LatticeVector::from_i64(&[0, 1]), q(1, 2), false));
        let s = region_svg(&[p], &q(2, 1), true).unwrap();
        assert_eq!(s.matches("<path").count(), 1);
        assert_eq!(s.matches("stroke-dasharray").count(), 1);
        assert_eq!(s.matches(r##"stroke="#08519c""##).count(), 2);
        // corner of the clipped quadrant at (0, 1/2)
        assert!(s.contains("L400 230 "), "{s}");
    }

    #[test]
    fn empty_region_draws_axes_only() {
        let p = Polyhedron::universe(2)
            .with(HalfSpace::new(LatticeVector::from_i64(&[1, 0]), q(5, 1), true));
        let s = region_svg(&[p], &q(2, 1), true).unwrap();
        assert_eq!(s.matches("<path").count(), 0);
        assert_eq!(s.matches("<line").count(), 2);
        assert!(region_svg(&[Polyhedron::universe(3)], &q(1, 1), true).is_err());
    }

    #[test]
    fn interval_endpoints() {
        let p = Polyhedron::universe(1)
            .with(HalfSpace::new(LatticeVector::from_i64(&[1]), q(1, 3), true))
            .with(HalfSpace::new(LatticeVector::from_i64(&[-1]), q(-1, 1), false));
        let s = region_svg(&[p], &q(2, 1), true).unwrap();
        assert_eq!(s.matches("stroke-dasharray").count(), 1);
        assert!(s.contains("<rect x=\"456.666666666667\""));
    }
}
