use serde::Serialize;

use super::{enumerate_thetas, ThetaIndex};
use crate::error::Result;
use crate::exactlin::{HalfSpace, Polyhedron, Rational};
use crate::stackyfan::{Cone, StackyFan};

/// One piece `sigma^perp_chi x (-sigma)` of the conical Lagrangian: an affine
/// subspace of M_R with fibre the negated cone in N_R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangianPiece {
    pub theta: ThetaIndex,
    /// `{x : <x, b_k> = t_k}` as pairs of closed half-spaces.
    pub base: Polyhedron,
    /// The fibre is `-cone`.
    pub cone: Cone,
}

/// The pieces of the conical Lagrangian with thresholds in
/// `[-char_window, char_window]` whose base meets the closed box
/// `[-bbox, bbox]^n`.
pub fn lambda_skeleton(fan: &StackyFan, char_window: i64, bbox: &Rational) -> Result<Vec<LagrangianPiece>> {
    let cube = Polyhedron::cube(fan.dim(), bbox);
    let mut out = Vec::new();
    for theta in enumerate_thetas(fan, char_window) {
        let base = perp(fan, &theta)?;
        if !base.intersect(&cube).is_empty() {
            out.push(LagrangianPiece {
                cone: theta.cone.clone(),
                theta,
                base,
            });
        }
    }
    Ok(out)
}

pub(crate) fn perp(fan: &StackyFan, theta: &ThetaIndex) -> Result<Polyhedron> {
    theta.validate(fan)?;
    let mut cs = Vec::new();
    for (&i, t) in theta.cone.rays().iter().zip(&theta.t) {
        let b = fan.ray(i).b();
        let t = Rational::from(t);
        cs.push(HalfSpace::new(b.clone(), t.clone(), false));
        cs.push(HalfSpace::new(b.neg(), -t, false));
    }
    Polyhedron::new(fan.dim(), cs)
}
