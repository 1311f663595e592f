//! Theta indices, their order and homs, the conical Lagrangian and
//! ample polytopes.

use num_bigint::BigInt;
use toric_ccc::exactlin::Rational;
use toric_ccc::stackyfan::{p1, p13};
use toric_ccc::thetapos::{ample_polytope, hom_constructible, lambda_skeleton, leq, minkowski_sum, support, ThetaIndex};

fn main() {
    let f = p13();
    let a: ThetaIndex = "cone=0;t=2".parse().unwrap();
    let b: ThetaIndex = "cone=0;t=1".parse().unwrap();
    println!("support of {a}: {:?}", support(&f, &a, true).unwrap().axis_bounds(0).unwrap());
    println!("{a} <= {b}: {}", leq(&f, &a, &b).unwrap());
    println!("hom({b}, {a}) = {:?}", hom_constructible(&f, &b, &a).unwrap());

    for p in lambda_skeleton(&f, 3, &Rational::from_int(1)).unwrap() {
        if let Some(x) = p.base.as_point() {
            println!("  piece {} at x = {x}, fibre -{:?}", p.theta, p.cone.rays());
        }
    }

    let c: Vec<BigInt> = vec![1.into(), 2.into()];
    let d: Vec<BigInt> = vec![0.into(), 1.into()];
    let cd: Vec<BigInt> = c.iter().zip(&d).map(|(x, y)| x + y).collect();
    let f = p1();
    let lhs = ample_polytope(&f, &cd).unwrap();
    let rhs = minkowski_sum(&ample_polytope(&f, &c).unwrap(), &ample_polytope(&f, &d).unwrap()).unwrap();
    println!("polytope of c+d is the sum: {}", lhs.same_set(&rhs));
}
