//! The crepant A1 contraction: line bundles across in both directions,
//! a Case II image with its Cech terms, and a staircase region.

use num_bigint::BigInt;
use toric_ccc::exactlin::RationalVector;
use toric_ccc::fm::{fm3_region, fm_case2, fm_line_bundle_case2, fm_line_bundle_case3};
use toric_ccc::stackyfan::crepant_a1;
use toric_ccc::thetapos::ThetaIndex;

fn main() {
    let s = crepant_a1();
    for (c1, c2) in [(0i64, 0i64), (1, 0), (1, 2), (-3, 2)] {
        let c: Vec<BigInt> = vec![c1.into(), c2.into()];
        let up = fm_line_bundle_case2(&s, &c).unwrap();
        let back = fm_line_bundle_case3(&s, &up).unwrap();
        println!("({c1},{c2}) -> {up:?} -> {back:?}");
    }

    let t: ThetaIndex = "cone=0,1;t=1,2".parse().unwrap();
    let img = fm_case2(&s, &t).unwrap();
    for term in &img.cech {
        println!("  degree {}: {}", term.degree, term.theta);
    }

    let t: ThetaIndex = "cone=0,2;t=-1,1".parse().unwrap();
    let r = fm3_region(&s, &t).unwrap();
    println!("{t}: staircase {}, s1 = {}", r.is_staircase(), r.s1().unwrap());
    for m in 0..=2i64 {
        println!("  gamma({m}) = {}", r.gamma(&[m.into()]).unwrap());
    }
    let x: RationalVector = RationalVector(vec![
        toric_ccc::exactlin::Rational::new(1, 5).unwrap(),
        toric_ccc::exactlin::Rational::new(-4, 3).unwrap(),
    ]);
    println!("  contains {x}: {}", r.contains(&x));
}
