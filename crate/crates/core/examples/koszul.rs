//! Euler characteristics of the Koszul and stalk complexes against direct
//! membership, on O(-3) over the projective line.

use toric_ccc::cohoracle::{case3_sandwich_check, koszul_check, koszul_euler, q2_contains};
use toric_ccc::exactlin::{Rational, RationalVector};
use toric_ccc::stackyfan::o_minus;
use toric_ccc::thetapos::ThetaIndex;

fn main() {
    let s = o_minus(3);
    let t: ThetaIndex = "cone=0,2;t=0,0".parse().unwrap();
    for (a, b) in [(0, 0), (1, -1), (-1, 1), (2, -3)] {
        let y = RationalVector(vec![Rational::from_int(a), Rational::from_int(b)]);
        println!("{y}: Koszul {}, member {}", koszul_euler(&s, &t, &y, 8).unwrap(), q2_contains(&s, &t, &y).unwrap());
    }
    let k = koszul_check(&s, 2, 3).unwrap();
    println!("Koszul sweep: {} thetas, {} probes, {} failures", k.thetas, k.probes, k.failures.len());
    let w = case3_sandwich_check(&s, 2, 2).unwrap();
    println!("sandwich sweep: {} points, {} failures", w.checked, w.failures.len());
}
