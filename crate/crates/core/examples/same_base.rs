//! Change of weights on the projective line: theta indices, line bundles
//! and the order-embedding check in both directions.

use num_bigint::BigInt;
use toric_ccc::fm::{fm_case1, fm_line_bundle_case1, poset_embedding_report};
use toric_ccc::stackyfan::{same_base_p12_p13, same_base_p13_p12};
use toric_ccc::thetapos::ThetaIndex;

fn main() {
    let s = same_base_p12_p13();
    for c1 in -3..=3i64 {
        let c: Vec<BigInt> = vec![c1.into(), 0.into()];
        println!("O({c1}, 0) -> {:?}", fm_line_bundle_case1(&s, &c).unwrap().unwrap());
    }
    let t: ThetaIndex = "cone=0;t=-3".parse().unwrap();
    println!("{t} -> {}", fm_case1(&s, &t).unwrap());

    let fwd = poset_embedding_report(&s, 4).unwrap();
    println!("r=(3,1), s=(2,1): embedding {}", fwd.embedding);
    let rev = poset_embedding_report(&same_base_p13_p12(), 4).unwrap();
    let v = &rev.violations[0];
    println!("r=(2,1), s=(3,1): embedding {}, e.g. {} vs {} ({:?})", rev.embedding, v.theta1, v.theta2, v.kind);
}
