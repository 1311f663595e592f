//! Homs between theta sheaves decided from character sets, compared with
//! the combinatorial rule over a window.

use toric_ccc::cohoracle::{hom_module_oracle, hom_oracle_check, required_bound};
use toric_ccc::stackyfan::p112;
use toric_ccc::thetapos::{hom_constructible, ThetaIndex};

fn main() {
    let f = p112();
    let a: ThetaIndex = "cone=0,1;t=1,0".parse().unwrap();
    let b: ThetaIndex = "cone=0;t=0".parse().unwrap();
    let bound = required_bound(&f, [&a, &b]).unwrap();
    println!("hom({a}, {b}): rule {:?}, oracle {:?}", hom_constructible(&f, &a, &b).unwrap().value, hom_module_oracle(&f, &a, &b, &bound).unwrap());

    let r = hom_oracle_check(&f, 2, None).unwrap();
    println!("window 2: {} pairs, {} nonzero, {} disagreements", r.pairs, r.nonzero, r.disagreements.len());
}
