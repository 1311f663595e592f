//! Stacky fans and the two kinds of setup: change of weights on a fixed
//! fan, and contraction of an interior ray.

use toric_ccc::stackyfan::{crepant_a1, discrepancy_example, o_minus, p112, same_base_p12_p13, Discrepancy};

fn main() {
    let f = p112();
    println!("P(1,1,2): {} rays, {} cones, complete {}", f.rays().len(), f.cones().len(), f.is_complete());
    println!("max cones {:?}", f.max_cones());
    println!("{}", serde_json::to_string(&f.to_json_value()).unwrap());

    let s = same_base_p12_p13();
    println!("same base r={:?} s={:?}: {:?}", s.r(), s.s(), s.discrepancy());

    for (name, c) in [("crepant A1", crepant_a1()), ("discrepancy", discrepancy_example()), ("O(-3)", o_minus(3))] {
        let alpha: Vec<String> = c.alpha().iter().map(|a| a.to_string()).collect();
        println!("{name}: alpha = [{}], sum {}, {:?}", alpha.join(", "), c.alpha_sum(), c.discrepancy());
    }
}
