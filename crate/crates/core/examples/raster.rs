//! Pixel topology of region differences, and the sweep confirming that
//! vanishing homs come from contractible differences.

use toric_ccc::exactlin::{HalfSpace, LatticeVector, Polyhedron, Rational};
use toric_ccc::fm::{contractibility_check_2d, raster_contractible_2d};
use toric_ccc::stackyfan::discrepancy_example;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn main() {
    let half = |n: &[i64], t| HalfSpace::new(LatticeVector::from_i64(n), t, true);
    let a = Polyhedron::universe(2).with(half(&[1, 0], q(0, 1))).with(half(&[0, 1], q(0, 1)));
    let b = Polyhedron::universe(2).with(half(&[1, 0], q(1, 1))).with(half(&[0, 1], q(1, 1)));
    let r = raster_contractible_2d(&a, &b, &q(4, 1), &q(1, 4)).unwrap();
    println!("quadrant minus shifted quadrant: contractible {}, {:?}", r.contractible, r.topology);

    let c = contractibility_check_2d(&discrepancy_example(), 1, &q(6, 1), &q(1, 4)).unwrap();
    println!(
        "discrepancy example: {} zero verdicts, {} confirmed, {} disagreements",
        c.zero_verdicts,
        c.confirmed,
        c.disagreements.len()
    );
}
