//! Exact half-space arithmetic: intersections, inclusion witnesses and
//! Minkowski sums of polytopes sharing a normal fan.

use toric_ccc::exactlin::{HalfSpace, LatticeVector, Polyhedron, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn main() {
    let quadrant = Polyhedron::universe(2)
        .with(HalfSpace::new(LatticeVector::from_i64(&[1, 0]), q(0, 1), true))
        .with(HalfSpace::new(LatticeVector::from_i64(&[0, 1]), q(0, 1), true));
    let shifted = quadrant.translate(&toric_ccc::exactlin::RationalVector(vec![q(1, 2), q(1, 3)]));
    println!("shifted quadrant inside quadrant: {}", shifted.is_subset_of(&quadrant));
    match quadrant.difference_witness(&shifted) {
        Some(x) => println!("point of the quadrant outside the shifted one: {x}"),
        None => println!("no witness"),
    }

    let square = Polyhedron::cube(2, &q(1, 1));
    let small = Polyhedron::cube(2, &q(1, 2));
    let sum = square.minkowski_sum(&small).unwrap();
    println!("[-1,1]^2 + [-1/2,1/2]^2 equals [-3/2,3/2]^2: {}", sum.same_set(&Polyhedron::cube(2, &q(3, 2))));
    println!("bounds on x: {:?}", sum.axis_bounds(0).unwrap());
}
