use super::{build_contraction, build_same_base, ContractionSetup, SameBaseSetup, StackyFan, WeightedRay};

/// One-dimensional fan with rays +1 (weight `a`) and -1 (weight `b`).
pub fn weighted_projective_line(a: u64, b: u64) -> StackyFan {
    StackyFan::new(1, vec![WeightedRay::new(&[1], a), WeightedRay::new(&[-1], b)], vec![vec![0], vec![1]])
        .expect("valid fan")
}

pub fn p1() -> StackyFan {
    weighted_projective_line(1, 1)
}

/// Stacky generators 3 and -1.
pub fn p13() -> StackyFan {
    weighted_projective_line(3, 1)
}

/// Rays (1,0), (0,1), (-1,-2).
pub fn p112() -> StackyFan {
    StackyFan::new(
        2,
        vec![
            WeightedRay::new(&[1, 0], 1),
            WeightedRay::new(&[0, 1], 1),
            WeightedRay::new(&[-1, -2], 1),
        ],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .expect("valid fan")
}

/// Minimal resolution of the A1 singularity: rays (1,0), (-1,-2), (0,-1)
/// with cones {0,2} and {1,2}.
pub fn a1_resolution_fan() -> StackyFan {
    crepant_a1().sigma1().clone()
}

/// Contraction of (0,-1) in the cone spanned by (1,0) and (-1,-2).
pub fn crepant_a1() -> ContractionSetup {
    build_contraction(
        vec![WeightedRay::new(&[1, 0], 1), WeightedRay::new(&[-1, -2], 1)],
        WeightedRay::new(&[0, -1], 1),
    )
    .expect("valid contraction")
}

/// Weighted blow-up: rays (1,0) of weight 2 and (0,1), extra ray (1,1).
pub fn discrepancy_example() -> ContractionSetup {
    build_contraction(
        vec![WeightedRay::new(&[1, 0], 2), WeightedRay::new(&[0, 1], 1)],
        WeightedRay::new(&[1, 1], 1),
    )
    .expect("valid contraction")
}

/// Total space of O(-m) over the projective line, contracted to the cone
/// over (1,0), (-1,-m).
pub fn o_minus(m: i64) -> ContractionSetup {
    build_contraction(
        vec![WeightedRay::new(&[1, 0], 1), WeightedRay::new(&[-1, -m], 1)],
        WeightedRay::new(&[0, -1], 1),
    )
    .expect("valid contraction")
}

/// From the stacky line with generators 2, -1 to the one with 3, -1.
pub fn same_base_p12_p13() -> SameBaseSetup {
    build_same_base(&p1(), &[3, 1], &[2, 1]).expect("valid setup")
}

/// Reversed weights: from the 3, -1 line to the 2, -1 line.
pub fn same_base_p13_p12() -> SameBaseSetup {
    build_same_base(&p1(), &[2, 1], &[3, 1]).expect("valid setup")
}
