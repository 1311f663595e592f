//! Writes the conical Lagrangian of P(1,3) and a staircase region as SVG.

use toric_ccc::cli::svg::{lagrangian_svg, region_svg};
use toric_ccc::exactlin::Rational;
use toric_ccc::fm::fm3_region;
use toric_ccc::stackyfan::{crepant_a1, p13};
use toric_ccc::thetapos::lambda_skeleton;

fn main() {
    let dir = std::env::temp_dir();
    let one = Rational::from_int(1);
    let f = p13();
    let pieces = lambda_skeleton(&f, 3, &one).unwrap();
    let path = dir.join("p13_lagrangian.svg");
    std::fs::write(&path, lagrangian_svg(&f, &pieces, &one).unwrap()).unwrap();
    println!("wrote {}", path.display());

    let r = fm3_region(&crepant_a1(), &"cone=0,2;t=0,0".parse().unwrap()).unwrap();
    let path = dir.join("crepant_staircase.svg");
    std::fs::write(&path, region_svg(&r.pieces(12).unwrap(), &Rational::from_int(3), false).unwrap()).unwrap();
    println!("wrote {}", path.display());
}
