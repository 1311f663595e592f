//! Exact rational linear algebra over M_R and N.

mod polyhedron;
mod rational;
mod solve;
mod vector;

pub use polyhedron::{solve_system, HalfSpace, Polyhedron};
pub use rational::Rational;
pub use solve::{cone_coefficients, determinant, lattice_rank, rank, solve_apex, solve_full_column_rank};
pub use vector::{ceil_div, floor_div, lcm_all, pair, LatticeVector, RationalVector};

pub(crate) use vector::pair_unchecked;
