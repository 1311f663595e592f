//! Exact combinatorics of theta sheaves on simplicial toric stacks and of the
//! Fourier-Mukai transforms between them, on the constructible side.

pub(crate) mod bigint_serde;
pub mod error;
pub mod exactlin;
pub mod stackyfan;
pub mod thetapos;
pub mod cohoracle;
pub mod fm;
pub mod cli;

pub use error::{CccError, Result};
