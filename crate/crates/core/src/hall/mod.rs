//! Hall bases and the free `s`-step nilpotent Lie algebra `n_{k,s}`.

mod algebra;
pub mod assoc;
mod basis;
mod element;
mod weight;

pub use algebra::LieAlgebra;
pub use basis::{build_hall_basis, mobius, witt_count, BasicCommutator, HallBasis, Shape};
pub use element::{BasisKey, LieElement};
pub use weight::WeightVector;
