//! The free nilpotent group `N_{k,s}` and its coordinate systems.

mod bch;
mod collect;
mod coords;
mod group;
mod heisenberg;
mod privileged;

pub use bch::BchEngine;
pub use collect::{LatticeGroup, LATTICE_MAX_DIM};
pub use coords::Factors;
pub use group::{bch_engine, GroupElement, NilGroup};
pub use heisenberg::{heisenberg_matrix, Heisenberg, Matrix3};
pub use privileged::{
    privileged_change_profile, CoordinateProfile, DirectionProfile, PrivilegedProfile,
    PROFILE_MAX_DIM,
};
