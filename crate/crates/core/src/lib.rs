//! Exact arithmetic in free `s`-step nilpotent Lie algebras and groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`hall`] builds Hall bases of basic commutators and the free nilpotent
//!   Lie algebra over exact rationals.
//! * [`nilgroup`] realises the free nilpotent group through the truncated
//!   Baker-Campbell-Hausdorff product, together with group, type-II and
//!   algebra coordinates.
//! * [`setalg`] enumerates nilpotent progressions, nilboxes and
//!   nilcompletions and provides product sets, sumsets and containment.
//! * [`verify`] measures approximate-group behaviour (doubling, covering
//!   and control witnesses) and runs the verification suites by exhaustive
//!   enumeration.
//!
//! All arithmetic is exact; there is no floating point anywhere in the
//! computational path.

pub mod config;
pub mod error;
pub mod hall;
pub mod nilgroup;
pub mod poly;
pub mod scalar;
pub mod setalg;
pub mod verify;

pub use config::Limits;
pub use error::{Error, Result};
pub use hall::{BasisKey, HallBasis, LieAlgebra, LieElement, WeightVector};
pub use nilgroup::{GroupElement, NilGroup};
pub use scalar::Rat;
