//! Finite set algebra in nilpotent groups and Lie algebras.

mod completion;
mod finite;
mod lie_sets;
mod nilbox;
mod progression;

pub use completion::{
    completion_progression, decompose_integer, AlgProgression, AlgProgressionRegion,
};
pub use finite::{
    inverse_set, is_symmetric, power_set, product_set, signed_power_set, subset_witness,
    symmetrize, Both, Contains, FiniteSet, Group,
};
pub use lie_sets::{
    bracket_set, bracketing_count, dilate_set, minkowski_sum, nilcompletion, scale_set,
    sumset_subset_witness, AlgSet,
};
pub use nilbox::{enumerate_nilbox, exp_set, nilbox_cardinality, FreeNilbox, NilboxSpec};
pub use progression::{
    enumerate_progression, progression_factors, progression_tuples, ExponentBox, FreeProgression,
    ProgressionSpec,
};
