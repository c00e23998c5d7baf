//! Approximate-group measurements and verification suites.

mod closure;
mod cover;
mod freiman;
mod golden;
mod growth;
mod identities;
mod inclusion;
mod mutual;

pub use closure::{
    closure_check, closure_suite, completion_check, decompose_suite, random_alg_set,
    ClosureInstance, ClosureReport, CompletionReport, DecomposeReport, DecomposeRow,
};
pub use cover::{
    approx_witness, certify_approx, certify_control, control_witness, lazy_greedy, ApproxWitness,
    ControlWitness, CoverMode, EXHAUSTIVE_MAX,
};
pub use freiman::{
    commutator_words, freiman_hom_check, freiman_invariance_check, FreimanHomReport,
    FreimanInvarianceReport, FreimanViolation, Word,
};
pub use golden::{check_golden, GoldenStatus};
pub use growth::{
    doubling_constant, growth_suite, image_check, mutual_bound_check, transitivity_check,
    tripling_constant, tripling_report, GrowthReport, GrowthRow, ImageReport, MutualBoundReport,
    TransitivityReport, TriplingReport,
};
pub use identities::{hall_petresco_check, interpolate, lazard_check, pow_polynomiality_check};
pub use inclusion::{
    big_c_grid, c_grid, inclusion_suite, Constants, InclusionReport, InclusionResult, Q_GRID_MAX,
};
pub use mutual::{
    dilation_control, mutual_control_suite, DilationReport, MutualControlReport, PairControl,
};
