//! Statistics of repeating a K-outcome experiment N times, focused on three
//! questions about the observed frequencies:
//!
//! * how many leading bits of an encoded frequency can be trusted, for the
//!   plain, square-root (amplitude) and arcsine encodings;
//! * how far the complex amplitude vector built from the counts scatters
//!   around its expectation, and how that dispersion behaves for large N;
//! * how the scatter redistributes, but never changes in total, under unitary
//!   transformations composed from two-level rotations.
//!
//! Exact results come from full binomial/trinomial/multinomial sums computed
//! in log space; `mc` provides seeded Monte Carlo counterparts for
//! calibration.

// Matrix and moment code indexes with loop variables on purpose: the loops
// mirror the summation indices of the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod dist;
pub mod encode;
pub mod error;
pub mod mc;
pub mod repvec;
pub mod unitary;

pub use dist::{
    binomial_expectation, binomial_pmf, binomial_sum, composition_count, multinomial_enumerate,
    trinomial_expectation, trinomial_pmf, LogFactorialTable, OutcomeDistribution, TrialCounts,
    DEFAULT_TAIL_CUTOFF, ENUMERATION_LIMIT,
};
pub use encode::{
    arcsine_scale_constant, default_grid, encode_limit, encode_value, info_content,
    prob_bits_correct, prob_curve, sigma_nu, BitBudget, CurveMeta, EncodingKind, ProbabilityCurve,
};
pub use error::{Error, Result};
pub use mc::{
    mc_dispersion, mc_prob_bits, run_calibration, sample_counts, CalibrationCell,
    CalibrationReport, McEstimate, SamplerConfig, RNG_ALGORITHM,
};
pub use repvec::{
    asymptotic_dispersion, build_vector, dispersion_component, dispersion_component_expanded,
    dispersion_total, endpoint_locus_length, endpoint_prob, expectation_eta, DispersionReport,
    PhaseVector, RepKind, RepVector,
};
pub use unitary::{
    apply, compose, conservation_check, dispersion_transformed, embed,
    pair_dispersion_sum_expanded, rotation2, ConservationCheck, EmbeddedRotation, Rotation2Params,
    Unitary2, UnitaryK,
};
