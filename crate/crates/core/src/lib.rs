//! Finite-prefix generation of classical infinite words (morphic fixed points,
//! characteristic Sturmian words, the binary Champernowne word, ultimately
//! periodic words) together with their abelian invariants: Parikh-vector
//! spectra, abelian complexity, balance, and abelian powers.
//!
//! Every analysis works on a [`PrefixBuffer`], an immutable materialized prefix
//! of the word described by a [`WordSpec`]. Quantities of the infinite word are
//! estimated from growing prefixes under a [`StabilizationPolicy`]; each result
//! records whether the estimate settled and on which prefix length.

pub mod abelian;
mod error;
pub mod factors;
pub mod powers;
pub mod wordgen;

pub use abelian::{
    abelian_complexity_profile, abelian_equivalent, balance_profile, letter_count_ranges,
    max_abelian_complexity, parikh, periodicity_probe, prefix_factor_balance, window_spectrum,
    BalanceEntry, BalanceProfile, ComplexityProfile, ParikhPrefixSums, ParikhVector, ProfileEntry,
    StabilizationPolicy,
};
pub use error::{Error, Result};
pub use factors::{
    factor_complexity_profile, right_special_factors, tribonacci_central_check, CentralChecker,
    CentralReport, FactorSpectrum, RightSpecialFactor, RightSpecialFactors,
};
pub use powers::{
    abelian_power_violation, fixed_period_falsifier, is_abelian_power, max_abelian_power_at,
    min_period_for_k, period_doubling_check, position_coverage_report, two_period_cover,
    CoverReading, CoverResult, PeriodDoublingReport, PositionEntry, PositionPowerReport, PowerHit,
    PowerRun,
};
pub use wordgen::{
    apply_morphism, materialize, materialize_with_cap, parse_word, word_to_string, Alphabet,
    Letter, Morphism, PrefixBuffer, WordSpec,
};

/// Default ceiling on the number of letters any single materialization may produce.
pub const DEFAULT_CAP: usize = 100_000_000;
