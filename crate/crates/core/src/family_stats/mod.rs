//! Family-level statistics over catalogs and model samples.

mod budget;
mod density;
mod inequalities;
mod moments;
mod scan;

pub use budget::{exceptional_budget, exceptional_set_size, ExceptionalBudget, MainTerm};
pub use density::{
    chebotarev_densities, ClassFrequency, DensityReport, DEFAULT_SIGMA_THRESHOLD, MIN_UNRAMIFIED,
};
pub use inequalities::{
    composition_inequality_check, composition_sweep, compositions, ones_allowed_check,
    CompositionSweep, InequalityKind, InequalityReport, SweepRow,
};
pub use moments::{
    empirical_moment, empirical_moments, moment_bound_rhs, small_prime_sum, MomentReport,
    MomentSource, MomentStatus, SmallSumSource, LOW_POWER_SIZE,
};
pub use scan::{scan_residues, HistogramBin, ScanReport, ScanRow, HISTOGRAM_BINS};
