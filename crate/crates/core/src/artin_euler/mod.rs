//! Characters of the standard representation, exact local Euler factors,
//! truncated approximations to `L(1, rho)`, constants and targets.

mod constants;
mod group;
mod local_factor;
mod targets;
mod truncation;

pub use constants::{constants, euler_gamma, mertens_product, zeta_value, Constants};
pub use group::{a_rho, orthogonality_check, trace_on_degrees, StandardRepGroup};
pub use local_factor::{
    exp_bracket, factor_bounds, l_rho_factor_on_degrees, l_rho_local_factor, log_local_factor,
    power_sum_identity, zeta_local_factor, EulerFactorValue, PowerSumCheck,
};
pub use targets::{grh_window, predicted_target, TargetKind};
pub(crate) use truncation::estimate_from_log;
pub use truncation::{
    default_height, envelope_products, heuristic_error, log_sum_l1, truncated_product_l1,
    TruncatedEstimate, TruncationHeight, DEFAULT_HEIGHT_EXPONENT, MIN_HEIGHT,
};
