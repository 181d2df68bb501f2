//! Residues of Dedekind zeta functions of `S_n`-fields (`n = 3, 4, 5`).
//!
//! For an `S_{d+1}`-field `K` the Dedekind zeta function factors as
//! `zeta_K(s) = zeta(s) L(s, rho)` with `rho` the standard representation, so
//! the residue at `s = 1` is `L(1, rho)`. This crate evaluates that value from
//! Frobenius cycle types: exact local Euler factors, truncated Euler products
//! with explicit tail accounting, extreme-value targets, a Chebotarev random
//! model for the moment machinery, and an exact quadratic oracle.
//!
//! Module map:
//!
//! * [`prime_poly`]: sieving, integer and `F_p` polynomial algebra, Sturm counts.
//! * [`artin_euler`]: characters, local factors, truncated `L(1, rho)`, constants.
//! * [`field_catalog`]: catalog ingestion, cubic enumeration, local conditions.
//! * [`random_model`]: iid Frobenius classes with Chebotarev weights.
//! * [`family_stats`]: scans, densities, moments, combinatorial inequalities.
//! * [`quadratic_oracle`]: class numbers and exact `L(1, chi_D)`.
//! * [`cli`]: the `residue` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod artin_euler;
pub mod cli;
mod error;
pub mod family_stats;
pub mod field_catalog;
pub mod numeric;
pub mod prime_poly;
pub mod quadratic_oracle;
pub mod random_model;

pub use error::{Error, Result};
