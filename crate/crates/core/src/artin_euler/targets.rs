//! Extreme-value targets for `L(1, rho)` as functions of `|D_K|`. The
//! `1 + o(1)` corrections are dropped; only main terms are returned.

use serde::{Deserialize, Serialize};

use super::constants::{euler_gamma, zeta_value};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Max,
    Min,
    Bounded,
}

impl std::str::FromStr for TargetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "max" => Ok(TargetKind::Max),
            "min" => Ok(TargetKind::Min),
            "bounded" => Ok(TargetKind::Bounded),
            _ => Err(format!("unknown target kind {s:?}")),
        }
    }
}

fn loglog(abs_disc: f64) -> Result<f64> {
    if !(abs_disc > std::f64::consts::E) {
        return Err(Error::OutOfRange(format!(
            "log log |D| undefined for |D| = {abs_disc}"
        )));
    }
    Ok(abs_disc.ln().ln())
}

/// The GRH window `(zeta(d+1) / (2 e^gamma loglog|D|), 2^d (e^gamma loglog|D|)^d)`.
pub fn grh_window(d: u32, abs_disc: f64) -> Result<(f64, f64)> {
    if !(1..=4).contains(&d) {
        return Err(Error::OutOfRange(format!("d = {d}; need 1 <= d <= 4")));
    }
    if abs_disc < 16.0 {
        return Err(Error::OutOfRange(format!(
            "grh_window needs |D| >= 16, got {abs_disc}"
        )));
    }
    let m = euler_gamma().exp() * loglog(abs_disc)?;
    let lower = zeta_value(d + 1)? / (2.0 * m);
    let upper = 2f64.powi(d as i32) * m.powi(d as i32);
    Ok((lower, upper))
}

pub fn predicted_target(d: u32, kind: TargetKind, abs_disc: f64) -> Result<f64> {
    if !(2..=4).contains(&d) {
        return Err(Error::OutOfRange(format!("d = {d}; need 2 <= d <= 4")));
    }
    match kind {
        TargetKind::Max => Ok((euler_gamma().exp() * loglog(abs_disc)?).powi(d as i32)),
        TargetKind::Min => Ok(zeta_value(d + 1)? / (euler_gamma().exp() * loglog(abs_disc)?)),
        TargetKind::Bounded => {
            let z2 = zeta_value(2)?;
            if d.is_multiple_of(2) {
                Ok(z2.powi(d as i32 / 2))
            } else {
                Ok(z2.powi((d as i32 - 3) / 2) * zeta_value(3)?)
            }
        }
    }
}
