//! Combinatorial inequalities over compositions of `2r` used by the moment
//! bound, checked in log space.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative slack on `ln lhs <= ln rhs`.
const LOG_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    /// `r! / (u! prod r_i!) <= (y / log y)^{r - u}`, all parts at least 2.
    Composition,
    /// `(1/u!) (1/prod r_i!) y^{u-m-r} (log y)^{r-u} <= 1/r!`, `m` parts equal to 1.
    OnesAllowed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub parts: Vec<u32>,
    pub r: u32,
    pub u: u32,
    pub m: u32,
    pub y: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn common_preconditions(parts: &[u32], y: f64) -> Result<u32> {
    if parts.is_empty() {
        return Err(Error::Precondition("empty composition".into()));
    }
    if !(y >= 3.0) {
        return Err(Error::Precondition(format!("need y >= 3, got {y}")));
    }
    if parts.contains(&0) {
        return Err(Error::Precondition(format!("zero part in {parts:?}")));
    }
    let total: u32 = parts.iter().sum();
    if !total.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "parts {parts:?} sum to odd {total}"
        )));
    }
    let r = total / 2;
    if r as f64 > y / y.ln() {
        return Err(Error::Precondition(format!(
            "r = {r} exceeds y / log y = {:.3}",
            y / y.ln()
        )));
    }
    Ok(r)
}

pub fn composition_inequality_check(parts: &[u32], y: f64) -> Result<InequalityReport> {
    let r = common_preconditions(parts, y)?;
    if let Some(p) = parts.iter().find(|&&p| p < 2) {
        return Err(Error::Precondition(format!("part {p} < 2 in {parts:?}")));
    }
    let u = parts.len() as u32;
    let log_lhs =
        ln_factorial(r) - ln_factorial(u) - parts.iter().map(|&p| ln_factorial(p)).sum::<f64>();
    let log_rhs = (r as f64 - u as f64) * (y / y.ln()).ln();
    Ok(InequalityReport {
        kind: InequalityKind::Composition,
        parts: parts.to_vec(),
        r,
        u,
        m: 0,
        y,
        log_lhs,
        log_rhs,
        holds: log_lhs <= log_rhs + LOG_EPS * log_rhs.abs().max(1.0),
    })
}

pub fn ones_allowed_check(parts: &[u32], y: f64) -> Result<InequalityReport> {
    let r = common_preconditions(parts, y)?;
    let u = parts.len() as u32;
    let m = parts.iter().filter(|&&p| p == 1).count() as u32;
    let (uf, mf, rf) = (u as f64, m as f64, r as f64);
    let log_lhs = -ln_factorial(u) - parts.iter().map(|&p| ln_factorial(p)).sum::<f64>()
        + (uf - mf - rf) * y.ln()
        + (rf - uf) * y.ln().ln();
    let log_rhs = -ln_factorial(r);
    Ok(InequalityReport {
        kind: InequalityKind::OnesAllowed,
        parts: parts.to_vec(),
        r,
        u,
        m,
        y,
        log_lhs,
        log_rhs,
        holds: log_lhs <= log_rhs + LOG_EPS * log_rhs.abs().max(1.0),
    })
}

/// All compositions of `n` in a fixed order: bit `i` of the mask cuts after
/// position `i + 1`.
pub fn compositions(n: u32) -> impl Iterator<Item = Vec<u32>> {
    let masks = if n == 0 { 0 } else { 1u64 << (n - 1) };
    (0..masks).map(move |mask| {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub two_r: u32,
    pub compositions: usize,
    pub composition_checks: usize,
    pub ones_allowed_checks: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionSweep {
    pub y: f64,
    pub max_two_r: u32,
    pub rows: Vec<SweepRow>,
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<InequalityReport>,
}

impl CompositionSweep {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total && self.failures.is_empty()
    }
}

/// Runs both inequalities on every composition of every even `2r <= max_two_r`;
/// the composition inequality applies to those with all parts at least 2.
pub fn composition_sweep(max_two_r: u32, y: f64) -> Result<CompositionSweep> {
    if max_two_r < 2 || !max_two_r.is_multiple_of(2) || max_two_r > 40 {
        return Err(Error::OutOfRange(format!(
            "max 2r = {max_two_r}; need an even value in 2..=40"
        )));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for two_r in (2..=max_two_r).step_by(2) {
        let mut row = SweepRow {
            two_r,
            compositions: 0,
            composition_checks: 0,
            ones_allowed_checks: 0,
            passed: 0,
        };
        for parts in compositions(two_r) {
            row.compositions += 1;
            let mut ok = true;
            let ones = ones_allowed_check(&parts, y)?;
            row.ones_allowed_checks += 1;
            if !ones.holds {
                ok = false;
                failures.push(ones);
            }
            if parts.iter().all(|&p| p >= 2) {
                let comp = composition_inequality_check(&parts, y)?;
                row.composition_checks += 1;
                if !comp.holds {
                    ok = false;
                    failures.push(comp);
                }
            }
            if ok {
                row.passed += 1;
            }
        }
        rows.push(row);
    }
    Ok(CompositionSweep {
        y,
        max_two_r,
        total: rows.iter().map(|r| r.compositions).sum(),
        passed: rows.iter().map(|r| r.passed).sum(),
        rows,
        failures,
    })
}
