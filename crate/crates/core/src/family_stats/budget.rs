use serde::{Deserialize, Serialize};

use crate::prime_poly::{partitions, CycleType};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTerm {
    pub class: CycleType,
    pub value: f64,
    pub dominates_budget: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalBudget {
    pub x: f64,
    pub c_prime: f64,
    pub a: f64,
    pub c1: f64,
    /// `y = c1 log X`.
    pub y: f64,
    /// `X exp(-c' (log X / log log X) log log log X)`.
    pub budget: f64,
    /// `A X / log y * exp(-log(n!/|C|) log X / log log X)` per class of `S_n`.
    pub main_terms: Vec<MainTerm>,
}

pub fn exceptional_set_size(x: f64, c_prime: f64) -> Result<f64> {
    if !(x >= 100.0) {
        return Err(Error::OutOfRange(format!("X = {x}; need X >= 100")));
    }
    if !(c_prime > 0.0) {
        return Err(Error::OutOfRange(format!("c' = {c_prime}; need c' > 0")));
    }
    let l = x.ln();
    let ll = l.ln();
    Ok(x * (-c_prime * (l / ll) * ll.ln()).exp())
}

/// Exceptional-set budget next to the conditioned-family main term for each
/// Frobenius class of `S_n`.
pub fn exceptional_budget(
    x: f64,
    c_prime: f64,
    n: u32,
    a: f64,
    c1: f64,
) -> Result<ExceptionalBudget> {
    let budget = exceptional_set_size(x, c_prime)?;
    if !(3..=5).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    if !(a > 0.0 && c1 > 0.0) {
        return Err(Error::OutOfRange(format!(
            "need A > 0 and c1 > 0, got {a}, {c1}"
        )));
    }
    let l = x.ln();
    let y = c1 * l;
    if !(y > 1.0) {
        return Err(Error::OutOfRange(format!("y = c1 log X = {y}; need y > 1")));
    }
    let order: u64 = (1..=n as u64).product();
    let main_terms = partitions(n)?
        .into_iter()
        .map(|class| {
            let index = (order as f64 / class.class_size() as f64).ln();
            let value = a * x / y.ln() * (-index * l / l.ln()).exp();
            MainTerm {
                class,
                value,
                dominates_budget: value > budget,
            }
        })
        .collect();
    Ok(ExceptionalBudget {
        x,
        c_prime,
        a,
        c1,
        y,
        budget,
        main_terms,
    })
}
