use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{frobenius_class, FrobeniusClass, NumberFieldRecord};
use crate::prime_poly::{is_prime, CycleType};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCondition {
    /// Unramified with the given Frobenius cycle type.
    Unramified(CycleType),
    Ramified,
    /// Frobenius is the given type whenever `p` is unramified.
    IfUnramified(CycleType),
}

impl LocalCondition {
    pub fn admits(&self, class: &FrobeniusClass) -> bool {
        match (self, class) {
            (LocalCondition::Ramified, c) => c.is_ramified(),
            (LocalCondition::Unramified(want), FrobeniusClass::Unramified(got)) => want == got,
            (LocalCondition::Unramified(_), _) => false,
            (LocalCondition::IfUnramified(want), FrobeniusClass::Unramified(got)) => want == got,
            (LocalCondition::IfUnramified(_), _) => true,
        }
    }
}

/// Conditions at finitely many distinct primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConditionSet {
    conditions: BTreeMap<u64, LocalCondition>,
}

impl LocalConditionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a condition at `p`; a second condition at the same prime is an error.
    pub fn insert(&mut self, p: u64, c: LocalCondition) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.conditions.contains_key(&p) {
            return Err(Error::Precondition(format!("two conditions at p = {p}")));
        }
        self.conditions.insert(p, c);
        Ok(())
    }

    pub fn with(mut self, p: u64, c: LocalCondition) -> Result<Self> {
        self.insert(p, c)?;
        Ok(self)
    }

    /// The same condition at every prime `<= y`.
    pub fn uniform(y: u64, c: LocalCondition) -> Result<Self> {
        let mut s = Self::new();
        for p in crate::prime_poly::primes_up_to(y as f64) {
            s.insert(p, c.clone())?;
        }
        Ok(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &LocalCondition)> {
        self.conditions.iter()
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn max_prime(&self) -> Option<u64> {
        self.conditions.keys().next_back().copied()
    }

    pub fn matches(&self, field: &NumberFieldRecord) -> Result<bool> {
        for (&p, c) in &self.conditions {
            if !c.admits(&frobenius_class(field, p)?.class) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Optional discriminant window `X/2 < |disc| <= X` with the bound
/// `y <= c1 log X` on condition primes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscWindow {
    pub x: f64,
    pub c1: f64,
}

impl DiscWindow {
    pub fn new(x: f64) -> Self {
        DiscWindow { x, c1: 1.0 }
    }

    pub fn prime_bound(&self) -> f64 {
        self.c1 * self.x.ln()
    }

    pub fn contains(&self, abs_disc: f64) -> bool {
        abs_disc > self.x / 2.0 && abs_disc <= self.x
    }
}

/// Records in the window whose Frobenius data satisfy every condition.
/// Without a window, no discriminant cut and no prime bound are applied.
pub fn filter_by_conditions(
    catalog: &[NumberFieldRecord],
    conditions: &LocalConditionSet,
    window: Option<DiscWindow>,
) -> Result<Vec<NumberFieldRecord>> {
    if let (Some(w), Some(p)) = (window, conditions.max_prime()) {
        let bound = w.prime_bound();
        if p as f64 > bound {
            return Err(Error::ConditionBeyondBound { p, bound });
        }
    }
    let keep: Vec<bool> = catalog
        .par_iter()
        .map(|r| {
            if let Some(w) = window {
                if !w.contains(r.abs_disc()) {
                    return Ok(false);
                }
            }
            conditions.matches(r)
        })
        .collect::<Result<_>>()?;
    Ok(catalog
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r.clone())
        .collect())
}
