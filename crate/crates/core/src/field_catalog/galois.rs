use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::prime_poly::{factor_degrees_mod_p, primes_up_to, CycleType, IntPolynomial};
use crate::{Error, Result};

/// Witness primes for the cycle types that force the Galois group to be
/// the full symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisEvidence {
    pub is_sn: bool,
    /// Cycle type (as `[a,b,..]`) to the first unramified prime showing it.
    pub witnesses: BTreeMap<String, u64>,
    pub prime_budget: u64,
    pub reason: String,
}

/// Cycle types whose joint presence in a transitive subgroup of `S_n`
/// generates `S_n`: an `n`-cycle, an `(n-1)`-cycle and a transposition.
fn required_types(n: u32) -> Vec<CycleType> {
    let mut v = vec![CycleType::full_cycle(n)];
    let mut long = vec![n - 1];
    long.resize(2, 1);
    v.push(CycleType::new(long).unwrap());
    let mut transposition = vec![2];
    transposition.resize(n as usize - 1, 1);
    let t = CycleType::new(transposition).unwrap();
    if !v.contains(&t) {
        v.push(t);
    }
    v
}

/// Sweep unramified primes up to `prime_budget` looking for the generating
/// cycle types. The polynomial must be irreducible of degree 3, 4 or 5.
pub fn galois_heuristic_is_sn(f: &IntPolynomial, prime_budget: u64) -> Result<GaloisEvidence> {
    let n = f.degree() as u32;
    if !(3..=5).contains(&n) {
        return Err(Error::Precondition(format!(
            "Galois heuristic is defined for degree 3, 4 or 5, got {n}"
        )));
    }
    let needed = required_types(n);
    let mut witnesses = BTreeMap::new();
    for p in primes_up_to(prime_budget as f64) {
        let fac = factor_degrees_mod_p(f, p)?;
        let Some(c) = fac.cycle_type() else { continue };
        witnesses.entry(c.to_string()).or_insert(p);
        if needed
            .iter()
            .all(|t| witnesses.contains_key(&t.to_string()))
        {
            return Ok(GaloisEvidence {
                is_sn: true,
                witnesses,
                prime_budget,
                reason: format!("generating cycle types found by p = {p}"),
            });
        }
    }
    let missing: Vec<String> = needed
        .iter()
        .map(|t| t.to_string())
        .filter(|t| !witnesses.contains_key(t))
        .collect();
    Ok(GaloisEvidence {
        is_sn: false,
        witnesses,
        prime_budget,
        reason: format!(
            "inconclusive: no {} among unramified p <= {prime_budget}",
            missing.join(", ")
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn generic_cubic_is_s3() {
        let ev = galois_heuristic_is_sn(&poly(&[-1, -1, 0, 1]), 100).unwrap();
        assert!(ev.is_sn);
        assert!(ev.witnesses.contains_key("[3]") && ev.witnesses.contains_key("[2,1]"));
        // the full sweep also meets the identity class
        let seen: Vec<String> = crate::prime_poly::primes_up_to(100.0)
            .into_iter()
            .filter_map(|p| {
                factor_degrees_mod_p(&poly(&[-1, -1, 0, 1]), p)
                    .unwrap()
                    .cycle_type()
            })
            .map(|c| c.to_string())
            .collect();
        assert!(seen.contains(&"[1,1,1]".to_string()));
    }

    #[test]
    fn cyclic_cubic_never_shows_a_transposition() {
        let ev = galois_heuristic_is_sn(&poly(&[-1, -3, 0, 1]), 1000).unwrap();
        assert!(!ev.is_sn);
        assert!(!ev.witnesses.contains_key("[2,1]"));
        assert!(ev.reason.starts_with("inconclusive"));
    }

    #[test]
    fn quartic_and_quintic() {
        assert!(
            galois_heuristic_is_sn(&poly(&[-1, -1, 0, 0, 1]), 200)
                .unwrap()
                .is_sn
        );
        assert!(
            galois_heuristic_is_sn(&poly(&[-1, -1, 0, 0, 0, 1]), 200)
                .unwrap()
                .is_sn
        );
        // x^4 + 1 has group V_4
        assert!(
            !galois_heuristic_is_sn(&poly(&[1, 0, 0, 0, 1]), 200)
                .unwrap()
                .is_sn
        );
    }

    #[test]
    fn rejects_quadratics() {
        assert!(galois_heuristic_is_sn(&poly(&[1, 0, 1]), 100).is_err());
    }
}
