use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::galois::galois_heuristic_is_sn;
use super::record::{square_divisor_primes, GroupTag, NumberFieldRecord};
use crate::prime_poly::{factor_degrees_mod_p, is_perfect_square, primes_up_to, IntPolynomial};
use crate::{Error, Result};

pub const MAX_ENUMERATION_HEIGHT: i64 = 200;
/// Primes swept by the Galois heuristic during enumeration.
pub const GALOIS_PRIME_BUDGET: u64 = 200;
/// Primes whose Frobenius statistics form the isomorphism key.
pub const DEDUP_PRIME_BOUND: u64 = 100;

type DedupKey = (i128, Vec<(usize, usize)>);

fn dedup_key(f: &IntPolynomial, disc: i128, primes: &[u64]) -> DedupKey {
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for &p in primes {
        if let Ok(fac) = factor_degrees_mod_p(f, p) {
            if !fac.ramified {
                *counts.entry(fac.degrees).or_default() += 1;
            }
        }
    }
    // three cycle types for cubics: [1,1,1], [2,1], [3]
    let mut stats: Vec<(usize, usize)> = counts
        .into_iter()
        .map(|(k, v)| (k[0] as usize, v))
        .collect();
    stats.sort_unstable();
    (disc, stats)
}

fn classify(a: i64, b: i64) -> Option<NumberFieldRecord> {
    let disc = -4 * (a as i128).pow(3) - 27 * (b as i128).pow(2);
    if disc == 0 {
        return None;
    }
    let poly = IntPolynomial::new(vec![b, a, 0, 1]).ok()?;
    if poly.has_rational_root() {
        return None;
    }
    let signature = if disc > 0 { (3, 0) } else { (1, 1) };
    let mut rec = NumberFieldRecord {
        index_warning_primes: square_divisor_primes(disc),
        poly,
        disc,
        disc_is_field_disc: false,
        signature,
        group_tag: GroupTag::Unknown,
        group_label: "unknown".to_string(),
        galois_evidence: None,
    };
    if is_perfect_square(&BigInt::from(disc)) {
        return Some(rec);
    }
    let evidence = galois_heuristic_is_sn(&rec.poly, GALOIS_PRIME_BUDGET).ok()?;
    if evidence.is_sn {
        rec.group_tag = GroupTag::SnHeuristic;
        rec.group_label = "S3-heuristic".to_string();
    }
    rec.galois_evidence = Some(evidence);
    Some(rec)
}

/// Irreducible `x^3 + a x + b` with `|a|, |b| <= height` and nonzero
/// discriminant, deduplicated by discriminant and Frobenius statistics at
/// `p <= 100`. Records are ordered by `(|disc|, disc, a, b)`.
pub fn enumerate_cubics(height: i64) -> Result<Vec<NumberFieldRecord>> {
    if !(0..=MAX_ENUMERATION_HEIGHT).contains(&height) {
        return Err(Error::OutOfRange(format!(
            "height {height}; need 0 <= H <= {MAX_ENUMERATION_HEIGHT}"
        )));
    }
    let primes = primes_up_to(DEDUP_PRIME_BOUND as f64);
    let mut found: Vec<(DedupKey, NumberFieldRecord)> = (-height..=height)
        .into_par_iter()
        .flat_map_iter(|a| {
            let primes = &primes;
            (-height..=height).filter_map(move |b| {
                let rec = classify(a, b)?;
                Some((dedup_key(&rec.poly, rec.disc, primes), rec))
            })
        })
        .collect();
    found.sort_by(|(_, x), (_, y)| {
        (
            x.disc.unsigned_abs(),
            x.disc,
            x.poly.coeffs()[1],
            x.poly.coeffs()[0],
        )
            .cmp(&(
                y.disc.unsigned_abs(),
                y.disc,
                y.poly.coeffs()[1],
                y.poly.coeffs()[0],
            ))
    });
    let mut first: HashMap<DedupKey, usize> = HashMap::new();
    let mut out: Vec<NumberFieldRecord> = Vec::new();
    let mut collisions = 0usize;
    for (key, rec) in found {
        if let Some(&i) = first.get(&key) {
            let kept = &out[i];
            // x -> -x maps x^3 + ax + b to x^3 + ax - b; anything else is a
            // heuristic identification worth a note
            let mirror = kept.poly.coeffs()[1] == rec.poly.coeffs()[1]
                && kept.poly.coeffs()[0] == -rec.poly.coeffs()[0];
            if !mirror {
                collisions += 1;
                log::debug!(
                    "dedup: {} identified with {} (disc {})",
                    rec.poly,
                    kept.poly,
                    rec.disc
                );
            }
            continue;
        }
        first.insert(key, out.len());
        out.push(rec);
    }
    if collisions > 0 {
        log::info!("enumerate_cubics({height}): {collisions} non-mirror dedup identifications");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_one() {
        let cat = enumerate_cubics(1).unwrap();
        let polys: Vec<&[i64]> = cat.iter().map(|r| r.poly.coeffs()).collect();
        assert!(cat.iter().any(|r| r.disc == -23));
        assert!(cat.iter().any(|r| r.disc == -31));
        // x^3 - x is reducible
        assert!(!polys.contains(&[0i64, -1, 0, 1].as_slice()));
        // hand check: b = 0 always has the root 0, a = 0 needs b = +-1 (root -+1)
        for r in &cat {
            assert_ne!(r.poly.coeffs()[0], 0);
        }
    }

    #[test]
    fn mirrored_pairs_collapse() {
        let cat = enumerate_cubics(3).unwrap();
        let has = |c: [i64; 4]| cat.iter().any(|r| r.poly.coeffs() == c);
        assert!(has([-1, -1, 0, 1]) ^ has([1, -1, 0, 1]));
    }

    #[test]
    fn s3_tags_have_nonsquare_discriminant() {
        for r in enumerate_cubics(20).unwrap() {
            let disc =
                -4 * (r.poly.coeffs()[1] as i128).pow(3) - 27 * (r.poly.coeffs()[0] as i128).pow(2);
            assert_eq!(disc, r.disc);
            if r.group_tag == GroupTag::SnHeuristic {
                let root = (r.disc.max(0) as f64).sqrt().round() as i128;
                assert!(r.disc < 0 || root * root != r.disc);
                assert!(r.galois_evidence.as_ref().unwrap().is_sn);
            }
        }
    }

    #[test]
    fn cyclic_cubics_stay_untagged() {
        let cat = enumerate_cubics(3).unwrap();
        let cyc = cat.iter().find(|r| r.disc == 81).expect("x^3 - 3x +- 1");
        assert_eq!(cyc.group_tag, GroupTag::Unknown);
    }

    #[test]
    fn height_bound() {
        assert!(enumerate_cubics(201).is_err());
        assert!(enumerate_cubics(0).unwrap().is_empty());
    }
}
