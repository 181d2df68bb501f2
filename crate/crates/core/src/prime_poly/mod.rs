//! Exact integer and mod-`p` polynomial algebra: primes, factor degrees,
//! discriminants, real-root counts and partitions.

mod cycle_type;
pub mod gf_poly;
mod int_poly;
pub mod sieve;
pub mod sturm;

use serde::{Deserialize, Serialize};

pub use cycle_type::{partitions, CycleType};
pub use int_poly::{is_perfect_square, resultant, IntPolynomial};
pub use sieve::{is_prime, primes_below, primes_between, primes_up_to};

use crate::{Error, Result};

/// Degrees of the distinct irreducible factors of `f mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationModP {
    pub p: u64,
    /// Descending. For unramified `p` this is the Frobenius cycle type.
    pub degrees: Vec<u32>,
    /// `f mod p` has a repeated factor.
    pub ramified: bool,
}

impl FactorizationModP {
    pub fn cycle_type(&self) -> Option<CycleType> {
        if self.ramified {
            None
        } else {
            CycleType::new(self.degrees.clone()).ok()
        }
    }
}

pub fn poly_discriminant(f: &IntPolynomial) -> Result<num_bigint::BigInt> {
    if f.degree() < 2 {
        return Err(Error::InvalidPolynomial(
            "discriminant needs degree >= 2".into(),
        ));
    }
    Ok(f.discriminant())
}

pub fn factor_degrees_mod_p(f: &IntPolynomial, p: u64) -> Result<FactorizationModP> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 1 << 32 {
        return Err(Error::OutOfRange(format!("p = {p} exceeds 2^32")));
    }
    let factors = gf_poly::factor_mod_p(f.coeffs(), p);
    let ramified = factors.iter().any(|(_, m)| *m > 1);
    let mut degrees: Vec<u32> = factors
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(0) as u32)
        .collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FactorizationModP {
        p,
        degrees,
        ramified,
    })
}

/// Real roots `r1` of a squarefree integer polynomial.
pub fn real_root_count(f: &IntPolynomial) -> Result<usize> {
    sturm::real_root_count(f.coeffs())
}

/// Signature `(r1, r2)` with `r1 + 2 r2 = deg f`.
pub fn signature(f: &IntPolynomial) -> Result<(usize, usize)> {
    let r1 = real_root_count(f)?;
    Ok((r1, (f.degree() - r1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn factor_degree_examples() {
        let f = poly(&[-1, -1, 0, 1]);
        let at2 = factor_degrees_mod_p(&f, 2).unwrap();
        assert_eq!((at2.degrees.clone(), at2.ramified), (vec![3], false));
        let at23 = factor_degrees_mod_p(&f, 23).unwrap();
        assert_eq!((at23.degrees.clone(), at23.ramified), (vec![1, 1], true));
        assert_eq!(at23.cycle_type(), None);
        let g = factor_degrees_mod_p(&poly(&[1, 0, 1]), 5).unwrap();
        assert_eq!((g.degrees, g.ramified), (vec![1, 1], false));
        assert_eq!(factor_degrees_mod_p(&f, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn unramified_away_from_discriminant() {
        let polys: [&[i64]; 4] = [
            &[-1, -1, 0, 1],
            &[-1, -4, 0, 1],
            &[-1, -1, 0, 0, 1],
            &[-1, -1, 0, 0, 0, 1],
        ];
        for c in polys {
            let f = poly(c);
            let disc = f.discriminant();
            for p in primes_up_to(500.0) {
                let fac = factor_degrees_mod_p(&f, p).unwrap();
                let divides = (&disc % BigInt::from(p)) == BigInt::from(0);
                assert_eq!(fac.ramified, divides, "f = {f}, p = {p}");
                if !fac.ramified {
                    assert_eq!(fac.degrees.iter().sum::<u32>() as usize, f.degree());
                }
            }
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&poly(&[-1, -1, 0, 1])).unwrap(), (1, 1));
        assert_eq!(signature(&poly(&[-1, -4, 0, 1])).unwrap(), (3, 0));
        assert_eq!(signature(&poly(&[1, 0, 1])).unwrap(), (0, 1));
    }
}
