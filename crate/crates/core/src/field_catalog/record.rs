use serde::{Deserialize, Serialize};

use super::galois::GaloisEvidence;
use crate::prime_poly::{factor_degrees_mod_p, sieve::factorize, signature, IntPolynomial};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupTag {
    /// The catalog says the Galois closure has group `S_n`.
    SnVerifiedInput,
    /// Cycle-type sweep found generators of `S_n`.
    SnHeuristic,
    Unknown,
}

/// A number field given by a defining polynomial, as scanned in families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumberFieldRecord {
    pub poly: IntPolynomial,
    pub disc: i128,
    pub disc_is_field_disc: bool,
    pub signature: (usize, usize),
    pub group_tag: GroupTag,
    /// Free-form group column as read from, or written to, a catalog.
    pub group_label: String,
    pub index_warning_primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_evidence: Option<GaloisEvidence>,
}

impl NumberFieldRecord {
    /// Classify a polynomial on its own: polynomial discriminant, Sturm
    /// signature, no group information.
    pub fn from_polynomial(poly: IntPolynomial) -> Result<Self> {
        let disc = poly_disc_i128(&poly)?;
        if disc == 0 {
            return Err(Error::InvalidPolynomial(format!(
                "{poly} has zero discriminant"
            )));
        }
        let signature = signature(&poly)?;
        Ok(NumberFieldRecord {
            index_warning_primes: square_divisor_primes(disc),
            poly,
            disc,
            disc_is_field_disc: false,
            signature,
            group_tag: GroupTag::Unknown,
            group_label: "unknown".to_string(),
            galois_evidence: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Dimension of the standard representation, `deg - 1`.
    pub fn d(&self) -> u32 {
        self.degree() as u32 - 1
    }

    pub fn abs_disc(&self) -> f64 {
        self.disc.unsigned_abs() as f64
    }
}

pub(crate) fn poly_disc_i128(poly: &IntPolynomial) -> Result<i128> {
    let d = crate::prime_poly::poly_discriminant(poly)?;
    i128::try_from(d)
        .map_err(|_| Error::OutOfRange(format!("discriminant of {poly} exceeds 128 bits")))
}

/// Primes `p` with `p^2 | n`: the only primes at which a polynomial
/// discriminant can differ from the field discriminant.
pub(crate) fn square_divisor_primes(n: i128) -> Vec<u64> {
    factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e >= 2)
        .map(|(p, _)| p)
        .collect()
}

/// Factor degrees at `p`, separated into the Frobenius cycle type or the
/// ramified marker with the degrees of the squarefree part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrobeniusClass {
    Unramified(crate::prime_poly::CycleType),
    Ramified { surviving: Vec<u32> },
}

impl FrobeniusClass {
    pub fn degrees(&self) -> &[u32] {
        match self {
            FrobeniusClass::Unramified(c) => c.parts(),
            FrobeniusClass::Ramified { surviving } => surviving,
        }
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, FrobeniusClass::Ramified { .. })
    }

    /// `a_rho(p)`: degree-one factors minus one.
    pub fn trace(&self) -> i32 {
        crate::artin_euler::trace_on_degrees(self.degrees(), 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusObservation {
    pub p: u64,
    pub class: FrobeniusClass,
    /// `p` may divide the index `[O_K : Z[theta]]`.
    pub index_warning: bool,
}

pub fn frobenius_class(field: &NumberFieldRecord, p: u64) -> Result<FrobeniusObservation> {
    let fac = factor_degrees_mod_p(&field.poly, p)?;
    let class = match fac.cycle_type() {
        Some(c) => FrobeniusClass::Unramified(c),
        None => FrobeniusClass::Ramified {
            surviving: fac.degrees,
        },
    };
    let index_warning = class.is_ramified() && field.index_warning_primes.contains(&p);
    Ok(FrobeniusObservation {
        p,
        class,
        index_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_poly::CycleType;

    fn field(c: &[i64]) -> NumberFieldRecord {
        NumberFieldRecord::from_polynomial(IntPolynomial::new(c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let f = field(&[-1, -1, 0, 1]);
        assert_eq!(
            frobenius_class(&f, 2).unwrap().class,
            FrobeniusClass::Unramified(CycleType::full_cycle(3))
        );
        let at23 = frobenius_class(&f, 23).unwrap();
        assert_eq!(
            at23.class,
            FrobeniusClass::Ramified {
                surviving: vec![1, 1]
            }
        );
        assert!(!at23.index_warning);
        let g = field(&[1, 0, 1]);
        assert_eq!(
            frobenius_class(&g, 5).unwrap().class,
            FrobeniusClass::Unramified(CycleType::identity(2))
        );
    }

    #[test]
    fn index_warnings_follow_square_factors() {
        // x^3 - 3x - 1: discriminant 81 = 3^4
        let f = field(&[-1, -3, 0, 1]);
        assert_eq!(f.index_warning_primes, vec![3]);
        assert!(frobenius_class(&f, 3).unwrap().index_warning);
        assert_eq!(square_divisor_primes(-23), Vec::<u64>::new());
        assert_eq!(square_divisor_primes(-4 * 27), vec![2, 3]);
    }

    #[test]
    fn rejects_zero_discriminant() {
        assert!(
            NumberFieldRecord::from_polynomial(IntPolynomial::new(vec![0, 0, 1]).unwrap()).is_err()
        );
    }
}
