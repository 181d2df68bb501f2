//! Real-root counting by Sturm sequences in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = r.last().unwrap() / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &coef * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// The Sturm chain `f, f', -rem(f, f'), ...`.
pub fn sturm_chain(coeffs: &[i64]) -> Vec<QPoly> {
    let to_q = |c: &[i64]| -> QPoly {
        let mut v: QPoly = c
            .iter()
            .map(|&a| BigRational::from_integer(BigInt::from(a)))
            .collect();
        trim(&mut v);
        v
    };
    let f = to_q(coeffs);
    let df: Vec<i64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as i64)
        .collect();
    let mut chain = vec![f, to_q(&df)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let mut r = rem(&chain[n - 2], &chain[n - 1]);
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a squarefree integer polynomial.
pub fn real_root_count(coeffs: &[i64]) -> Result<usize> {
    let chain = sturm_chain(coeffs);
    if chain.last().is_none_or(|g| g.len() > 1) {
        return Err(Error::NotSquarefree);
    }
    let lead_sign = |p: &QPoly| -> i8 {
        if p.last().unwrap().is_positive() {
            1
        } else {
            -1
        }
    };
    let at_pos_inf = chain.iter().map(lead_sign);
    let at_neg_inf = chain.iter().map(|p| {
        let s = lead_sign(p);
        if (p.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    });
    Ok(sign_changes(at_neg_inf) - sign_changes(at_pos_inf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(real_root_count(&[-1, -1, 0, 1]).unwrap(), 1);
        assert_eq!(real_root_count(&[-1, -4, 0, 1]).unwrap(), 3);
        assert_eq!(real_root_count(&[1, 0, 1]).unwrap(), 0);
        assert_eq!(real_root_count(&[-6, 11, -6, 1]).unwrap(), 3);
        assert_eq!(real_root_count(&[-2, 0, 0, 0, 1]).unwrap(), 2);
    }

    #[test]
    fn rejects_repeated_roots() {
        // (x - 1)^2 (x + 2)
        assert_eq!(real_root_count(&[2, -3, 0, 1]), Err(Error::NotSquarefree));
    }
}
