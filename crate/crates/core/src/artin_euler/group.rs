use serde::Serialize;

use crate::prime_poly::{partitions, CycleType};
use crate::{Error, Result};

/// Conjugacy classes of `S_n`, `n` in `{3, 4, 5}`, with their sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StandardRepGroup {
    pub n: u32,
    pub classes: Vec<(CycleType, u64)>,
    pub order: u64,
}

impl StandardRepGroup {
    pub fn new(n: u32) -> Result<Self> {
        if !(3..=5).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        Ok(Self::build(n))
    }

    /// Same as [`new`](Self::new) but also admits `n = 2`, where the
    /// standard representation is the sign character.
    pub(crate) fn build(n: u32) -> Self {
        let classes: Vec<(CycleType, u64)> = partitions(n)
            .expect("n within partition range")
            .into_iter()
            .map(|c| {
                let size = c.class_size();
                (c, size)
            })
            .collect();
        StandardRepGroup {
            n,
            classes,
            order: (1..=n as u64).product(),
        }
    }

    pub fn d(&self) -> u32 {
        self.n - 1
    }

    pub fn class_index(&self, c: &CycleType) -> Option<usize> {
        self.classes.iter().position(|(k, _)| k == c)
    }
}

/// Character of the standard representation on a cycle type: fixed points
/// minus one.
pub fn a_rho(c: &CycleType) -> Result<i32> {
    let n = c.n();
    if !(3..=5).contains(&n) {
        return Err(Error::BadPartition {
            parts: c.parts().to_vec(),
            expected: n.clamp(3, 5),
        });
    }
    Ok(trace_on_degrees(c.parts(), 1))
}

/// `a(p^k) = sum_i alpha_i^k` for the roots attached to a factor-degree
/// multiset: each degree `d_j` contributes the `d_j`-th roots of unity, and
/// the trivial eigenvalue 1 is removed. Works for ramified (partial) degree
/// lists too.
pub fn trace_on_degrees(degrees: &[u32], k: u32) -> i32 {
    degrees
        .iter()
        .filter(|&&d| k.is_multiple_of(d))
        .map(|&d| d as i32)
        .sum::<i32>()
        - 1
}

/// `sum_C |C| a_rho(C)`, which vanishes by orthogonality against the
/// trivial character.
pub fn orthogonality_check(n: u32) -> Result<i64> {
    let g = StandardRepGroup::new(n)?;
    Ok(g.classes
        .iter()
        .map(|(c, size)| *size as i64 * trace_on_degrees(c.parts(), 1) as i64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(n: u32, parts: &[u32]) -> CycleType {
        CycleType::of(n, parts.to_vec()).unwrap()
    }

    #[test]
    fn character_values() {
        assert_eq!(a_rho(&ct(4, &[1, 1, 1, 1])).unwrap(), 3);
        assert_eq!(a_rho(&ct(5, &[5])).unwrap(), -1);
        assert_eq!(a_rho(&ct(4, &[2, 2])).unwrap(), -1);
        assert_eq!(a_rho(&ct(4, &[2, 1, 1])).unwrap(), 1);
        assert!(a_rho(&ct(2, &[1, 1])).is_err());
        assert!(a_rho(&ct(6, &[6])).is_err());
    }

    #[test]
    fn prime_power_traces_of_a_three_cycle() {
        assert_eq!(trace_on_degrees(&[3], 1), -1);
        assert_eq!(trace_on_degrees(&[3], 2), -1);
        assert_eq!(trace_on_degrees(&[3], 3), 2);
        for k in 1..20 {
            assert_eq!(trace_on_degrees(&[1, 1, 1, 1], k), 3);
        }
    }

    #[test]
    fn class_sizes() {
        let sizes = |n| -> Vec<u64> {
            let mut v: Vec<u64> = StandardRepGroup::new(n)
                .unwrap()
                .classes
                .iter()
                .map(|c| c.1)
                .collect();
            v.sort();
            v
        };
        assert_eq!(sizes(3), vec![1, 2, 3]);
        assert_eq!(sizes(4), vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes(5), vec![1, 10, 15, 20, 20, 24, 30]);
    }

    #[test]
    fn orthogonality() {
        for n in 3..=5 {
            assert_eq!(orthogonality_check(n).unwrap(), 0);
        }
        assert!(orthogonality_check(6).is_err());
    }
}
