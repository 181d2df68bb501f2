use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A partition of `n`, stored with parts in descending order. As a Frobenius
/// cycle type it records the degrees of the irreducible factors mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<u32>);

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadPartition {
                expected: parts.iter().sum(),
                parts,
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    /// Checked constructor requiring `parts` to partition `n`.
    pub fn of(n: u32, parts: Vec<u32>) -> Result<Self> {
        if parts.iter().sum::<u32>() != n {
            return Err(Error::BadPartition { parts, expected: n });
        }
        Self::new(parts)
    }

    pub fn identity(n: u32) -> Self {
        CycleType(vec![1; n as usize])
    }

    pub fn full_cycle(n: u32) -> Self {
        CycleType(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The integer partitioned, i.e. the symmetric group degree.
    pub fn n(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fixed_points(&self) -> u32 {
        self.0.iter().filter(|&&d| d == 1).count() as u32
    }

    /// Number of permutations in `S_n` with this cycle type:
    /// `n! / prod_k (k^{m_k} m_k!)`.
    pub fn class_size(&self) -> u64 {
        let n = self.n() as u64;
        let mut size: u64 = (1..=n).product();
        let mut i = 0;
        while i < self.0.len() {
            let k = self.0[i] as u64;
            let mut m = 0u64;
            while i < self.0.len() && self.0[i] as u64 == k {
                m += 1;
                i += 1;
            }
            size /= k.pow(m as u32) * (1..=m).product::<u64>();
        }
        size
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Every partition of `n` (`1 <= n <= 12`) in reverse lexicographic order,
/// so the full cycle comes first and the identity last.
pub fn partitions(n: u32) -> Result<Vec<CycleType>> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "partitions of n = {n}; need 1 <= n <= 12"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<CycleType>) {
    if remaining == 0 {
        out.push(CycleType(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let p3: Vec<_> = partitions(3)
            .unwrap()
            .iter()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(p3, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert_eq!(partitions(5).unwrap().len(), 7);
        assert_eq!(partitions(12).unwrap().len(), 77);
        assert!(partitions(0).is_err());
        assert!(partitions(13).is_err());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=7u32 {
            let total: u64 = partitions(n).unwrap().iter().map(|c| c.class_size()).sum();
            assert_eq!(total, (1..=n as u64).product::<u64>());
        }
        assert_eq!(CycleType::of(4, vec![2, 2]).unwrap().class_size(), 3);
        assert_eq!(CycleType::of(5, vec![3, 2]).unwrap().class_size(), 20);
    }

    #[test]
    fn canonical_ordering_and_validation() {
        let c = CycleType::new(vec![1, 2, 1]).unwrap();
        assert_eq!(c.parts(), &[2, 1, 1]);
        assert_eq!(c.to_string(), "[2,1,1]");
        assert!(CycleType::of(4, vec![2, 1]).is_err());
        assert!(CycleType::new(vec![]).is_err());
    }
}
