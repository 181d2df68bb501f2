//! Dense univariate polynomials over the prime field `F_p` and their
//! factorization: squarefree decomposition, distinct-degree splitting and a
//! seeded Cantor-Zassenhaus equal-degree split.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial over `F_p`, coefficients lowest degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfPoly {
    p: u64,
    c: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl GfPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        let mut out = GfPoly { p, c };
        out.trim();
        out
    }

    /// Reduce an integer polynomial mod `p`.
    pub fn from_int(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i128;
        let c = coeffs
            .iter()
            .map(|&a| (a as i128).rem_euclid(pi) as u64)
            .collect();
        GfPoly::new(p, c)
    }

    pub fn one(p: u64) -> Self {
        GfPoly { p, c: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        GfPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        GfPoly::new(
            self.p,
            self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        GfPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        GfPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return GfPoly::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        GfPoly::new(self.p, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (GfPoly::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        let dl = d.c.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dl - 1], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(coef, b, p)) % p;
            }
        }
        (GfPoly::new(p, q), GfPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p))
            .collect();
        GfPoly::new(self.p, c)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = GfPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// For a polynomial in `x^p` (zero derivative), the polynomial `g` with
    /// `g^p = self`. Coefficients are fixed by Frobenius on `F_p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        GfPoly::new(self.p, c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` where
    /// the `g` are pairwise coprime, squarefree, and `self = prod g^m`.
    pub fn squarefree_decomposition(&self) -> Vec<(GfPoly, u32)> {
        let mut out = Vec::new();
        self.sqf_into(1, &mut out);
        out
    }

    fn sqf_into(&self, scale: u32, out: &mut Vec<(GfPoly, u32)>) {
        let f = self.monic();
        if f.is_constant() {
            return;
        }
        let df = f.derivative();
        let (mut c, mut w) = if df.is_zero() {
            (f.clone(), GfPoly::one(f.p))
        } else {
            let c = f.gcd(&df);
            let w = f.div_rem(&c).0;
            (c, w)
        };
        let mut i = 1u32;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0.monic();
            if !fac.is_constant() {
                out.push((fac, i * scale));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_constant() {
            c.pth_root().sqf_into(scale * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(h, k)` where `h` is the product of all irreducible factors of
    /// degree `k`.
    pub fn distinct_degree(&self) -> Vec<(GfPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = GfPoly::x(p);
        let mut h = x.rem(&f);
        let mut k = 0usize;
        while f.deg() >= 2 * (k + 1) {
            k += 1;
            h = h.pow_mod(p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_constant() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, k));
            }
        }
        if !f.is_constant() {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Split a monic squarefree polynomial all of whose irreducible factors
    /// have degree `k` into those factors.
    pub fn equal_degree(&self, k: usize, rng: &mut ChaCha8Rng) -> Vec<GfPoly> {
        let f = self.monic();
        let n = f.deg();
        if n == k {
            return vec![f];
        }
        let p = self.p;
        loop {
            let a = GfPoly::new(p, (0..n).map(|_| rng.random_range(0..p)).collect());
            if a.is_constant() {
                continue;
            }
            let g = f.gcd(&a);
            let candidate = if !g.is_constant() {
                g
            } else if p == 2 {
                // absolute trace a + a^2 + ... + a^{2^{k-1}}
                let mut t = a.rem(&f);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mul_mod(&t, &f);
                    acc = acc.add(&t);
                }
                f.gcd(&acc)
            } else {
                // a^{(p^k - 1)/2} = (a^{1 + p + ... + p^{k-1}})^{(p-1)/2}
                let mut t = a.rem(&f);
                let mut norm = t.clone();
                for _ in 1..k {
                    t = t.pow_mod(p as u128, &f);
                    norm = norm.mul_mod(&t, &f);
                }
                let b = norm.pow_mod(((p - 1) / 2) as u128, &f);
                f.gcd(&b.sub(&GfPoly::one(p)))
            };
            let d = candidate.deg();
            if d > 0 && d < n {
                let rest = f.div_rem(&candidate).0;
                let mut parts = candidate.equal_degree(k, rng);
                parts.extend(rest.equal_degree(k, rng));
                return parts;
            }
        }
    }
}

/// Full factorization of a monic polynomial mod `p` into monic irreducibles
/// with multiplicities. The equal-degree split is driven by a generator
/// seeded from `(f, p)`, so repeated calls return identical output.
pub fn factor_mod_p(coeffs: &[i64], p: u64) -> Vec<(GfPoly, u32)> {
    let f = GfPoly::from_int(p, coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(coeffs, p));
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for (h, k) in g.distinct_degree() {
            for irr in h.equal_degree(k, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| (b.0.deg(), &b.0.c).cmp(&(a.0.deg(), &a.0.c)));
    out
}

fn split_seed(coeffs: &[i64], p: u64) -> u64 {
    // FNV-1a over the coefficient bytes and p
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in coeffs.iter().map(|&c| c as u64).chain(std::iter::once(p)) {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(p: u64, factors: &[(GfPoly, u32)]) -> GfPoly {
        let mut acc = GfPoly::one(p);
        for (g, m) in factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn cubic_mod_23_has_a_double_root() {
        let f = factor_mod_p(&[-1, -1, 0, 1], 23);
        // (x - 3)(x - 10)^2
        assert_eq!(f.len(), 2);
        assert!(f.contains(&(GfPoly::new(23, vec![20, 1]), 1)));
        assert!(f.contains(&(GfPoly::new(23, vec![13, 1]), 2)));
    }

    #[test]
    fn roundtrip_over_small_primes() {
        let polys: [&[i64]; 5] = [
            &[-1, -1, 0, 1],
            &[1, 0, 1],
            &[0, 0, 0, 0, 0, 1],
            &[3, -2, 5, 0, 7, 1],
            &[1, 1, 1, 1, 1, 1, 1],
        ];
        for f in polys {
            for p in [2u64, 3, 5, 7, 11, 13, 101, 7919] {
                let fac = factor_mod_p(f, p);
                assert_eq!(
                    expand(p, &fac),
                    GfPoly::from_int(p, f),
                    "f = {f:?}, p = {p}"
                );
                for (g, _) in &fac {
                    // each factor is irreducible: exactly one DDF block of full degree
                    let d = g.distinct_degree();
                    assert_eq!(d.len(), 1);
                    assert_eq!(d[0].1, g.deg());
                }
            }
        }
    }

    #[test]
    fn pth_power_inputs() {
        // x^4 + 1 = (x + 1)^4 over F_2, and (x^3 + x + 1)^3 over F_3
        let f = factor_mod_p(&[1, 0, 0, 0, 1], 2);
        assert_eq!(f, vec![(GfPoly::new(2, vec![1, 1]), 4)]);
        // x^6 + 1 = (x^2 + 1)^3 over F_3
        let f = factor_mod_p(&[1, 0, 0, 0, 0, 0, 1], 3);
        assert_eq!(f, vec![(GfPoly::new(3, vec![1, 0, 1]), 3)]);
    }
}
