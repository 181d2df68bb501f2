//! Segmented, odd-only sieve of Eratosthenes.

const SEGMENT_BYTES: usize = 1 << 15;

/// All primes `p <= y`, ascending. Empty when `y < 2`.
pub fn primes_up_to(y: f64) -> Vec<u64> {
    if !(y >= 2.0) {
        return Vec::new();
    }
    primes_through(y.floor() as u64)
}

/// All primes `p < x`, ascending.
pub fn primes_below(x: f64) -> Vec<u64> {
    if !(x > 2.0) {
        return Vec::new();
    }
    let limit = x.ceil() as u64 - 1;
    primes_through(limit)
}

/// All primes in `(lo, hi)`, both ends exclusive.
pub fn primes_between(lo: f64, hi: f64) -> Vec<u64> {
    let mut ps = primes_below(hi);
    ps.retain(|&p| (p as f64) > lo);
    ps
}

/// All primes `p <= n`.
pub fn primes_through(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut out = vec![2];
    if n < 3 {
        return out;
    }
    let root = isqrt(n);
    let base = small_odd_primes(root);

    // Segment index i stands for the odd number 2i + 1.
    let last = (n - 1) / 2;
    let mut seg = vec![true; SEGMENT_BYTES];
    let mut lo = 1u64;
    while lo <= last {
        let hi = (lo + SEGMENT_BYTES as u64 - 1).min(last);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &p in &base {
            let sq = p * p;
            if sq > 2 * hi + 1 {
                break;
            }
            // first odd multiple of p that is >= max(p^2, 2lo+1)
            let start_val = sq.max((2 * lo + 1).div_ceil(p) * p);
            let start_val = if start_val % 2 == 0 {
                start_val + p
            } else {
                start_val
            };
            let mut j = (start_val - 1) / 2;
            while j <= hi {
                seg[(j - lo) as usize] = false;
                j += p;
            }
        }
        out.extend(
            seg[..len]
                .iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(k, _)| 2 * (lo + k as u64) + 1),
        );
        lo = hi + 1;
    }
    out
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 17;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization into `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}
