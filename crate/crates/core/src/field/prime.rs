//! Primality testing and prime search in arithmetic progressions.

use crate::error::{Error, Result};

// Witnesses 2..=37 make Miller-Rabin deterministic for every n < 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `p` in `[lo, hi]` with `p = 1 (mod h)`.
pub fn find_prime(h: u64, lo: u64, hi: u64) -> Result<u64> {
    if h == 0 {
        return Err(Error::BadParameters("h must be positive".into()));
    }
    if lo > hi {
        return Err(Error::BadParameters(format!("empty range [{lo}, {hi}]")));
    }
    // first candidate >= max(lo, 2) congruent to 1 mod h
    let start = lo.max(2);
    let rem = (start - 1) % h;
    let mut p = if rem == 0 { start } else { start + (h - rem) };
    while p <= hi {
        if is_prime(p) {
            return Ok(p);
        }
        p = match p.checked_add(h) {
            Some(next) => next,
            None => break,
        };
    }
    Err(Error::NoPrimeInRange { h, lo, hi })
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn large_known_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(18_446_744_073_709_551_615));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(3, 2, 10), Ok(7));
        assert_eq!(find_prime(1, 2, 10), Ok(2));
        assert_eq!(find_prime(4, 6, 20), Ok(13));
        assert_eq!(
            find_prime(4, 14, 16),
            Err(Error::NoPrimeInRange { h: 4, lo: 14, hi: 16 })
        );
        assert!(find_prime(0, 2, 10).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(48), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
    }
}
