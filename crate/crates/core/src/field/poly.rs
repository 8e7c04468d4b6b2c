//! Dense polynomials over GF(p), coefficients low to high.

use super::prime::prime_factors;

pub(crate) fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(crate) fn unpack(mut index: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(index % p);
        index /= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `f` (both low to high).
fn rem_monic(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let deg = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in f[..deg].iter().enumerate() {
                let sub = lead * c % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r.resize(deg, 0);
    r
}

/// Product of two degree-`< m` residues modulo the monic degree-`m` `f`.
pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_monic(&prod, f, p)
}

fn pow_poly(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut acc = unpack(1, p, m);
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|a| f.iter().rev().fold(0, |acc, &c| (acc * a + c) % p) == 0)
}

/// True when some monic polynomial of degree `2..=m/2` divides `f`.
fn has_small_factor(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for d in 2..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = unpack(idx, p, d);
            g.push(1);
            if rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    match m {
        0 => false,
        1 => true,
        2 | 3 => !has_root(f, p),
        _ => !has_root(f, p) && !has_small_factor(f, p),
    }
}

/// First monic irreducible of degree `m`, scanning lower coefficients by
/// packed index.
pub(crate) fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    (0..count)
        .map(|idx| {
            let mut f = unpack(idx, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// Smallest-index element of multiplicative order `order - 1`.
pub(crate) fn find_generator(p: u64, f: &[u64], order: u32) -> Option<Vec<u64>> {
    let m = f.len() - 1;
    let group = order as u64 - 1;
    let factors = prime_factors(group);
    let one = unpack(1, p, m);
    (1..order as u64).map(|idx| unpack(idx, p, m)).find(|g| {
        factors
            .iter()
            .all(|&q| pow_poly(g, group / q, f, p) != one)
    })
}
