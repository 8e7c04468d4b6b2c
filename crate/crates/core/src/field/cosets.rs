use super::prime::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// The subgroup `H` of order `h` in GF(p)^x and its cosets `S_1, ..., S_m`,
/// ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    p: u64,
    h: u64,
    subgroup: Vec<u64>,
    cosets: Vec<Vec<u64>>,
    class_of: Vec<u32>,
}

pub fn subgroup_cosets(p: u64, h: u64) -> Result<CosetPartition> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if h == 0 || !(p - 1).is_multiple_of(h) {
        return Err(Error::NotDivisor { h, n: p - 1 });
    }
    let e = (p - 1) / h;
    let mut subgroup: Vec<u64> = (1..p).map(|x| pow_mod(x, e, p)).collect();
    subgroup.sort_unstable();
    subgroup.dedup();
    debug_assert_eq!(subgroup.len() as u64, h);

    let mut class_of = vec![0u32; p as usize];
    let mut cosets = Vec::with_capacity(e as usize);
    for a in 1..p {
        if class_of[a as usize] != 0 {
            continue;
        }
        let label = cosets.len() as u32 + 1;
        let mut coset: Vec<u64> = subgroup.iter().map(|&g| a * g % p).collect();
        coset.sort_unstable();
        for &x in &coset {
            class_of[x as usize] = label;
        }
        cosets.push(coset);
    }
    Ok(CosetPartition {
        p,
        h,
        subgroup,
        cosets,
        class_of,
    })
}

impl CosetPartition {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// Number of cosets, `(p - 1) / h`.
    pub fn m(&self) -> usize {
        self.cosets.len()
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    /// 1-based coset label of a nonzero residue; 0 for residue 0.
    pub fn class(&self, residue: u64) -> usize {
        self.class_of[(residue % self.p) as usize] as usize
    }
}
