//! Arithmetic in GF(p) and GF(p^m).
//!
//! Elements are stored as their base-`p` index: the coefficient vector
//! `(c_0, ..., c_{m-1})` of the polynomial representative packs to
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Residues of the prime field are
//! therefore the indices `0..p`. Multiplication goes through discrete
//! log tables built from a primitive element, so fields are limited to
//! [`TABLE_LIMIT`] elements.

mod cosets;
mod poly;
mod prime;

pub use cosets::{subgroup_cosets, CosetPartition};
pub use prime::{find_prime, is_prime};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const TABLE_LIMIT: u64 = 1 << 22;

/// An element of GF(p^m), identified by its packed base-`p` index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(p^m) together with its defining polynomial and log tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    order: u32,
    irreducible: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Build GF(p^m) using the first monic irreducible of degree `m` in
/// packed-index order (constant coefficient varying fastest).
pub fn make_field(p: u64, m: usize) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    let order = checked_order(p, m).ok_or(Error::FieldTooLarge { p, m })?;
    let irreducible = poly::first_irreducible(p, m);
    let generator = poly::find_generator(p, &irreducible, order)
        .ok_or_else(|| Error::Internal(format!("no primitive element in GF({p}^{m})")))?;

    let mut exp = Vec::with_capacity(order as usize - 1);
    let mut log = vec![0u32; order as usize];
    let mut cur = poly::unpack(1, p, m);
    for i in 0..order - 1 {
        let idx = poly::pack(&cur, p);
        if i > 0 && idx == 1 {
            return Err(Error::Internal("generator order too small".into()));
        }
        exp.push(idx as u32);
        log[idx as usize] = i;
        cur = poly::mul_mod(&cur, &generator, &irreducible, p);
    }
    Ok(FieldSpec {
        p,
        m,
        order,
        irreducible,
        exp,
        log,
    })
}

fn checked_order(p: u64, m: usize) -> Option<u32> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p)?;
        if q > TABLE_LIMIT {
            return None;
        }
    }
    Some(q as u32)
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic defining polynomial, coefficients low to high (length `m + 1`).
    pub fn irreducible(&self) -> &[u64] {
        &self.irreducible
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index))
        } else {
            Err(Error::BadParameters(format!(
                "index {index} outside field of order {}",
                self.order
            )))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadParameters(format!(
                "expected {} coefficients in [0, {})",
                self.m, self.p
            )));
        }
        Ok(FieldElement(poly::pack(coeffs, self.p) as u32))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        poly::unpack(x.0 as u64, self.p, self.m)
    }

    /// Embed a residue of GF(p).
    pub fn from_base(&self, residue: u64) -> FieldElement {
        FieldElement((residue % self.p) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    fn digitwise(&self, a: FieldElement, b: FieldElement, f: impl Fn(u64, u64) -> u64) -> FieldElement {
        let (mut a, mut b) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let group = self.order as u64 - 1;
        let l = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % group;
        FieldElement(self.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order - 1;
        let l = (group - self.log[a.0 as usize]) % group;
        Ok(FieldElement(self.exp[l as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The norm down to GF(p): the product of the Frobenius conjugates
    /// `x * x^p * ... * x^{p^{m-1}}`, returned as a residue.
    pub fn norm(&self, x: FieldElement) -> Result<u64> {
        let mut conj = x;
        let mut acc = x;
        for _ in 1..self.m {
            conj = self.pow(conj, self.p);
            acc = self.mul(acc, conj);
        }
        if (acc.0 as u64) < self.p {
            Ok(acc.0 as u64)
        } else {
            Err(Error::Internal(format!(
                "norm of {x:?} has nonzero higher coefficients: {:?}",
                self.coeffs(acc)
            )))
        }
    }

    /// Norms of every element, indexed by packed element index.
    pub fn norm_table(&self) -> Result<Vec<u32>> {
        self.elements()
            .map(|x| self.norm(x).map(|v| v as u32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_degree_one() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.irreducible(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf9_uses_x2_plus_1() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.irreducible(), &[1, 0, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.coeffs(f.mul(x, x)), vec![2, 0]);
    }

    #[test]
    fn gf49_polynomial_is_first_rootless_quadratic() {
        // oracle: enumerate monic quadratics in packed order, keep the first without a root
        let p = 7u64;
        let expected = (0..p * p)
            .map(|i| [i % p, i / p])
            .find(|c| (0..p).all(|a| (c[0] + c[1] * a + a * a) % p != 0))
            .unwrap();
        let f = make_field(7, 2).unwrap();
        assert_eq!(f.irreducible(), &[expected[0], expected[1], 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(6, 2).unwrap_err(), Error::NotPrime(6));
        assert_eq!(make_field(5, 0).unwrap_err(), Error::DegreeZero);
        assert!(matches!(make_field(2, 40), Err(Error::FieldTooLarge { .. })));
        let f = make_field(5, 2).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf2_20_builds() {
        let f = make_field(2, 20).unwrap();
        assert_eq!(f.order(), 1 << 20);
        let x = f.element(12345).unwrap();
        assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
    }

    #[test]
    fn inverse_involution_and_identity() {
        for (p, m) in [(2, 3), (3, 3), (5, 2), (7, 1), (2, 5)] {
            let f = make_field(p, m).unwrap();
            for x in f.elements() {
                assert_eq!(f.mul(FieldElement::ONE, x), x);
                assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.inv(f.inv(x).unwrap()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small() {
        for (p, m) in [(2, 2), (3, 2), (2, 3), (5, 1), (5, 2)] {
            let f = make_field(p, m).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_mul_matches_polynomial_mul() {
        for (p, m) in [(3, 3), (2, 6), (7, 2), (5, 3)] {
            let f = make_field(p, m).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    let direct = poly::mul_mod(&f.coeffs(a), &f.coeffs(b), f.irreducible(), p);
                    assert_eq!(f.coeffs(f.mul(a, b)), direct);
                }
            }
        }
    }

    #[test]
    fn norm_matches_power_formula() {
        for (p, m) in [(3, 2), (5, 2), (2, 4), (3, 3), (7, 2)] {
            let f = make_field(p, m).unwrap();
            let e = (f.order() as u64 - 1) / (p - 1);
            for x in f.elements() {
                let n = f.norm(x).unwrap();
                assert_eq!(f.from_base(n), f.pow(x, e));
            }
        }
    }

    #[test]
    fn norm_basics_and_fibers() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.norm(FieldElement::ZERO), Ok(0));
        assert_eq!(f.norm(FieldElement::ONE), Ok(1));
        let table = f.norm_table().unwrap();
        for b in 1..3 {
            assert_eq!(table.iter().filter(|&&v| v == b).count(), 4);
        }
    }

    #[test]
    fn norm_multiplicative_and_fibers_exhaustive() {
        // every field with p^m <= 2^10 and m >= 1 over small primes
        for (p, m) in [(2, 10), (3, 6), (5, 4), (7, 3), (11, 2), (31, 2), (13, 1)] {
            let f = make_field(p, m).unwrap();
            let norms = f.norm_table().unwrap();
            let fiber = (f.order() as usize - 1) / (p as usize - 1);
            for b in 1..p as u32 {
                assert_eq!(norms.iter().filter(|&&v| v == b).count(), fiber);
            }
            assert_eq!(norms.iter().filter(|&&v| v == 0).count(), 1);
            for x in f.elements() {
                for y in f.elements() {
                    let lhs = norms[f.mul(x, y).index() as usize] as u64;
                    let rhs = norms[x.index() as usize] as u64 * norms[y.index() as usize] as u64 % p;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
