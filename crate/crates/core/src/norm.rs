//! Edge-disjoint bipartite families from the field norm.
//!
//! Both sides are copies of GF(p^{s-1}) (vertex `i` is the element with
//! packed index `i`). The pair `(x, y)` gets color `i` when `N(x + y)` lies
//! in the `i`-th coset of the order-`h` subgroup of GF(p)^x, and color 0
//! (no edge) when `x + y = 0`.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{make_field, subgroup_cosets, CosetPartition, FieldElement, FieldSpec};

#[derive(Clone, Debug)]
pub struct NormProvenance {
    pub field: FieldSpec,
    pub cosets: CosetPartition,
}

/// `m` pairwise edge-disjoint bipartite graphs on `A x B`, stored as one
/// color per pair.
#[derive(Clone, Debug)]
pub struct EdgeColoredBipartiteFamily {
    side: usize,
    m: usize,
    s: usize,
    h: u64,
    p: u64,
    colors: Vec<u16>,
    provenance: Option<NormProvenance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

pub fn build_norm_partition(s: usize, h: u64, p: u64) -> Result<EdgeColoredBipartiteFamily> {
    if s < 2 {
        return Err(Error::BadParameters(format!("s = {s} must be at least 2")));
    }
    let field = make_field(p, s - 1)?;
    let cosets = subgroup_cosets(p, h)?;
    if cosets.m() > u16::MAX as usize {
        return Err(Error::BadParameters(format!("{} colors do not fit the color table", cosets.m())));
    }
    let norms = field.norm_table()?;
    let side = field.order() as usize;
    let mut colors = vec![0u16; side * side];
    for a in field.elements() {
        let row = a.index() as usize * side;
        for b in field.elements() {
            let sum = field.add(a, b);
            colors[row + b.index() as usize] = cosets.class(norms[sum.index() as usize] as u64) as u16;
        }
    }
    Ok(EdgeColoredBipartiteFamily {
        side,
        m: cosets.m(),
        s,
        h,
        p,
        colors,
        provenance: Some(NormProvenance { field, cosets }),
    })
}

impl EdgeColoredBipartiteFamily {
    /// A family from an explicit color table (row = A index, column = B index).
    pub fn from_colors(side: usize, m: usize, s: usize, h: u64, p: u64, colors: Vec<u16>) -> Result<Self> {
        if colors.len() != side * side {
            return Err(Error::BadParameters(format!(
                "color table has {} cells, expected {}",
                colors.len(),
                side * side
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c as usize > m) {
            return Err(Error::BadParameters(format!("color {c} exceeds m = {m}")));
        }
        Ok(EdgeColoredBipartiteFamily {
            side,
            m,
            s,
            h,
            p,
            colors,
            provenance: None,
        })
    }

    pub fn side_size(&self) -> usize {
        self.side
    }

    /// Number of graphs.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn provenance(&self) -> Option<&NormProvenance> {
        self.provenance.as_ref()
    }

    pub fn color(&self, a: u32, b: u32) -> usize {
        self.colors[a as usize * self.side + b as usize] as usize
    }

    /// Color of the pair `{x, y}` where `x` is on `side` and `y` opposite.
    pub fn color_from(&self, side: Side, x: u32, y: u32) -> usize {
        match side {
            Side::A => self.color(x, y),
            Side::B => self.color(y, x),
        }
    }

    pub fn union_edge_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c > 0).count()
    }

    /// Sizes of `G_1, ..., G_m`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.m];
        for &c in &self.colors {
            if c > 0 {
                out[c as usize - 1] += 1;
            }
        }
        out
    }

    /// `(a, b)` pairs of color `c`, lexicographic.
    pub fn pairs_of_color(&self, c: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.side {
            for b in 0..self.side {
                if self.colors[a * self.side + b] as usize == c {
                    out.push((a as u32, b as u32));
                }
            }
        }
        out
    }

    pub fn to_ebf(&self) -> String {
        let mut out = String::with_capacity(self.side * self.side * 2 + 32);
        writeln!(out, "ebf {} {} {} {} {}", self.side, self.m, self.s, self.h, self.p).unwrap();
        for row in self.colors.chunks(self.side.max(1)) {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{c}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_ebf(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "ebf" {
            return Err(Error::parse(ln, "expected `ebf <sideSize> <m> <s> <h> <p>`"));
        }
        let nums: Vec<u64> = toks[1..]
            .iter()
            .map(|t| t.parse::<u64>().map_err(|_| Error::parse(ln, format!("expected an integer, found {t:?}"))))
            .collect::<Result<_>>()?;
        let (side, m) = (nums[0] as usize, nums[1] as usize);
        if m > u16::MAX as usize {
            return Err(Error::parse(ln, "too many colors"));
        }
        let mut colors = Vec::with_capacity(side * side);
        let mut rows = 0;
        for (ln, line) in lines {
            if rows == side {
                return Err(Error::parse(ln, format!("more than {side} rows")));
            }
            let row: Vec<u16> = line
                .split_whitespace()
                .map(|t| match t.parse::<u16>() {
                    Ok(c) if c as usize <= m => Ok(c),
                    _ => Err(Error::parse(ln, format!("color {t:?} not in 0..={m}"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != side {
                return Err(Error::parse(ln, format!("row has {} entries, expected {side}", row.len())));
            }
            colors.extend(row);
            rows += 1;
        }
        if rows != side {
            return Err(Error::parse(text.lines().count().max(1), format!("expected {side} rows, found {rows}")));
        }
        Self::from_colors(side, m, nums[2] as usize, nums[3], nums[4], colors)
    }
}

/// An s-set on one side and the opposite-side vertices sharing one color with all of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub side: Side,
    pub set: Vec<u32>,
    /// Number of opposite vertices `y` with a single color `i` on every `x_j y`.
    pub count: usize,
    /// Common color of the smallest such `y` (0 when `count == 0`).
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub bound: usize,
    /// Smallest failing witness in (side, lexicographic set) order.
    pub failure: Option<CoverWitness>,
    /// A witness with the largest count, earliest on ties.
    pub worst: Option<CoverWitness>,
    pub sets_checked: u64,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Default)]
struct Partial {
    failure: Option<CoverWitness>,
    worst: Option<CoverWitness>,
    sets: u64,
}

impl Partial {
    fn absorb(&mut self, later: Partial) {
        if self.failure.is_none() {
            self.failure = later.failure;
        }
        if let Some(w) = later.worst {
            if self.worst.as_ref().is_none_or(|cur| w.count > cur.count) {
                self.worst = Some(w);
            }
        }
        self.sets += later.sets;
    }
}

/// Check that every s-set of distinct same-side vertices has at most `bound`
/// opposite vertices joined to all of it in a single color.
///
/// Sets mixing both sides are skipped: in a bipartite graph a common
/// neighbor forces every `x_j` onto the same side, so their count is 0.
pub fn verify_cover_property(f: &EdgeColoredBipartiteFamily, s: usize, bound: usize) -> CoverReport {
    let mut total = Partial::default();
    if s >= 1 {
        for side in [Side::A, Side::B] {
            total.absorb(cover_side(f, side, s, bound));
        }
    }
    CoverReport {
        bound,
        failure: total.failure,
        worst: total.worst,
        sets_checked: total.sets,
    }
}

fn cover_side(f: &EdgeColoredBipartiteFamily, side: Side, s: usize, bound: usize) -> Partial {
    let n = f.side;
    let nbrs: Vec<FixedBitSet> = (0..n as u32)
        .map(|x| {
            let mut bits = FixedBitSet::with_capacity(n);
            bits.extend((0..n as u32).filter(|&y| f.color_from(side, x, y) > 0).map(|y| y as usize));
            bits
        })
        .collect();
    let first_vertices: Vec<u32> = (0..n as u32).filter(|&x| x as usize + s <= n).collect();
    let parts: Vec<Partial> = first_vertices
        .par_iter()
        .map(|&x0| {
            let mut acc = Partial::default();
            let mut set = vec![x0];
            descend(f, side, s, bound, &nbrs, &mut set, nbrs[x0 as usize].clone(), &mut acc);
            acc
        })
        .collect();
    let mut out = Partial::default();
    for p in parts {
        out.absorb(p);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn descend(
    f: &EdgeColoredBipartiteFamily,
    side: Side,
    s: usize,
    bound: usize,
    nbrs: &[FixedBitSet],
    set: &mut Vec<u32>,
    common: FixedBitSet,
    acc: &mut Partial,
) {
    if set.len() == s {
        acc.sets += 1;
        let mut count = 0;
        let mut color = 0;
        for y in common.ones() {
            let c = f.color_from(side, set[0], y as u32);
            if set[1..].iter().all(|&x| f.color_from(side, x, y as u32) == c) {
                if count == 0 {
                    color = c;
                }
                count += 1;
            }
        }
        let witness = CoverWitness {
            side,
            set: set.clone(),
            count,
            color,
        };
        if count > bound && acc.failure.is_none() {
            acc.failure = Some(witness.clone());
        }
        if acc.worst.as_ref().is_none_or(|w| count > w.count) {
            acc.worst = Some(witness);
        }
        return;
    }
    let last = *set.last().unwrap() as usize;
    let n = f.side;
    for x in last + 1..=n - (s - set.len()) {
        let mut next = common.clone();
        next.intersect_with(&nbrs[x]);
        set.push(x as u32);
        descend(f, side, s, bound, nbrs, set, next, acc);
        set.pop();
    }
}

/// Number of `z` with `N(z + a_j) = b_j` for every `j`, by enumeration.
pub fn krs_solution_count(field: &FieldSpec, a: &[FieldElement], b: &[u64]) -> Result<usize> {
    if a.len() != b.len() || a.len() != field.degree() {
        return Err(Error::BadParameters(format!(
            "expected {} shifts and {} targets",
            field.degree(),
            field.degree()
        )));
    }
    if let Some(&bj) = b.iter().find(|&&bj| bj == 0 || bj >= field.p()) {
        return Err(Error::BadParameters(format!("target {bj} is not a nonzero residue")));
    }
    for (i, x) in a.iter().enumerate() {
        if a[..i].contains(x) {
            return Err(Error::DuplicateShift);
        }
    }
    let mut count = 0;
    for z in field.elements() {
        let mut ok = true;
        for (&aj, &bj) in a.iter().zip(b) {
            if field.norm(field.add(z, aj))? != bj {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrsSummary {
    pub systems: u64,
    pub max_count: usize,
    /// First system attaining the maximum: shift indices and targets.
    pub argmax: Option<(Vec<u32>, Vec<u64>)>,
}

/// Run [`krs_solution_count`] on every system with pairwise distinct shifts
/// (as ordered tuples) and nonzero targets.
pub fn krs_exhaustive(field: &FieldSpec) -> Result<KrsSummary> {
    let m = field.degree();
    let q = field.order();
    let p = field.p();
    let mut summary = KrsSummary {
        systems: 0,
        max_count: 0,
        argmax: None,
    };
    let mut shifts = vec![0u32; m];
    let mut targets = vec![1u64; m];
    loop {
        if shifts.iter().enumerate().all(|(i, x)| !shifts[..i].contains(x)) {
            let a: Vec<FieldElement> = shifts.iter().map(|&i| field.element(i)).collect::<Result<_>>()?;
            targets.iter_mut().for_each(|t| *t = 1);
            loop {
                let c = krs_solution_count(field, &a, &targets)?;
                summary.systems += 1;
                if c > summary.max_count || summary.argmax.is_none() {
                    summary.max_count = c.max(summary.max_count);
                    summary.argmax = Some((shifts.clone(), targets.clone()));
                }
                if !odometer(&mut targets, 1, p) {
                    break;
                }
            }
        }
        let mut wide: Vec<u64> = shifts.iter().map(|&x| x as u64).collect();
        if !odometer(&mut wide, 0, q as u64) {
            break;
        }
        shifts = wide.iter().map(|&x| x as u32).collect();
    }
    Ok(summary)
}

/// Advance digits in `[lo, hi)`, last digit fastest; false on wrap-around.
fn odometer(digits: &mut [u64], lo: u64, hi: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < hi {
            return true;
        }
        *d = lo;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    /// Independent cover oracle: for each same-side s-set, test every
    /// opposite vertex directly.
    fn brute_cover_max(f: &EdgeColoredBipartiteFamily, s: usize) -> usize {
        let n = f.side_size();
        let mut best = 0;
        for side in [Side::A, Side::B] {
            for set in crate::hypergraph::combinations(n, s) {
                let cnt = (0..n as u32)
                    .filter(|&y| {
                        let c = f.color_from(side, set[0], y);
                        c > 0 && set.iter().all(|&x| f.color_from(side, x, y) == c)
                    })
                    .count();
                best = best.max(cnt);
            }
        }
        best
    }

    #[test]
    fn edge_counts_match_formula() {
        for (s, h, p) in [(2, 2, 5), (2, 1, 3), (3, 3, 7), (3, 2, 5), (2, 3, 7), (3, 1, 3)] {
            let f = build_norm_partition(s, h, p).unwrap();
            let q = p.pow(s as u32 - 1) as usize;
            assert_eq!(f.side_size(), q);
            assert_eq!(f.m() as u64, (p - 1) / h);
            assert_eq!(f.union_edge_count(), q * q - q);
            let sizes = f.class_sizes();
            assert!(sizes.iter().all(|&c| c == (q * q - q) / f.m()), "{sizes:?}");
        }
    }

    #[test]
    fn s2_h1_p3_classes_are_perfect_matchings() {
        let f = build_norm_partition(2, 1, 3).unwrap();
        assert_eq!(f.m(), 2);
        assert_eq!(f.union_edge_count(), 6);
        for c in 1..=2 {
            let pairs = f.pairs_of_color(c);
            assert_eq!(pairs.len(), 3);
            // norm is the identity on GF(3): color c iff x + y = c
            assert!(pairs.iter().all(|&(a, b)| (a + b) % 3 == c as u32));
        }
    }

    #[test]
    fn color_zero_exactly_on_antidiagonal() {
        for (s, h, p) in [(2, 2, 5), (3, 2, 5), (3, 3, 7), (4, 1, 3), (2, 1, 31)] {
            let f = build_norm_partition(s, h, p).unwrap();
            let field = &f.provenance().unwrap().field;
            for x in field.elements() {
                for y in field.elements() {
                    let zero = f.color(x.index(), y.index()) == 0;
                    assert_eq!(zero, y == field.neg(x));
                }
            }
        }
    }

    #[test]
    fn cover_passes_at_the_bound() {
        for (s, h, p) in [(2, 1, 3), (2, 2, 5), (2, 3, 7), (3, 1, 3), (3, 2, 5), (3, 3, 7)] {
            let f = build_norm_partition(s, h, p).unwrap();
            let bound = (h as usize).pow(s as u32 - 1) * factorial(s - 1);
            let report = verify_cover_property(&f, s, bound);
            assert!(report.passed(), "({s},{h},{p}): {:?}", report.failure);
            assert_eq!(report.worst.unwrap().count, brute_cover_max(&f, s));
        }
    }

    #[test]
    fn cover_fails_with_zero_bound() {
        let f = build_norm_partition(2, 2, 5).unwrap();
        let report = verify_cover_property(&f, 2, 0);
        let w = report.failure.unwrap();
        assert_eq!(w.side, Side::A);
        assert_eq!(w.set, vec![0, 1]);
        assert!(w.count > 0 && w.color > 0);
        assert_eq!(report.sets_checked, 2 * 10);
    }

    #[test]
    fn ebf_roundtrip_and_header() {
        let f = build_norm_partition(2, 2, 5).unwrap();
        let text = f.to_ebf();
        assert!(text.starts_with("ebf 5 2 2 2 5\n"));
        let back = EdgeColoredBipartiteFamily::parse_ebf(&text).unwrap();
        assert_eq!(back.to_ebf(), text);
        assert_eq!(back.union_edge_count(), 20);
    }

    #[test]
    fn ebf_rejects_bad_cells() {
        let bad = "ebf 2 1 2 1 3\n0 1\n1 2\n";
        assert!(matches!(EdgeColoredBipartiteFamily::parse_ebf(bad), Err(Error::Parse { line: 3, .. })));
        let short = "ebf 2 1 2 1 3\n0 1\n";
        assert!(matches!(EdgeColoredBipartiteFamily::parse_ebf(short), Err(Error::Parse { .. })));
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_norm_partition(2, 2, 6).unwrap_err(), Error::NotPrime(6));
        assert_eq!(build_norm_partition(2, 3, 5).unwrap_err(), Error::NotDivisor { h: 3, n: 4 });
        assert!(build_norm_partition(1, 1, 5).is_err());
    }

    #[test]
    fn prime_field_systems_have_one_solution() {
        let field = make_field(7, 1).unwrap();
        for a in field.elements() {
            for b in 1..7 {
                assert_eq!(krs_solution_count(&field, &[a], &[b]).unwrap(), 1);
            }
        }
    }

    #[test]
    fn gf25_systems_have_at_most_two_solutions() {
        let field = make_field(5, 2).unwrap();
        let summary = krs_exhaustive(&field).unwrap();
        assert_eq!(summary.systems, 25 * 24 * 16);
        assert!(summary.max_count <= 2);
        assert!(summary.max_count >= 1);
    }

    #[test]
    fn systems_reject_duplicate_shifts() {
        let field = make_field(5, 2).unwrap();
        let a = field.element(3).unwrap();
        assert_eq!(krs_solution_count(&field, &[a, a], &[1, 2]), Err(Error::DuplicateShift));
        assert!(krs_solution_count(&field, &[a, FieldElement::ZERO], &[0, 2]).is_err());
    }
}
