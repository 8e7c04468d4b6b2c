//! Residue-class products of an edge-colored bipartite family.
//!
//! `G(rho)` is the 2k-partite 2k-uniform hypergraph on parts
//! `X_1, ..., X_2k` (odd parts copy `A`, even parts copy `B`) whose edges
//! are the tuples where each consecutive pair `(x_{2l-1}, x_{2l})` is
//! colored and the colors sum to `rho` modulo `m`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::find_prime;
use crate::hypergraph::{UniformHypergraph, Vertex};
use crate::norm::{build_norm_partition, EdgeColoredBipartiteFamily};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Half-uniformity and residue class. The residue is called `rho` to keep
/// it apart from the field characteristic `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductParams {
    pub k: usize,
    pub rho: usize,
}

impl ProductParams {
    pub fn validate(&self, m: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::BadParameters("k must be at least 1".into()));
        }
        if self.rho == 0 || self.rho > m {
            return Err(Error::BadParameters(format!("rho = {} outside 1..={m}", self.rho)));
        }
        Ok(())
    }
}

/// Exact `e(G(rho))` for `rho = 1..=m` (index `rho - 1`).
pub fn residue_counts(f: &EdgeColoredBipartiteFamily, k: usize) -> Vec<BigUint> {
    let m = f.m();
    if m == 0 {
        return Vec::new();
    }
    let sizes = f.class_sizes();
    let mut dist = vec![BigUint::from(0u32); m];
    dist[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::from(0u32); m];
        for (r, w) in dist.iter().enumerate() {
            if w.bits() == 0 {
                continue;
            }
            for (c, &size) in sizes.iter().enumerate() {
                next[(r + c + 1) % m] += w * BigUint::from(size);
            }
        }
        dist = next;
    }
    (1..=m).map(|rho| dist[rho % m].clone()).collect()
}

pub fn build_product(f: &EdgeColoredBipartiteFamily, params: ProductParams, budget: u64) -> Result<UniformHypergraph> {
    params.validate(f.m())?;
    let ProductParams { k, rho } = params;
    let required = &residue_counts(f, k)[rho - 1] * BigUint::from(2 * k);
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required: required.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }

    let m = f.m();
    let side = f.side_size() as Vertex;
    let all: Vec<(u32, u32, usize)> = (0..side)
        .flat_map(|a| (0..side).map(move |b| (a, b, f.color(a, b))))
        .filter(|&(_, _, c)| c > 0)
        .collect();
    let by_color: Vec<Vec<(u32, u32)>> = (0..=m).map(|c| if c == 0 { Vec::new() } else { f.pairs_of_color(c) }).collect();

    let expand = |first: &(u32, u32, usize)| -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut tuple = Vec::with_capacity(2 * k);
        tuple.push(first.0);
        tuple.push(side + first.1);
        odometer(k, 1, first.2, rho, m, side, &all, &by_color, &mut tuple, &mut out);
        out
    };
    let chunks: Vec<Vec<Vertex>> = all.par_iter().map(expand).collect();
    let edges = chunks.concat();
    Ok(UniformHypergraph::from_sorted_flat(
        2 * k,
        2 * k * side as usize,
        edges,
        Some(vec![side as usize; 2 * k]),
    ))
}

/// Lexicographic product over the remaining pair levels; the last level
/// only visits pairs of the one color that completes the residue.
#[allow(clippy::too_many_arguments)]
fn odometer(
    k: usize,
    level: usize,
    partial: usize,
    rho: usize,
    m: usize,
    side: Vertex,
    all: &[(u32, u32, usize)],
    by_color: &[Vec<(u32, u32)>],
    tuple: &mut Vec<Vertex>,
    out: &mut Vec<Vertex>,
) {
    if level == k {
        if partial % m == rho % m {
            out.extend_from_slice(tuple);
        }
        return;
    }
    let offset = 2 * level as Vertex * side;
    if level + 1 == k {
        let need = (rho % m + m - partial % m) % m;
        let need = if need == 0 { m } else { need };
        for &(a, b) in &by_color[need] {
            tuple.push(offset + a);
            tuple.push(offset + side + b);
            out.extend_from_slice(tuple);
            tuple.truncate(tuple.len() - 2);
        }
        return;
    }
    for &(a, b, c) in all {
        tuple.push(offset + a);
        tuple.push(offset + side + b);
        odometer(k, level + 1, partial + c, rho, m, side, all, by_color, tuple, out);
        tuple.truncate(tuple.len() - 2);
    }
}

/// Residue with the most edges (smallest on ties) and its edge count.
/// The count is at least `ceil(e^k / m)` by pigeonhole; a violation is an
/// internal error.
pub fn best_residue(f: &EdgeColoredBipartiteFamily, k: usize) -> Result<(usize, BigUint)> {
    if k == 0 || f.m() == 0 {
        return Err(Error::BadParameters("need k >= 1 and m >= 1".into()));
    }
    let counts = residue_counts(f, k);
    let (i, best) = counts
        .iter()
        .enumerate()
        .fold((0, &counts[0]), |(bi, b), (i, c)| if c > b { (i, c) } else { (bi, b) });
    let total = BigUint::from(f.union_edge_count()).pow(k as u32);
    if best * BigUint::from(f.m()) < total {
        return Err(Error::Internal(format!("best residue count {best} below e^k/m")));
    }
    Ok((i + 1, best.clone()))
}

/// `ceil(e^k / m)`.
pub fn pigeonhole_bound(f: &EdgeColoredBipartiteFamily, k: usize) -> BigUint {
    let total = BigUint::from(f.union_edge_count()).pow(k as u32);
    let m = BigUint::from(f.m().max(1));
    (total + &m - BigUint::one()) / m
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Largest `x >= 0` with `x^e * scale <= limit`.
fn int_root_scaled(limit: u128, e: u32, scale: u128) -> u128 {
    let fits = |x: u128| x.checked_pow(e).and_then(|v| v.checked_mul(scale)).is_some_and(|v| v <= limit);
    let (mut lo, mut hi) = (0u128, 1u128);
    while fits(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Subgroup order for a given `(s, t)`: the largest `h >= 1` with
/// `h^{s-1} (s-1)! <= t - 1`.
pub fn subgroup_order_for(s: usize, t: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::BadParameters(format!("s = {s} must be at least 2")));
    }
    let fact = factorial(s - 1);
    if (t as u128) <= fact {
        return Err(Error::BadParameters(format!("t = {t} must exceed (s-1)! = {fact}")));
    }
    Ok(int_root_scaled(t as u128 - 1, (s - 1) as u32, fact).max(1) as u64)
}

/// The prime window `[max(2, X/2), X]` with `X = floor((n/2k)^{1/(s-1)})`.
pub fn prime_window(s: usize, k: usize, n_target: u64) -> (u64, u64) {
    let x = int_root_scaled(n_target as u128, (s - 1) as u32, 2 * k as u128) as u64;
    ((x / 2).max(2), x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionReport {
    pub s: usize,
    pub t: u64,
    pub k: usize,
    pub h: u64,
    pub p: u64,
    pub m: usize,
    pub rho: usize,
    /// Achieved vertex count `2k p^{s-1}`.
    pub n: u64,
    pub n_target: u64,
    pub edges: u64,
    pub union_edges: u64,
    pub pigeonhole_bound: u64,
    /// `e / (t^{1/(s-1)} n^{2k - 1/(s-1)})`.
    pub bound_ratio: f64,
    /// `2^{-k} h p^{2(s-1)k - 1} / (t^{1/(s-1)} n^{2k - 1/(s-1)})`.
    pub chain_ratio: f64,
    /// Exact check of `e >= 2^{-k} h p^{2(s-1)k-1}`.
    pub chain_holds: bool,
}

/// End-to-end construction: choose `h` and `p`, build the norm family,
/// pick the densest residue and build `G(rho)`.
pub fn construction_report(s: usize, t: u64, k: usize, n_target: u64, budget: u64) -> Result<(ConstructionReport, UniformHypergraph)> {
    if k == 0 {
        return Err(Error::BadParameters("k must be at least 1".into()));
    }
    let h = subgroup_order_for(s, t)?;
    let (lo, hi) = prime_window(s, k, n_target);
    if lo > hi {
        return Err(Error::NoPrimeInRange { h, lo, hi });
    }
    let p = find_prime(h, lo, hi)?;
    let family = build_norm_partition(s, h, p)?;
    let (rho, count) = best_residue(&family, k)?;
    let graph = build_product(&family, ProductParams { k, rho }, budget)?;
    let edges = graph.edge_count() as u64;
    if BigUint::from(edges) != count {
        return Err(Error::Internal(format!("built {edges} edges, counted {count}")));
    }
    let n = (2 * k * family.side_size()) as u64;
    let exponent = 1.0 / (s as f64 - 1.0);
    let scale = (t as f64).powf(exponent) * (n as f64).powf(2.0 * k as f64 - exponent);
    let chain_exp = (2 * (s - 1) * k - 1) as u32;
    let chain = h as f64 * (p as f64).powi(chain_exp as i32) / 2f64.powi(k as i32);
    let chain_holds = BigUint::from(edges) * BigUint::from(2u32).pow(k as u32) * BigUint::from(p)
        >= BigUint::from(h) * BigUint::from(p).pow(chain_exp + 1);
    let report = ConstructionReport {
        s,
        t,
        k,
        h,
        p,
        m: family.m(),
        rho,
        n,
        n_target,
        edges,
        union_edges: family.union_edge_count() as u64,
        pigeonhole_bound: pigeonhole_bound(&family, k).to_u64().unwrap_or(u64::MAX),
        bound_ratio: round_sig12(edges as f64 / scale),
        chain_ratio: round_sig12(chain / scale),
        chain_holds,
    };
    Ok((report, graph))
}

/// Format with 12 significant digits.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn round_sig12(x: f64) -> f64 {
    fmt_sig12(x).parse().unwrap_or(x)
}

pub const REPORT_COLUMNS: [&str; 10] = ["s", "t", "k", "h", "p", "m", "rho", "n", "edges", "bound_ratio"];

/// CSV with the [`REPORT_COLUMNS`] header and one row per report.
pub fn reports_to_csv(reports: &[ConstructionReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(REPORT_COLUMNS).map_err(io)?;
    for r in reports {
        w.write_record([
            r.s.to_string(),
            r.t.to_string(),
            r.k.to_string(),
            r.h.to_string(),
            r.p.to_string(),
            r.m.to_string(),
            r.rho.to_string(),
            r.n.to_string(),
            r.edges.to_string(),
            fmt_sig12(r.bound_ratio),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// One parsed row of a report CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub s: usize,
    pub t: u64,
    pub k: usize,
    pub h: u64,
    pub p: u64,
    pub m: usize,
    pub rho: usize,
    pub n: u64,
    pub edges: u64,
    pub bound_ratio: f64,
}

impl From<&ConstructionReport> for ReportRow {
    fn from(r: &ConstructionReport) -> Self {
        ReportRow {
            s: r.s,
            t: r.t,
            k: r.k,
            h: r.h,
            p: r.p,
            m: r.m,
            rho: r.rho,
            n: r.n,
            edges: r.edges,
            bound_ratio: r.bound_ratio,
        }
    }
}

pub fn parse_report_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::parse(1, e.to_string()))?.clone();
    if headers.iter().ne(REPORT_COLUMNS) {
        return Err(Error::parse(1, format!("unexpected header {headers:?}")));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
        let int = |j: usize| -> Result<u64> {
            rec[j].parse().map_err(|_| Error::parse(line, format!("bad integer in column {}", REPORT_COLUMNS[j])))
        };
        out.push(ReportRow {
            s: int(0)? as usize,
            t: int(1)?,
            k: int(2)? as usize,
            h: int(3)?,
            p: int(4)?,
            m: int(5)? as usize,
            rho: int(6)? as usize,
            n: int(7)?,
            edges: int(8)?,
            bound_ratio: rec[9].parse().map_err(|_| Error::parse(line, "bad bound_ratio"))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_is_the_color_class() {
        let f = build_norm_partition(2, 2, 5).unwrap();
        for rho in 1..=f.m() {
            let g = build_product(&f, ProductParams { k: 1, rho }, DEFAULT_BUDGET).unwrap();
            let expected: Vec<Vec<Vertex>> = f.pairs_of_color(rho).iter().map(|&(a, b)| vec![a, 5 + b]).collect();
            assert_eq!(g.edge_list(), expected);
        }
    }

    #[test]
    fn residues_partition_the_full_product() {
        for (s, h, p, k) in [(2, 2, 5, 2), (2, 1, 3, 2), (2, 1, 5, 3), (2, 3, 7, 2), (3, 1, 3, 1)] {
            let f = build_norm_partition(s, h, p).unwrap();
            let e = f.union_edge_count() as u64;
            let mut total = 0u64;
            let counts = residue_counts(&f, k);
            for rho in 1..=f.m() {
                let g = build_product(&f, ProductParams { k, rho }, DEFAULT_BUDGET).unwrap();
                assert_eq!(BigUint::from(g.edge_count()), counts[rho - 1]);
                // built edges are sorted, distinct, and meet every part once
                let edges = g.edge_list();
                assert!(edges.windows(2).all(|w| w[0] < w[1]));
                let side = f.side_size() as u32;
                for e in &edges {
                    for (j, &v) in e.iter().enumerate() {
                        assert_eq!(v / side, j as u32);
                    }
                }
                total += g.edge_count() as u64;
            }
            assert_eq!(total, e.pow(k as u32));
        }
    }

    #[test]
    fn single_class_family_keeps_every_product() {
        // h = 2, p = 3 gives m = 1
        let f = build_norm_partition(2, 2, 3).unwrap();
        assert_eq!(f.m(), 1);
        let (rho, count) = best_residue(&f, 2).unwrap();
        assert_eq!((rho, count), (1, BigUint::from(36u32)));
    }

    #[test]
    fn best_residue_meets_pigeonhole() {
        let f = build_norm_partition(2, 2, 5).unwrap();
        let (_, c1) = best_residue(&f, 1).unwrap();
        assert!(c1 >= BigUint::from(10u32));
        let (rho, c2) = best_residue(&f, 2).unwrap();
        assert!(c2 >= BigUint::from(200u32));
        // oracle: count pair-pairs with color sum = rho mod 2 directly
        let colors: Vec<usize> = (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).map(|(a, b)| f.color(a, b)).filter(|&c| c > 0).collect();
        let direct = colors.iter().flat_map(|&c1| colors.iter().map(move |&c2| c1 + c2)).filter(|&sum| sum % 2 == rho % 2).count();
        assert_eq!(c2, BigUint::from(direct));
    }

    #[test]
    fn budget_is_enforced() {
        let f = build_norm_partition(2, 2, 5).unwrap();
        assert!(matches!(
            build_product(&f, ProductParams { k: 2, rho: 1 }, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(build_product(&f, ProductParams { k: 2, rho: 3 }, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn subgroup_order_examples() {
        assert_eq!(subgroup_order_for(2, 2).unwrap(), 1);
        assert_eq!(subgroup_order_for(2, 5).unwrap(), 4);
        assert_eq!(subgroup_order_for(3, 3).unwrap(), 1);
        assert_eq!(subgroup_order_for(3, 19).unwrap(), 3);
        assert_eq!(subgroup_order_for(3, 18).unwrap(), 2);
        assert!(subgroup_order_for(3, 2).is_err());
        for s in 2..6 {
            let fact = (1..s as u64).product::<u64>();
            for t in fact + 1..fact + 200 {
                let h = subgroup_order_for(s, t).unwrap();
                assert!(h.pow(s as u32 - 1) * fact < t);
                assert!((h + 1).pow(s as u32 - 1) * fact > t - 1);
            }
        }
    }

    #[test]
    fn report_examples() {
        let (r, g) = construction_report(2, 2, 2, 40, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.h, r.p, r.m), (1, 5, 4));
        assert_eq!(r.n, 20);
        assert_eq!(g.vertex_count(), 20);
        assert!(r.edges >= r.pigeonhole_bound);
        assert!(r.bound_ratio > 0.0 && r.chain_holds && r.bound_ratio >= r.chain_ratio);

        let (r, _) = construction_report(2, 5, 1, 100, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.h, 4);
        assert_eq!(r.p % 4, 1);
        assert_eq!(r.p, 29);
        assert!(r.chain_holds);
    }

    #[test]
    fn report_errors() {
        assert!(matches!(construction_report(3, 2, 1, 100, DEFAULT_BUDGET), Err(Error::BadParameters(_))));
        assert!(matches!(construction_report(2, 5, 1, 3, DEFAULT_BUDGET), Err(Error::NoPrimeInRange { .. })));
    }

    #[test]
    fn csv_roundtrip() {
        let (r, _) = construction_report(2, 3, 2, 60, DEFAULT_BUDGET).unwrap();
        let text = reports_to_csv(std::slice::from_ref(&r)).unwrap();
        assert!(text.starts_with("s,t,k,h,p,m,rho,n,edges,bound_ratio\n"));
        let rows = parse_report_csv(&text).unwrap();
        assert_eq!(rows, vec![ReportRow::from(&r)]);
    }
}
