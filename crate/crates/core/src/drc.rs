//! Weighted dependent random choice: co-degree pruning, the `1/d`-weighted
//! tuple law, the max-co-degree filter, a seeded sampler and an exact
//! expectation oracle for the proof-step inequalities.

use std::collections::BTreeMap;
use std::fmt::Debug;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypergraph::{omit, UniformHypergraph, Vertex};
use crate::product::fmt_sig12;
use crate::verifier::{is_t_rich, Budget};

/// Number type the statistics are evaluated in.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Send + Sync {
    fn from_rational(q: &BigRational) -> Self;

    fn from_u64(x: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(x.into()))
    }

    fn as_f64(&self) -> f64;

    /// Rationals as `num/den`, floats with 12 significant digits.
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_u64(x: u64) -> Self {
        x as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        fmt_sig12(*self)
    }
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Accepts `a`, `a/b` or a decimal such as `1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::BadParameters(format!("cannot read {text:?} as a rational"));
    let text = text.trim();
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let part = BigRational::new(frac.parse::<BigInt>().map_err(|_| bad())?, den);
        let whole = BigRational::from_integer(whole);
        return Ok(if negative { whole - part } else { whole + part });
    }
    text.parse::<BigRational>().map_err(|_| bad())
}

/// Smallest integer `C >= 4s` with `C^{s-1} ((r-1)!)^s / (2^s r! s^s) - r^2 >= 1`.
pub fn minimal_constant(s: usize, r: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).map(BigUint::from).product::<BigUint>();
    let num_scale = fact(r - 1).pow(s as u32);
    let den = BigUint::from(2u32).pow(s as u32) * fact(r) * BigUint::from(s).pow(s as u32);
    let target = BigUint::from(r * r + 1) * &den;
    let ok = |c: u64| BigUint::from(c).pow(s as u32 - 1) * &num_scale >= target;
    let mut hi = (4 * s as u64).max(1);
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = (4 * s as u64).max(hi / 2);
    if ok(lo) {
        return lo;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrcParams {
    pub s: usize,
    pub t: usize,
    pub alpha: BigRational,
    pub c: BigRational,
}

/// The parameter `D` together with its integer pruning threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct DValue {
    /// `D` itself when rational, otherwise its lower approximation on a
    /// `2^-32` grid.
    pub value: BigRational,
    pub exact: bool,
    /// `ceil(D)`, computed exactly.
    pub threshold: u64,
}

impl DrcParams {
    pub fn new(s: usize, t: usize, alpha: BigRational, c: BigRational) -> Result<Self> {
        let p = DrcParams { s, t, alpha, c };
        p.validate()?;
        Ok(p)
    }

    /// Defaults to the smallest feasible constant for `(s, r)`.
    pub fn with_minimal_constant(s: usize, t: usize, alpha: BigRational, r: usize) -> Result<Self> {
        Self::new(s, t, alpha, rat(minimal_constant(s, r)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 2 || self.t < 1 {
            return Err(Error::BadParameters("need s >= 2 and t >= 1".into()));
        }
        if self.alpha <= BigRational::one() {
            return Err(Error::BadParameters(format!("alpha = {} must exceed 1", self.alpha)));
        }
        if !self.c.is_positive() {
            return Err(Error::BadParameters(format!("C = {} must be positive", self.c)));
        }
        Ok(())
    }

    /// `D = (C/2) (alpha t)^{1/(s-1)} n^{1 - 1/(s-1)}`.
    pub fn d_value(&self, n: usize) -> DValue {
        let k = (self.s - 1) as u32;
        let half_c = &self.c / rat(2);
        let q = half_c.pow(k as i32) * &self.alpha * rat(self.t as u64) * rat(n as u64).pow(k as i32 - 1);
        let (a, b) = (q.numer().magnitude().clone(), q.denom().magnitude().clone());
        let (ra, rb) = (a.nth_root(k), b.nth_root(k));
        let exact = ra.pow(k) == a && rb.pow(k) == b;
        let value = if exact {
            BigRational::new(ra.into(), rb.into())
        } else {
            let scaled = (&a << (32 * k as usize)) / &b;
            BigRational::new(scaled.nth_root(k).into(), BigInt::one() << 32)
        };
        let floor = (&a / &b).nth_root(k);
        let threshold = if &floor.pow(k) * &b == a { floor } else { floor + 1u32 };
        DValue { value, exact, threshold: threshold.to_u64().unwrap_or(u64::MAX) }
    }
}

fn check_uniformity(h: &UniformHypergraph) -> Result<()> {
    if h.uniformity() < 3 {
        return Err(Error::BadArity(format!("need r >= 3, got {}", h.uniformity())));
    }
    Ok(())
}

/// `A_{v_2..v_r}`: the vertices `v_1` completing the tuple to an edge of
/// `h` for which the tuple's co-degree is the largest among the edge's
/// (r-1)-subsets. Ties keep `v_1`.
pub fn filter_set(h: &UniformHypergraph, tuple: &[Vertex]) -> Result<Vec<Vertex>> {
    let r = h.uniformity();
    if tuple.len() + 1 != r {
        return Err(Error::BadArity(format!("tuple needs {} vertices, got {}", r - 1, tuple.len())));
    }
    if let Some(&v) = tuple.iter().find(|&&v| v as usize >= h.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: v as u64, n: h.vertex_count() });
    }
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadArity(format!("{tuple:?} repeats a vertex")));
    }
    let idx = h.codegree_index();
    Ok(match idx.id_of(&sorted) {
        Some(id) => filter_facet(h, id),
        None => Vec::new(),
    })
}

fn filter_facet(h: &UniformHypergraph, id: u32) -> Vec<Vertex> {
    let idx = h.codegree_index();
    let facet = idx.facet(id);
    let d = idx.codegree_of(id);
    let mut out = Vec::new();
    for v in 0..h.vertex_count() as Vertex {
        if !idx.link_bits(v).contains(id as usize) {
            continue;
        }
        let mut edge = facet.to_vec();
        let at = edge.partition_point(|&u| u < v);
        edge.insert(at, v);
        let max = (0..edge.len())
            .map(|i| idx.id_of(&omit(&edge, i)).map_or(0, |j| idx.codegree_of(j)))
            .max()
            .unwrap_or(0);
        if max == d {
            out.push(v);
        }
    }
    out
}

/// Ordered (r-1)-tuples of distinct vertices with positive co-degree in
/// the pruned hypergraph, lexicographic, with their exact weights
/// `D / (n^{r-1} d)`.
#[derive(Clone, Debug)]
pub struct TupleWeightTable {
    arity: usize,
    d: BigRational,
    tuples: Vec<Vertex>,
    facet_ids: Vec<u32>,
    codegrees: Vec<u32>,
    weights: Vec<BigRational>,
    total: BigRational,
}

impl TupleWeightTable {
    pub fn build(pruned: &UniformHypergraph, d: &BigRational, budget: u64) -> Result<Self> {
        check_uniformity(pruned)?;
        let n = pruned.vertex_count() as u128;
        let arity = pruned.uniformity() - 1;
        let space = n.checked_pow(arity as u32).unwrap_or(u128::MAX);
        if space > budget as u128 {
            return Err(Error::BudgetExceeded { required: space, budget });
        }
        let idx = pruned.codegree_index();
        let mut rows: Vec<(Vec<Vertex>, u32)> = (0..idx.len() as u32)
            .flat_map(|id| idx.facet(id).iter().copied().permutations(arity).map(move |p| (p, id)))
            .collect();
        rows.sort_unstable();
        let scale = rat(n as u64).pow(arity as i32);
        let codegrees: Vec<u32> = rows.iter().map(|(_, id)| idx.codegree_of(*id)).collect();
        let weights: Vec<BigRational> = codegrees.par_iter().map(|&c| d / (&scale * rat(c as u64))).collect();
        let total = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
        Ok(TupleWeightTable {
            arity,
            d: d.clone(),
            tuples: rows.iter().flat_map(|(t, _)| t.iter().copied()).collect(),
            facet_ids: rows.iter().map(|(_, id)| *id).collect(),
            codegrees,
            weights,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn d(&self) -> &BigRational {
        &self.d
    }

    pub fn tuple(&self, i: usize) -> &[Vertex] {
        &self.tuples[i * self.arity..(i + 1) * self.arity]
    }

    pub fn codegree(&self, i: usize) -> u32 {
        self.codegrees[i]
    }

    pub fn weight(&self, i: usize) -> &BigRational {
        &self.weights[i]
    }

    /// `p`, the probability that a tuple is drawn at all.
    pub fn total(&self) -> &BigRational {
        &self.total
    }

    /// Hex SHA-256 over the tuples and weights in table order.
    pub fn weights_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for i in 0..self.len() {
            hasher.update(format!("{:?} {}\n", self.tuple(i), self.weights[i]).as_bytes());
        }
        hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrcOutcome {
    pub a: Vec<Vertex>,
    pub tuple: Option<Vec<Vertex>>,
    pub seed: u64,
    pub weights_hash: String,
}

/// Pruned hypergraph, weight table and inverse-CDF thresholds, reusable
/// across seeds.
#[derive(Clone, Debug)]
pub struct DrcSampler {
    pruned: UniformHypergraph,
    table: TupleWeightTable,
    /// `ceil(cum_i * 2^128)`; `u < cum_i` iff `floor(u * 2^128) < threshold_i`.
    thresholds: Vec<BigUint>,
    hash: String,
}

impl DrcSampler {
    pub fn new(h: &UniformHypergraph, params: &DrcParams, budget: u64) -> Result<Self> {
        params.validate()?;
        check_uniformity(h)?;
        let dv = params.d_value(h.vertex_count());
        let pruned = h.codegree_prune(dv.threshold.min(u32::MAX as u64) as u32);
        let table = TupleWeightTable::build(&pruned, &dv.value, budget)?;
        if table.is_empty() {
            return Err(Error::EmptyAfterPrune);
        }
        let one: BigInt = BigInt::one() << 128;
        let mut cum = BigRational::zero();
        let thresholds = table
            .weights
            .iter()
            .map(|w| {
                cum += w;
                let scaled = &cum * BigRational::from_integer(one.clone());
                scaled.ceil().to_integer().magnitude().clone()
            })
            .collect();
        let hash = table.weights_hash();
        Ok(DrcSampler { pruned, table, thresholds, hash })
    }

    pub fn pruned(&self) -> &UniformHypergraph {
        &self.pruned
    }

    pub fn table(&self) -> &TupleWeightTable {
        &self.table
    }

    /// `A` for the tuple at table position `i`.
    pub fn outcome_of(&self, i: usize) -> Vec<Vertex> {
        filter_facet(&self.pruned, self.table.facet_ids[i])
    }

    /// Index of the drawn tuple, or `None` for the empty outcome.
    pub fn draw(&self, seed: u64) -> Option<usize> {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let hi = rng.next_u64() as u128;
        let lo = rng.next_u64() as u128;
        let u = BigUint::from(hi << 64 | lo);
        let i = self.thresholds.partition_point(|t| *t <= u);
        (i < self.thresholds.len()).then_some(i)
    }

    pub fn sample(&self, seed: u64) -> DrcOutcome {
        let (a, tuple) = match self.draw(seed) {
            Some(i) => (self.outcome_of(i), Some(self.table.tuple(i).to_vec())),
            None => (Vec::new(), None),
        };
        DrcOutcome { a, tuple, seed, weights_hash: self.hash.clone() }
    }
}

pub fn drc_sample(h: &UniformHypergraph, params: &DrcParams, seed: u64, budget: u64) -> Result<DrcOutcome> {
    Ok(DrcSampler::new(h, params, budget)?.sample(seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported only; not implied without the edge-count hypothesis.
    Info,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimRow<S> {
    pub id: &'static str,
    pub lhs: S,
    pub rhs: S,
    pub verdict: Verdict,
}

/// Exact (or floating) expectations over the full outcome space.
#[derive(Clone, Debug, PartialEq)]
pub struct DrcStats<S> {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub d: S,
    pub d_exact: bool,
    pub threshold: u64,
    pub edges: usize,
    pub pruned_edges: usize,
    pub tuples: usize,
    pub p: S,
    /// Sum of `a` over ordered tuples.
    pub sum_a: S,
    pub claim1_rhs: S,
    pub moment: S,
    pub holder_rhs: S,
    pub claim2_rhs: S,
    pub claim3_max: S,
    pub claim3_bound: S,
    pub claim4_max: S,
    pub claim4_bound: S,
    pub claim5_max: S,
    pub claim5_bound: S,
    pub non_rich_sets: usize,
    pub expected_b: S,
    pub expected_b_bound: S,
    pub expected_binom: S,
    /// `E[C(|A|, s)] - alpha E[b]`.
    pub expected_gain: S,
}

impl<S: Scalar> DrcStats<S> {
    pub fn claims(&self) -> Vec<ClaimRow<S>> {
        let ge = |a: &S, b: &S| if a >= b { Verdict::Pass } else { Verdict::Fail };
        let le = |a: &S, b: &S| if a <= b { Verdict::Pass } else { Verdict::Fail };
        let row = |id, lhs: &S, rhs: &S, verdict| ClaimRow { id, lhs: lhs.clone(), rhs: rhs.clone(), verdict };
        vec![
            row("claim1_sum", &self.sum_a, &self.claim1_rhs, ge(&self.sum_a, &self.claim1_rhs)),
            row("p_at_most_1", &self.p, &S::one(), le(&self.p, &S::one())),
            row("holder", &self.moment, &self.holder_rhs, ge(&self.moment, &self.holder_rhs)),
            row("claim2", &self.moment, &self.claim2_rhs, Verdict::Info),
            row("claim3", &self.claim3_max, &self.claim3_bound, le(&self.claim3_max, &self.claim3_bound)),
            row("claim4", &self.claim4_max, &self.claim4_bound, le(&self.claim4_max, &self.claim4_bound)),
            row("claim5", &self.claim5_max, &self.claim5_bound, le(&self.claim5_max, &self.claim5_bound)),
            row("claim5_sum", &self.expected_b, &self.expected_b_bound, le(&self.expected_b, &self.expected_b_bound)),
            row("expected_gain", &self.expected_gain, &S::zero(), Verdict::Info),
        ]
    }

    /// True when no asserted claim fails.
    pub fn all_hold(&self) -> bool {
        self.claims().iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(["claim_id", "lhs", "rhs", "verdict"]).map_err(io)?;
        for c in self.claims() {
            w.write_record([c.id, &c.lhs.render(), &c.rhs.render(), c.verdict.as_str()])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn pow<S: Scalar>(x: &S, e: usize) -> S {
    num_traits::pow(x.clone(), e)
}

/// Every expectation and probability by full enumeration of the tuple law.
pub fn drc_stats<S: Scalar>(h: &UniformHypergraph, params: &DrcParams, budget: u64) -> Result<DrcStats<S>> {
    params.validate()?;
    check_uniformity(h)?;
    let (n, r, s, t) = (h.vertex_count(), h.uniformity(), params.s, params.t);
    let dv = params.d_value(n);
    let g = h.codegree_prune(dv.threshold.min(u32::MAX as u64) as u32);
    let table = TupleWeightTable::build(&g, &dv.value, budget)?;
    let idx = g.codegree_index();
    let filters: Vec<Vec<Vertex>> = (0..idx.len() as u32).map(|id| filter_facet(&g, id)).collect();

    let d = S::from_rational(&dv.value);
    let nn = S::from_u64(n as u64);
    let mut p = S::zero();
    let mut sum_a = S::zero();
    let mut sum_d = S::zero();
    let mut moment = S::zero();
    let mut expected_binom = S::zero();
    let mut claim3: BTreeMap<(Vec<Vertex>, Vec<Vertex>), S> = BTreeMap::new();
    let mut claim4: BTreeMap<(Vec<Vertex>, Vertex), S> = BTreeMap::new();
    let mut inside: BTreeMap<Vec<Vertex>, S> = BTreeMap::new();
    for i in 0..table.len() {
        let w = S::from_rational(table.weight(i));
        let a_set = &filters[table.facet_ids[i] as usize];
        let a = S::from_u64(a_set.len() as u64);
        p = p + w.clone();
        sum_a = sum_a + a.clone();
        sum_d = sum_d + S::from_u64(table.codegree(i) as u64);
        moment = moment + w.clone() * pow(&a, s);
        expected_binom = expected_binom + w.clone() * S::from_u64(binom(a_set.len(), s));
        let tuple = table.tuple(i);
        for u in a_set.iter().copied().combinations(s) {
            let slot = claim3.entry((u.clone(), tuple[..r - 2].to_vec())).or_insert_with(S::zero);
            *slot = slot.clone() + w.clone();
            let slot = claim4.entry((u.clone(), tuple[0])).or_insert_with(S::zero);
            *slot = slot.clone() + w.clone();
            let slot = inside.entry(u).or_insert_with(S::zero);
            *slot = slot.clone() + w.clone();
        }
    }
    let max_of = |it: &mut dyn Iterator<Item = &S>| it.fold(S::zero(), |m, x| if *x > m { x.clone() } else { m });
    let claim3_max = max_of(&mut claim3.values());
    let claim4_max = max_of(&mut claim4.values());

    let unlimited = Budget::unlimited();
    let mut claim5_max = S::zero();
    let mut expected_b = S::zero();
    let mut non_rich_sets = 0;
    for (u, prob) in &inside {
        if is_t_rich(&g, u, t, &unlimited)?.is_none() {
            non_rich_sets += 1;
            expected_b = expected_b + prob.clone();
            if *prob > claim5_max {
                claim5_max = prob.clone();
            }
        }
    }

    let e_g = S::from_u64(g.edge_count() as u64);
    let fact_r1 = S::from_u64(factorial(r - 1));
    let holder_rhs = if sum_d.is_zero() {
        S::zero()
    } else {
        d.clone() / pow(&nn, (r - 1) * (s - 1)) * pow(&sum_a, s) / sum_d.clone()
    };
    let claim5_bound = S::from_u64(((r - 1) * (r - 1) * (t - 1)) as u64) * d.clone() / pow(&nn, 2);
    let alpha = S::from_rational(&params.alpha);
    Ok(DrcStats {
        n,
        r,
        s,
        t,
        d: d.clone(),
        d_exact: dv.exact,
        threshold: dv.threshold,
        edges: h.edge_count(),
        pruned_edges: g.edge_count(),
        tuples: table.len(),
        p,
        sum_a: sum_a.clone(),
        claim1_rhs: fact_r1.clone() * e_g,
        moment,
        holder_rhs,
        claim2_rhs: pow(&fact_r1, s) / S::from_u64(factorial(r)) * pow(&d, s),
        claim3_max,
        claim3_bound: d.clone() / pow(&nn, r - 1),
        claim4_max,
        claim4_bound: d.clone() / pow(&nn, 2),
        claim5_max,
        expected_b_bound: S::from_u64(binom(n, s)) * claim5_bound.clone(),
        claim5_bound,
        non_rich_sets,
        expected_b: expected_b.clone(),
        expected_binom: expected_binom.clone(),
        expected_gain: expected_binom - alpha * expected_b,
    })
}

pub fn drc_exact_stats(h: &UniformHypergraph, params: &DrcParams, budget: u64) -> Result<DrcStats<BigRational>> {
    drc_stats(h, params, budget)
}

/// An outcome with `C(|A|, s) - alpha b > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessOutcome {
    pub tuple: Vec<Vertex>,
    pub a: Vec<Vertex>,
    pub rich_sets: u64,
    pub total_sets: u64,
}

/// First tuple in table order whose outcome has positive gain.
pub fn find_success(h: &UniformHypergraph, params: &DrcParams, budget: u64) -> Result<Option<SuccessOutcome>> {
    params.validate()?;
    check_uniformity(h)?;
    let dv = params.d_value(h.vertex_count());
    let g = h.codegree_prune(dv.threshold.min(u32::MAX as u64) as u32);
    let table = TupleWeightTable::build(&g, &dv.value, budget)?;
    let unlimited = Budget::unlimited();
    let mut seen: BTreeMap<u32, bool> = BTreeMap::new();
    for i in 0..table.len() {
        let id = table.facet_ids[i];
        if seen.insert(id, true).is_some() {
            continue;
        }
        let a = filter_facet(&g, id);
        let total = binom(a.len(), params.s);
        let mut rich = 0u64;
        for u in a.iter().copied().combinations(params.s) {
            if is_t_rich(&g, &u, params.t, &unlimited)?.is_some() {
                rich += 1;
            }
        }
        let gain = rat(total) - &params.alpha * rat(total - rich);
        if gain.is_positive() {
            return Ok(Some(SuccessOutcome { tuple: table.tuple(i).to_vec(), a, rich_sets: rich, total_sets: total }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn params(t: usize, c: BigRational) -> DrcParams {
        DrcParams::new(2, t, q(2, 1), c).unwrap()
    }

    #[test]
    fn minimal_constant_examples() {
        assert_eq!(minimal_constant(2, 3), 240);
        for (s, r) in [(2, 3), (2, 4), (3, 3), (3, 5), (4, 4)] {
            let c = minimal_constant(s, r);
            let feasible = |c: u64| {
                let lhs = q(c as i64, 1).pow(s as i32 - 1) * rat(factorial(r - 1)).pow(s as i32)
                    / (rat(2).pow(s as i32) * rat(factorial(r)) * rat(s as u64).pow(s as i32));
                c >= 4 * s as u64 && lhs - rat((r * r) as u64) >= BigRational::one()
            };
            assert!(feasible(c));
            assert!(c == 4 * s as u64 || !feasible(c - 1));
        }
    }

    #[test]
    fn d_value_exact_and_approximate() {
        let p = params(2, q(1, 1));
        let dv = p.d_value(7);
        assert_eq!((dv.value.clone(), dv.exact, dv.threshold), (q(2, 1), true, 2));
        let p = DrcParams::new(2, 1, q(3, 2), q(1, 1)).unwrap();
        assert_eq!(p.d_value(5).threshold, 1);
        // s = 3: D^2 = (C/2)^2 alpha t n = 1/4 * 2 * 1 * 8 = 4
        let p = DrcParams::new(3, 1, q(2, 1), q(1, 1)).unwrap();
        let dv = p.d_value(8);
        assert_eq!((dv.value, dv.exact, dv.threshold), (q(2, 1), true, 2));
        // D^2 = 1/4 * 2 * 1 * 6 = 3
        let dv = p.d_value(6);
        assert!(!dv.exact);
        assert_eq!(dv.threshold, 2);
        let sq = &dv.value * &dv.value;
        assert!(sq <= q(3, 1));
        assert!(q(3, 1) - sq < q(1, 1 << 30));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn params_validation() {
        assert!(DrcParams::new(2, 1, q(1, 1), q(1, 1)).is_err());
        assert!(DrcParams::new(1, 1, q(2, 1), q(1, 1)).is_err());
        assert!(DrcParams::new(2, 1, q(2, 1), q(0, 1)).is_err());
        assert!(DrcParams::new(2, 0, q(2, 1), q(1, 1)).is_err());
    }

    #[test]
    fn filter_examples() {
        let k = complete(3, 6);
        assert_eq!(filter_set(&k, &[4, 1]).unwrap(), vec![0, 2, 3, 5]);
        let one = UniformHypergraph::new(3, 3, [[0, 1, 2]], None).unwrap();
        assert_eq!(filter_set(&one, &[1, 2]).unwrap(), vec![0]);
        let two = UniformHypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]], None).unwrap();
        assert_eq!(filter_set(&two, &[1, 2]).unwrap(), Vec::<Vertex>::new());
        assert_eq!(filter_set(&two, &[0, 1]).unwrap(), vec![2, 3]);
        assert!(matches!(filter_set(&two, &[1]), Err(Error::BadArity(_))));
        assert!(matches!(filter_set(&two, &[1, 1]), Err(Error::BadArity(_))));
    }

    #[test]
    fn single_edge_stats() {
        let one = UniformHypergraph::new(3, 3, [[0, 1, 2]], None).unwrap();
        let st = drc_exact_stats(&one, &params(1, q(1, 1)), 1 << 20).unwrap();
        assert_eq!(st.sum_a, q(2 * 3, 1));
        assert_eq!(st.claim1_rhs, q(2, 1));
        assert_eq!(st.tuples, 6);
        // D = 1, n = 3: each weight 1/9
        assert_eq!(st.p, q(6, 9));
        assert!(st.all_hold());
    }

    #[test]
    fn sampler_is_deterministic() {
        let k = complete(3, 6);
        let p = params(1, q(1, 1));
        let s = DrcSampler::new(&k, &p, 1 << 20).unwrap();
        for seed in [0, 1, 42, u64::MAX] {
            assert_eq!(s.sample(seed), drc_sample(&k, &p, seed, 1 << 20).unwrap());
        }
        let out = s.sample(7);
        if let Some(t) = &out.tuple {
            assert_eq!(out.a, filter_set(s.pruned(), t).unwrap());
        }
        assert_eq!(out.weights_hash.len(), 64);
    }

    #[test]
    fn empty_after_prune() {
        let one = UniformHypergraph::new(3, 4, [[0, 1, 2]], None).unwrap();
        assert_eq!(drc_sample(&one, &params(2, q(1, 1)), 0, 1 << 20), Err(Error::EmptyAfterPrune));
        let k = complete(3, 6);
        assert_eq!(drc_sample(&k, &params(1, rat(240)), 0, 1 << 20), Err(Error::EmptyAfterPrune));
    }

    #[test]
    fn budget_limits_enumeration() {
        let k = complete(3, 6);
        assert!(matches!(drc_exact_stats(&k, &params(1, q(1, 1)), 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn complete_six_rate_matches_p() {
        let k = complete(3, 6);
        let p = params(1, q(1, 1));
        let s = DrcSampler::new(&k, &p, 1 << 20).unwrap();
        let exact = s.table().total().as_f64();
        let trials = 10_000u64;
        let hits = (0..trials).filter(|&seed| s.draw(seed).is_some()).count() as f64;
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((hits / trials as f64 - exact).abs() <= 3.0 * se, "rate {} vs {exact}", hits / trials as f64);
    }

    #[test]
    fn float_tracks_exact() {
        let k = complete(3, 6).filter_edges(|e| e[0] != 0 || e[2] != 5);
        let p = params(2, q(1, 1));
        let ex = drc_exact_stats(&k, &p, 1 << 20).unwrap();
        let fl: DrcStats<f64> = drc_stats(&k, &p, 1 << 20).unwrap();
        for (a, b) in ex.claims().iter().zip(fl.claims()) {
            assert!((a.lhs.as_f64() - b.lhs).abs() <= 1e-9 * b.lhs.abs().max(1.0));
            assert_eq!(a.verdict, b.verdict);
        }
        let csv = ex.to_csv().unwrap();
        assert!(csv.starts_with("claim_id,lhs,rhs,verdict\nclaim1_sum,"));
        assert!(csv.contains("\np_at_most_1,") && csv.contains("/1,pass\n"));
        assert_eq!(csv.lines().count(), 10);
    }

    #[test]
    fn success_when_gain_positive() {
        let k = complete(3, 7);
        let p = params(2, q(1, 1));
        let st = drc_exact_stats(&k, &p, 1 << 20).unwrap();
        assert!(st.expected_gain.is_positive());
        let found = find_success(&k, &p, 1 << 20).unwrap().unwrap();
        let frac = q(found.rich_sets as i64, found.total_sets as i64);
        assert!(frac >= BigRational::one() - p.alpha.recip());
    }
}
