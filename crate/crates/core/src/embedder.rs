//! Rich-pair graphs, density peeling, greedy cycle embedding and greedy
//! pattern embedding from a core of rich sets.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;

use crate::drc::{DrcParams, DrcSampler};
use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, Vertex};
use crate::verifier::{is_t_rich, BipartitePattern, Budget, PatternEmbedding};

/// Pairs of a vertex set `A` that are `q`-rich in the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichPairGraph {
    vertices: Vec<Vertex>,
    q: usize,
    adj: Vec<Vec<bool>>,
}

impl RichPairGraph {
    pub fn build(h: &UniformHypergraph, a: &[Vertex], q: usize, budget: &Budget) -> Result<Self> {
        let mut cache = RichCache::new(h, q);
        Self::build_cached(a, &mut cache, budget)
    }

    fn build_cached(a: &[Vertex], cache: &mut RichCache<'_>, budget: &Budget) -> Result<Self> {
        let mut vertices = a.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let k = vertices.len();
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let rich = cache.rich(vertices[i], vertices[j], budget)?;
                adj[i][j] = rich;
                adj[j][i] = rich;
            }
        }
        Ok(RichPairGraph { vertices, q: cache.q, adj })
    }

    /// A rich-pair graph from explicit pairs, without a host.
    pub fn from_pairs(vertices: &[Vertex], q: usize, pairs: &[(Vertex, Vertex)]) -> Self {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let k = vs.len();
        let mut adj = vec![vec![false; k]; k];
        for &(u, v) in pairs {
            if let (Ok(i), Ok(j)) = (vs.binary_search(&u), vs.binary_search(&v)) {
                if i != j {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        RichPairGraph { vertices: vs, q, adj }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.vertices.binary_search(&u), self.vertices.binary_search(&v)) {
            (Ok(i), Ok(j)) => self.adj[i][j],
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.iter().filter(|&&b| b).count()).sum::<usize>() / 2
    }

    /// Number of pairs of `A` that are not rich.
    pub fn non_edge_count(&self) -> usize {
        let k = self.vertices.len();
        k * k.saturating_sub(1) / 2 - self.edge_count()
    }

    /// Re-checks every pair against the host.
    pub fn validate(&self, h: &UniformHypergraph) -> Result<bool> {
        let b = Budget::unlimited();
        for [i, j] in (0..self.vertices.len()).array_combinations() {
            let rich = is_t_rich(h, &[self.vertices[i], self.vertices[j]], self.q, &b)?.is_some();
            if rich != self.adj[i][j] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Memoized pair richness.
struct RichCache<'a> {
    h: &'a UniformHypergraph,
    q: usize,
    known: HashMap<(Vertex, Vertex), bool>,
}

impl<'a> RichCache<'a> {
    fn new(h: &'a UniformHypergraph, q: usize) -> Self {
        RichCache { h, q, known: HashMap::new() }
    }

    fn rich(&mut self, u: Vertex, v: Vertex, budget: &Budget) -> Result<bool> {
        let key = (u.min(v), u.max(v));
        if let Some(&b) = self.known.get(&key) {
            return Ok(b);
        }
        let b = is_t_rich(self.h, &[key.0, key.1], self.q, budget)?.is_some();
        self.known.insert(key, b);
        Ok(b)
    }
}

/// Repeatedly deletes the smallest vertex whose rich-degree inside the
/// current set is below `fraction` times the set size.
pub fn peel(g: &RichPairGraph, fraction: Ratio<u64>) -> Vec<Vertex> {
    let k = g.vertices.len();
    let mut alive = vec![true; k];
    let mut degree: Vec<u64> = g.adj.iter().map(|row| row.iter().filter(|&&b| b).count() as u64).collect();
    let mut size = k as u64;
    let (num, den) = (*fraction.numer(), *fraction.denom());
    while let Some(i) = (0..k).find(|&i| alive[i] && degree[i] * den < num * size) {
        alive[i] = false;
        size -= 1;
        for j in 0..k {
            if alive[j] && g.adj[i][j] {
                degree[j] -= 1;
            }
        }
    }
    (0..k).filter(|&i| alive[i]).map(|i| g.vertices[i]).collect()
}

pub fn three_quarters() -> Ratio<u64> {
    Ratio::new(3, 4)
}

/// Why a greedy procedure gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFoundReason {
    /// Nothing survives co-degree pruning, so the random set is always empty.
    EmptyAfterPrune,
    /// The chosen set is smaller than the pattern needs.
    CoreTooSmall { needed: usize, available: usize },
    /// No unused vertex of the peeled set is rich to the required neighbors.
    NoRichNeighbor { position: usize },
    /// No (r-1)-set in the common link avoids everything already used.
    Blocked { y: usize },
}

impl fmt::Display for NotFoundReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotFoundReason::EmptyAfterPrune => write!(f, "no edges survive co-degree pruning"),
            NotFoundReason::CoreTooSmall { needed, available } => {
                write!(f, "core has {available} vertices, pattern needs {needed}")
            }
            NotFoundReason::NoRichNeighbor { position } => {
                write!(f, "no rich neighbor for cycle vertex {position}")
            }
            NotFoundReason::Blocked { y } => write!(f, "Y-vertex {y} has no free set in its common link"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedOutcome {
    Found(PatternEmbedding),
    NotFound(NotFoundReason),
}

impl EmbedOutcome {
    pub fn embedding(&self) -> Option<&PatternEmbedding> {
        match self {
            EmbedOutcome::Found(e) => Some(e),
            EmbedOutcome::NotFound(_) => None,
        }
    }
}

/// How `find_cycle` picks the random set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeSearch {
    /// Every outcome of the tuple law.
    Exhaustive,
    /// Seeds `0..count` of the sampler.
    Seeds(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleParams {
    pub alpha: Ratio<num_bigint::BigInt>,
    pub c: Ratio<num_bigint::BigInt>,
    pub fraction: Ratio<u64>,
    pub search: OutcomeSearch,
}

impl CycleParams {
    /// `alpha = 2`, `C = 1`, fraction `3/4`; exhaustive below 60 vertices.
    pub fn desk(n: usize) -> Self {
        CycleParams {
            alpha: Ratio::from_integer(2.into()),
            c: Ratio::from_integer(1.into()),
            fraction: three_quarters(),
            search: if n < 60 { OutcomeSearch::Exhaustive } else { OutcomeSearch::Seeds(256) },
        }
    }
}

/// Sets of `C(|A|, 2) - alpha b` value over the chosen outcomes; the best
/// one (first on ties) wins.
fn best_outcome(
    sampler: &DrcSampler,
    params: &CycleParams,
    cache: &mut RichCache<'_>,
    budget: &Budget,
) -> Result<Vec<Vertex>> {
    let mut best: Option<(Ratio<num_bigint::BigInt>, Vec<Vertex>)> = None;
    let mut consider = |a: Vec<Vertex>, cache: &mut RichCache<'_>| -> Result<()> {
        let pairs = a.len() * a.len().saturating_sub(1) / 2;
        let mut poor = 0u64;
        for [u, v] in a.iter().copied().array_combinations() {
            if !cache.rich(u, v, budget)? {
                poor += 1;
            }
        }
        let value = Ratio::from_integer((pairs as u64).into()) - &params.alpha * Ratio::from_integer(poor.into());
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, a));
        }
        Ok(())
    };
    match params.search {
        OutcomeSearch::Exhaustive => {
            let table = sampler.table();
            let mut seen = std::collections::HashSet::new();
            for i in 0..table.len() {
                let mut key = table.tuple(i).to_vec();
                key.sort_unstable();
                if seen.insert(key) {
                    consider(sampler.outcome_of(i), cache)?;
                }
            }
        }
        OutcomeSearch::Seeds(count) => {
            for seed in 0..count {
                consider(sampler.sample(seed).a, cache)?;
            }
        }
    }
    Ok(best.map(|(_, a)| a).unwrap_or_default())
}

/// Greedy `C_{2t}^{(r)}` search following the rich-pair argument.
pub fn find_cycle(h: &UniformHypergraph, t: usize, params: &CycleParams, budget: &Budget) -> Result<EmbedOutcome> {
    if t < 2 {
        return Err(Error::BadParameters("a cycle needs t >= 2".into()));
    }
    let r = h.uniformity();
    let q = r * t;
    let drc = DrcParams::new(2, q, params.alpha.clone(), params.c.clone())?;
    let sampler = match DrcSampler::new(h, &drc, u64::MAX) {
        Ok(s) => s,
        Err(Error::EmptyAfterPrune) => return Ok(EmbedOutcome::NotFound(NotFoundReason::EmptyAfterPrune)),
        Err(e) => return Err(e),
    };
    let mut cache = RichCache::new(h, q);
    let a = best_outcome(&sampler, params, &mut cache, budget)?;
    if a.len() < t {
        return Ok(EmbedOutcome::NotFound(NotFoundReason::CoreTooSmall { needed: t, available: a.len() }));
    }
    let g = RichPairGraph::build_cached(&a, &mut cache, budget)?;
    let core = peel(&g, params.fraction);
    if core.len() < t {
        return Ok(EmbedOutcome::NotFound(NotFoundReason::CoreTooSmall { needed: t, available: core.len() }));
    }

    let mut xs: Vec<Vertex> = vec![core[0]];
    for pos in 1..t {
        let prev = xs[pos - 1];
        let closing = pos + 1 == t;
        let next = core
            .iter()
            .copied()
            .find(|&v| !xs.contains(&v) && g.is_edge(prev, v) && (!closing || g.is_edge(v, xs[0])));
        match next {
            Some(v) => xs.push(v),
            None => return Ok(EmbedOutcome::NotFound(NotFoundReason::NoRichNeighbor { position: pos })),
        }
    }
    let pattern = BipartitePattern::even_cycle(t)?;
    Ok(greedy_y(h, &pattern, xs))
}

/// Greedy embedding of `p` with `X` placed on the smallest vertices of
/// `core`.
pub fn embed_from_rich_core(h: &UniformHypergraph, p: &BipartitePattern, core: &[Vertex]) -> Result<EmbedOutcome> {
    let needed = p.expanded_order(h.uniformity());
    if needed > h.vertex_count() {
        return Err(Error::PatternTooLarge { needed, available: h.vertex_count() });
    }
    if let Some(&v) = core.iter().find(|&&v| v as usize >= h.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: v as u64, n: h.vertex_count() });
    }
    let mut sorted = core.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < p.x_size() {
        return Ok(EmbedOutcome::NotFound(NotFoundReason::CoreTooSmall { needed: p.x_size(), available: sorted.len() }));
    }
    sorted.truncate(p.x_size());
    Ok(greedy_y(h, p, sorted))
}

fn greedy_y(h: &UniformHypergraph, p: &BipartitePattern, xs: Vec<Vertex>) -> EmbedOutcome {
    let idx = h.codegree_index();
    let mut used = vec![false; h.vertex_count()];
    xs.iter().for_each(|&x| used[x as usize] = true);
    let mut ys = Vec::with_capacity(p.y_count());
    for y in 0..p.y_count() {
        let nbrs = p.y_neighbors(y);
        let mut acc = idx.link_bits(xs[nbrs[0]]).clone();
        for &x in &nbrs[1..] {
            acc.intersect_with(idx.link_bits(xs[x]));
        }
        // facet ids follow lexicographic order of the sets
        let pick = acc.ones().map(|id| idx.facet(id as u32)).find(|f| f.iter().all(|&w| !used[w as usize]));
        match pick {
            Some(f) => {
                f.iter().for_each(|&w| used[w as usize] = true);
                ys.push(f.to_vec());
            }
            None => return EmbedOutcome::NotFound(NotFoundReason::Blocked { y }),
        }
    }
    let emb = PatternEmbedding { x_images: xs, y_images: ys };
    debug_assert!(emb.validate(h, p));
    EmbedOutcome::Found(emb)
}

/// True when every `s`-subset of `core` is `t`-rich.
pub fn is_rich_core(h: &UniformHypergraph, core: &[Vertex], s: usize, t: usize, budget: &Budget) -> Result<bool> {
    for set in core.iter().copied().combinations(s) {
        if is_t_rich(h, &set, t, budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
