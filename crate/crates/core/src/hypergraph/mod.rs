//! r-uniform hypergraphs with a co-degree index on (r-1)-sets.
//!
//! Edges are kept as a flat, lexicographically sorted array of ascending
//! vertex tuples. The co-degree index is built on first use and only
//! stores (r-1)-sets ("facets") contained in at least one edge; for every
//! vertex it also keeps a bitset over facet ids marking the facets that
//! complete the vertex to an edge, so common links are bitset
//! intersections.

mod io;
mod prune;

pub use io::{parse_hyp, write_hyp};

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, Debug)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    parts: Option<Vec<usize>>,
    edges: Vec<Vertex>,
    index: OnceLock<CoDegreeIndex>,
}

impl PartialEq for UniformHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.parts == other.parts && self.edges == other.edges
    }
}

impl Eq for UniformHypergraph {}

/// Co-degrees of every (r-1)-set contained in some edge.
#[derive(Clone, Debug)]
pub struct CoDegreeIndex {
    arity: usize,
    facets: Vec<Vertex>,
    codegree: Vec<u32>,
    lookup: HashMap<Box<[Vertex]>, u32>,
    link_bits: Vec<FixedBitSet>,
}

impl CoDegreeIndex {
    fn build(h: &UniformHypergraph) -> Self {
        let arity = h.r - 1;
        let mut all: Vec<Box<[Vertex]>> = Vec::with_capacity(h.edge_count() * h.r);
        for e in h.edges() {
            for skip in 0..h.r {
                all.push(omit(e, skip).into_boxed_slice());
            }
        }
        all.sort_unstable();
        let mut facets = Vec::new();
        let mut codegree: Vec<u32> = Vec::new();
        let mut lookup = HashMap::new();
        let mut prev: Option<&Box<[Vertex]>> = None;
        for f in &all {
            if prev == Some(f) {
                *codegree.last_mut().unwrap() += 1;
            } else {
                lookup.insert(f.clone(), codegree.len() as u32);
                facets.extend_from_slice(f);
                codegree.push(1);
                prev = Some(f);
            }
        }
        let mut link_bits = vec![FixedBitSet::with_capacity(codegree.len()); h.n];
        for e in h.edges() {
            for skip in 0..h.r {
                let id = lookup[omit(e, skip).as_slice()];
                link_bits[e[skip] as usize].insert(id as usize);
            }
        }
        CoDegreeIndex {
            arity,
            facets,
            codegree,
            lookup,
            link_bits,
        }
    }

    /// Number of indexed (r-1)-sets.
    pub fn len(&self) -> usize {
        self.codegree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codegree.is_empty()
    }

    pub fn facet(&self, id: u32) -> &[Vertex] {
        let a = self.arity;
        &self.facets[id as usize * a..(id as usize + 1) * a]
    }

    pub fn codegree_of(&self, id: u32) -> u32 {
        self.codegree[id as usize]
    }

    /// Id of a sorted (r-1)-set, if it lies in some edge.
    pub fn id_of(&self, set: &[Vertex]) -> Option<u32> {
        self.lookup.get(set).copied()
    }

    /// Facets `T` with `T + {v}` an edge.
    pub fn link_bits(&self, v: Vertex) -> &FixedBitSet {
        &self.link_bits[v as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Vertex], u32)> + '_ {
        (0..self.len() as u32).map(move |id| (self.facet(id), self.codegree_of(id)))
    }
}

/// The (r-1)-uniform link of a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkHypergraph {
    pub arity: usize,
    pub n: usize,
    pub sets: Vec<Vec<Vertex>>,
}

impl LinkHypergraph {
    pub fn edge_count(&self) -> usize {
        self.sets.len()
    }
}

pub(crate) fn omit(e: &[Vertex], skip: usize) -> Vec<Vertex> {
    e.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

impl UniformHypergraph {
    /// Validate, normalize and deduplicate an edge list.
    pub fn new<I, E>(r: usize, n: usize, edges: I, parts: Option<Vec<usize>>) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if r < 2 {
            return Err(Error::BadArity(format!("uniformity {r} < 2")));
        }
        if let Some(p) = &parts {
            let total: usize = p.iter().sum();
            if total > n || p.contains(&0) {
                return Err(Error::BadParameters(format!(
                    "part sizes {p:?} do not fit {n} vertices"
                )));
            }
        }
        let mut tuples: Vec<Vec<Vertex>> = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != r {
                return Err(Error::BadArity(format!("edge {e:?} has {} vertices, expected {r}", e.len())));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadArity(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n });
            }
            tuples.push(e);
        }
        tuples.sort_unstable();
        tuples.dedup();
        let h = UniformHypergraph {
            r,
            n,
            parts,
            edges: tuples.concat(),
            index: OnceLock::new(),
        };
        h.check_partite()?;
        Ok(h)
    }

    /// Build from an already sorted, deduplicated, valid flat edge array.
    pub(crate) fn from_sorted_flat(r: usize, n: usize, edges: Vec<Vertex>, parts: Option<Vec<usize>>) -> Self {
        debug_assert!(edges.len().is_multiple_of(r));
        UniformHypergraph {
            r,
            n,
            parts,
            edges,
            index: OnceLock::new(),
        }
    }

    fn check_partite(&self) -> Result<()> {
        let Some(parts) = &self.parts else {
            return Ok(());
        };
        let block = block_map(parts, self.n);
        for e in self.edges() {
            let mut seen = Vec::with_capacity(self.r);
            for &v in e {
                if let Some(b) = block[v as usize] {
                    if seen.contains(&b) {
                        return Err(Error::PartiteViolation(e.to_vec()));
                    }
                    seen.push(b);
                }
            }
        }
        Ok(())
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn parts(&self) -> Option<&[usize]> {
        self.parts.as_deref()
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i * self.r..(i + 1) * self.r]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> std::slice::ChunksExact<'_, Vertex> {
        self.edges.chunks_exact(self.r)
    }

    pub fn has_edge(&self, e: &[Vertex]) -> bool {
        if e.len() != self.r {
            return false;
        }
        let mut sorted = e.to_vec();
        sorted.sort_unstable();
        let (mut lo, mut hi) = (0, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(sorted.as_slice()) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn codegree_index(&self) -> &CoDegreeIndex {
        self.index.get_or_init(|| CoDegreeIndex::build(self))
    }

    fn check_vertices(&self, set: &[Vertex]) -> Result<()> {
        match set.iter().find(|&&v| v as usize >= self.n) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v as u64, n: self.n }),
            None => Ok(()),
        }
    }

    /// Number of vertices completing the (r-1)-set `set` to an edge.
    pub fn codegree(&self, set: &[Vertex]) -> Result<u32> {
        if set.len() != self.r - 1 {
            return Err(Error::BadArity(format!(
                "co-degree needs {} vertices, got {}",
                self.r - 1,
                set.len()
            )));
        }
        self.check_vertices(set)?;
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadArity(format!("{set:?} repeats a vertex")));
        }
        let idx = self.codegree_index();
        Ok(idx.id_of(&sorted).map_or(0, |id| idx.codegree_of(id)))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges().filter(|e| e.contains(&v)).count()
    }

    pub fn link(&self, v: Vertex) -> Result<LinkHypergraph> {
        self.check_vertices(&[v])?;
        let sets = self
            .edges()
            .filter_map(|e| e.iter().position(|&u| u == v).map(|i| omit(e, i)))
            .collect();
        Ok(LinkHypergraph {
            arity: self.r - 1,
            n: self.n,
            sets,
        })
    }

    /// Facet ids `T` disjoint from `set` such that `T + {u}` is an edge for
    /// every `u` in `set`, ascending.
    pub fn common_link(&self, set: &[Vertex]) -> Result<Vec<u32>> {
        self.check_vertices(set)?;
        let idx = self.codegree_index();
        let Some((&first, rest)) = set.split_first() else {
            return Ok((0..idx.len() as u32).collect());
        };
        let mut acc = idx.link_bits(first).clone();
        for &u in rest {
            acc.intersect_with(idx.link_bits(u));
        }
        Ok(acc
            .ones()
            .map(|id| id as u32)
            .filter(|&id| idx.facet(id).iter().all(|v| !set.contains(v)))
            .collect())
    }

    /// Same hypergraph with `extra` isolated vertices appended.
    pub fn padded(&self, extra: usize) -> Self {
        Self::from_sorted_flat(self.r, self.n + extra, self.edges.clone(), self.parts.clone())
    }

    /// Keep only the edges for which `keep` returns true.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[Vertex]) -> bool) -> Self {
        let edges = self.edges().filter(|e| keep(e)).flatten().copied().collect();
        Self::from_sorted_flat(self.r, self.n, edges, self.parts.clone())
    }

    pub fn edge_list(&self) -> Vec<Vec<Vertex>> {
        self.edges().map(<[Vertex]>::to_vec).collect()
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn is_subhypergraph_of(&self, other: &UniformHypergraph) -> bool {
        self.edges().all(|e| other.has_edge(e))
    }
}

fn block_map(parts: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    let mut start = 0;
    for (b, &size) in parts.iter().enumerate() {
        for slot in &mut out[start..start + size] {
            *slot = Some(b);
        }
        start += size;
    }
    out
}

/// All r-subsets of `0..n`.
pub fn complete(r: usize, n: usize) -> UniformHypergraph {
    let edges = combinations(n, r);
    UniformHypergraph::new(r, n, edges, None).expect("complete hypergraph is valid")
}

/// All r-subsets of `0..n` meeting `centers`.
pub fn through(r: usize, n: usize, centers: &[Vertex]) -> UniformHypergraph {
    let edges = combinations(n, r)
        .into_iter()
        .filter(|e| e.iter().any(|v| centers.contains(v)));
    UniformHypergraph::new(r, n, edges, None).expect("valid edges")
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<Vertex> = (0..k as Vertex).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
