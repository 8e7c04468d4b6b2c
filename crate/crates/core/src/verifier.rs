//! Exact searches for t-rich sets, `K_{s,t}^{(r)}` copies and general
//! `G_{X,Y}^{(r)}` embeddings.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, Vertex};

/// Shared node counter. `u64::MAX` means unlimited.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit {
            return Err(Error::BudgetExceeded { required: used as u128, budget: self.limit });
        }
        Ok(())
    }
}

/// `S` together with pairwise disjoint `T_1, ..., T_t`, each completing
/// every vertex of `S` to an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichCertificate {
    pub s_set: Vec<Vertex>,
    pub witnesses: Vec<Vec<Vertex>>,
}

impl RichCertificate {
    pub fn t(&self) -> usize {
        self.witnesses.len()
    }

    /// Re-checks the certificate with raw edge lookups.
    pub fn validate(&self, h: &UniformHypergraph) -> bool {
        let r = h.uniformity();
        let mut seen = vec![false; h.vertex_count()];
        let sets = std::iter::once(&self.s_set).chain(&self.witnesses);
        for set in sets {
            for &v in set {
                if v as usize >= seen.len() || seen[v as usize] {
                    return false;
                }
                seen[v as usize] = true;
            }
        }
        !self.s_set.is_empty()
            && self.witnesses.iter().all(|w| {
                w.len() == r - 1
                    && self.s_set.iter().all(|&u| {
                        let mut e = w.clone();
                        e.push(u);
                        h.has_edge(&e)
                    })
            })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("certificate s={} t={}\n", self.s_set.len(), self.t());
        for set in std::iter::once(&self.s_set).chain(&self.witnesses) {
            let _ = writeln!(out, "{}", join(set));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let (s, t) = parse_header(header).ok_or_else(|| Error::parse(1, "expected `certificate s=<s> t=<t>`"))?;
        let mut sets = Vec::new();
        for (i, line) in lines {
            let set: Vec<Vertex> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(i + 1, "bad vertex"))?;
            sets.push(set);
        }
        if sets.len() != t + 1 || sets[0].len() != s {
            return Err(Error::parse(1, "certificate shape does not match header"));
        }
        let s_set = sets.remove(0);
        Ok(RichCertificate { s_set, witnesses: sets })
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    if it.next()? != "certificate" {
        return None;
    }
    let s = it.next()?.strip_prefix("s=")?.parse().ok()?;
    let t = it.next()?.strip_prefix("t=")?.parse().ok()?;
    it.next().is_none().then_some((s, t))
}

fn join(set: &[Vertex]) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Finds `t` pairwise disjoint sets among `sets`, exactly.
fn disjoint_family(sets: &[&[Vertex]], n: usize, t: usize, budget: &Budget) -> Result<Option<Vec<usize>>> {
    if t == 0 {
        return Ok(Some(Vec::new()));
    }
    if sets.len() < t {
        return Ok(None);
    }
    let mut freq = vec![0u32; n];
    for s in sets {
        for &v in *s {
            freq[v as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (sets[i].iter().map(|&v| freq[v as usize]).min().unwrap_or(0), i));

    let mut used = vec![false; n];
    let mut greedy = Vec::new();
    for &i in &order {
        if sets[i].iter().all(|&v| !used[v as usize]) {
            sets[i].iter().for_each(|&v| used[v as usize] = true);
            greedy.push(i);
            if greedy.len() == t {
                greedy.sort_unstable();
                return Ok(Some(greedy));
            }
        }
    }

    used.iter_mut().for_each(|u| *u = false);
    let mut chosen = Vec::new();
    if backtrack(sets, &order, 0, t, &mut used, &mut chosen, budget)? {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn backtrack(
    sets: &[&[Vertex]],
    order: &[usize],
    pos: usize,
    t: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    budget: &Budget,
) -> Result<bool> {
    if chosen.len() == t {
        return Ok(true);
    }
    budget.tick()?;
    let need = t - chosen.len();
    let free = |used: &[bool], i: usize| sets[i].iter().all(|&v| !used[v as usize]);
    let open: Vec<usize> = order[pos..].iter().copied().filter(|&i| free(used, i)).collect();
    if open.len() < need {
        return Ok(false);
    }
    let width = sets[open[0]].len().max(1);
    let mut touched = FixedBitSet::with_capacity(used.len());
    open.iter().flat_map(|&i| sets[i]).for_each(|&v| touched.insert(v as usize));
    if touched.count_ones(..) / width < need {
        return Ok(false);
    }
    for (j, &i) in order.iter().enumerate().skip(pos) {
        if !free(used, i) {
            continue;
        }
        sets[i].iter().for_each(|&v| used[v as usize] = true);
        chosen.push(i);
        if backtrack(sets, order, j + 1, t, used, chosen, budget)? {
            return Ok(true);
        }
        chosen.pop();
        sets[i].iter().for_each(|&v| used[v as usize] = false);
    }
    Ok(false)
}

fn normalize(h: &UniformHypergraph, set: &[Vertex]) -> Result<Vec<Vertex>> {
    if let Some(&v) = set.iter().find(|&&v| v as usize >= h.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: v as u64, n: h.vertex_count() });
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

fn rich_from_link(h: &UniformHypergraph, s_set: Vec<Vertex>, link: &[u32], t: usize, budget: &Budget) -> Result<Option<RichCertificate>> {
    let idx = h.codegree_index();
    let sets: Vec<&[Vertex]> = link.iter().map(|&id| idx.facet(id)).collect();
    Ok(disjoint_family(&sets, h.vertex_count(), t, budget)?.map(|picked| RichCertificate {
        s_set,
        witnesses: picked.into_iter().map(|i| sets[i].to_vec()).collect(),
    }))
}

pub fn is_t_rich(h: &UniformHypergraph, set: &[Vertex], t: usize, budget: &Budget) -> Result<Option<RichCertificate>> {
    let s = normalize(h, set)?;
    if s.is_empty() || t == 0 {
        return Err(Error::BadParameters("need a nonempty set and t >= 1".into()));
    }
    let link = h.common_link(&s)?;
    rich_from_link(h, s, &link, t, budget)
}

/// Lexicographically first s-set that is t-rich, or `None` once the
/// search is complete.
pub fn find_kst(h: &UniformHypergraph, s: usize, t: usize, budget: &Budget) -> Result<Option<RichCertificate>> {
    if s == 0 || t == 0 {
        return Err(Error::BadParameters("need s, t >= 1".into()));
    }
    let n = h.vertex_count();
    if s > n {
        return Ok(None);
    }
    let idx = h.codegree_index();
    let first = (0..=(n - s) as Vertex).into_par_iter().filter(|&v| idx.link_bits(v).count_ones(..) >= t);
    first
        .map(|v| {
            let mut set = vec![v];
            let bits = idx.link_bits(v).clone();
            kst_descend(h, s, t, &mut set, &bits, budget).transpose()
        })
        .find_map_first(|x| x)
        .transpose()
}

fn kst_descend(h: &UniformHypergraph, s: usize, t: usize, set: &mut Vec<Vertex>, acc: &FixedBitSet, budget: &Budget) -> Result<Option<RichCertificate>> {
    budget.tick()?;
    let idx = h.codegree_index();
    if set.len() == s {
        let link: Vec<u32> = acc
            .ones()
            .map(|id| id as u32)
            .filter(|&id| idx.facet(id).iter().all(|v| !set.contains(v)))
            .collect();
        return rich_from_link(h, set.clone(), &link, t, budget);
    }
    let n = h.vertex_count();
    let last = *set.last().unwrap();
    for u in last + 1..=(n - (s - set.len())) as Vertex {
        let mut next = acc.clone();
        next.intersect_with(idx.link_bits(u));
        if next.count_ones(..) < t {
            continue;
        }
        set.push(u);
        let found = kst_descend(h, s, t, set, &next, budget)?;
        set.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// A bipartite graph with ordered parts `X = 0..x_size` and `Y`, given by
/// each Y-vertex's neighbors in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartitePattern {
    x_size: usize,
    y_adj: Vec<Vec<usize>>,
}

impl BipartitePattern {
    pub fn new(x_size: usize, y_adj: Vec<Vec<usize>>) -> Result<Self> {
        let mut y_adj = y_adj;
        for (i, adj) in y_adj.iter_mut().enumerate() {
            adj.sort_unstable();
            adj.dedup();
            if adj.is_empty() {
                return Err(Error::BadParameters(format!("Y-vertex {i} has no neighbors")));
            }
            if let Some(&x) = adj.iter().find(|&&x| x >= x_size) {
                return Err(Error::BadParameters(format!("Y-vertex {i} names X-vertex {x} >= {x_size}")));
            }
        }
        Ok(BipartitePattern { x_size, y_adj })
    }

    pub fn complete(s: usize, t: usize) -> Self {
        BipartitePattern { x_size: s, y_adj: vec![(0..s).collect(); t] }
    }

    /// The cycle `C_{2t}` with alternating bipartition; `y_i ~ x_i, x_{i+1}`.
    pub fn even_cycle(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::BadParameters("a cycle needs t >= 2".into()));
        }
        Self::new(t, (0..t).map(|i| vec![i, (i + 1) % t]).collect())
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_count(&self) -> usize {
        self.y_adj.len()
    }

    pub fn y_neighbors(&self, i: usize) -> &[usize] {
        &self.y_adj[i]
    }

    /// `|X| + |Y| (r-1)`.
    pub fn expanded_order(&self, r: usize) -> usize {
        self.x_size + self.y_adj.len() * (r - 1)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("pattern {} {}\n", self.x_size, self.y_adj.len());
        for adj in &self.y_adj {
            let _ = writeln!(out, "{}", adj.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        }
        out
    }

    /// Header `pattern <x_size> <y_count>`, then one line of X-neighbors
    /// per Y-vertex.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty pattern"))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        let (x_size, y_count) = match f.as_slice() {
            ["pattern", x, y] => (
                x.parse().map_err(|_| Error::parse(1, "bad X size"))?,
                y.parse::<usize>().map_err(|_| Error::parse(1, "bad Y count"))?,
            ),
            _ => return Err(Error::parse(1, "expected `pattern <x_size> <y_count>`")),
        };
        let mut adj = Vec::new();
        for (i, line) in lines {
            let row: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(i + 1, "bad X index"))?;
            adj.push(row);
        }
        if adj.len() != y_count {
            return Err(Error::parse(1, format!("header promises {y_count} Y-vertices, found {}", adj.len())));
        }
        Self::new(x_size, adj)
    }
}

/// Images of the X-vertices and the (r-1)-sets standing in for each Y-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEmbedding {
    pub x_images: Vec<Vertex>,
    pub y_images: Vec<Vec<Vertex>>,
}

impl PatternEmbedding {
    pub fn validate(&self, h: &UniformHypergraph, p: &BipartitePattern) -> bool {
        let r = h.uniformity();
        if self.x_images.len() != p.x_size || self.y_images.len() != p.y_count() {
            return false;
        }
        let mut seen = vec![false; h.vertex_count()];
        for &v in self.x_images.iter().chain(self.y_images.iter().flatten()) {
            if v as usize >= seen.len() || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        self.y_images.iter().enumerate().all(|(i, y)| {
            y.len() == r - 1
                && p.y_neighbors(i).iter().all(|&x| {
                    let mut e = y.clone();
                    e.push(self.x_images[x]);
                    h.has_edge(&e)
                })
        })
    }

    /// Certificate-style text with a leading `pattern` line; the X images
    /// come first, then one line per Y image.
    pub fn to_text(&self, p: &BipartitePattern) -> String {
        let mut out = format!("pattern {} {}\n", p.x_size, p.y_count());
        let _ = writeln!(out, "{}", join(&self.x_images));
        for y in &self.y_images {
            let _ = writeln!(out, "{}", join(y));
        }
        out
    }
}

pub fn find_pattern(h: &UniformHypergraph, p: &BipartitePattern, budget: &Budget) -> Result<Option<PatternEmbedding>> {
    let n = h.vertex_count();
    let needed = p.expanded_order(h.uniformity());
    if needed > n {
        return Err(Error::PatternTooLarge { needed, available: n });
    }
    let mut y_order: Vec<usize> = (0..p.y_count()).collect();
    y_order.sort_by_key(|&i| (std::cmp::Reverse(p.y_neighbors(i).len()), i));
    // Y-vertices become checkable once their largest X-neighbor is placed
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); p.x_size];
    for i in 0..p.y_count() {
        ready[*p.y_neighbors(i).last().unwrap()].push(i);
    }
    let mut search = PatternSearch {
        h,
        p,
        budget,
        y_order,
        ready,
        x_images: Vec::with_capacity(p.x_size),
        in_x: vec![false; n],
        candidates: vec![Vec::new(); p.y_count()],
        used: vec![false; n],
        y_images: vec![0; p.y_count()],
    };
    search.place_x()
}

struct PatternSearch<'a> {
    h: &'a UniformHypergraph,
    p: &'a BipartitePattern,
    budget: &'a Budget,
    y_order: Vec<usize>,
    ready: Vec<Vec<usize>>,
    x_images: Vec<Vertex>,
    in_x: Vec<bool>,
    candidates: Vec<Vec<u32>>,
    used: Vec<bool>,
    y_images: Vec<u32>,
}

impl PatternSearch<'_> {
    fn place_x(&mut self) -> Result<Option<PatternEmbedding>> {
        self.budget.tick()?;
        let j = self.x_images.len();
        if j == self.p.x_size {
            return self.finish_x();
        }
        let idx = self.h.codegree_index();
        for v in 0..self.h.vertex_count() as Vertex {
            if self.in_x[v as usize] {
                continue;
            }
            self.x_images.push(v);
            self.in_x[v as usize] = true;
            let mut alive = true;
            for yi in self.ready[j].clone() {
                let nbrs = self.p.y_neighbors(yi);
                let mut acc = idx.link_bits(self.x_images[nbrs[0]]).clone();
                for &x in &nbrs[1..] {
                    acc.intersect_with(idx.link_bits(self.x_images[x]));
                }
                let cand: Vec<u32> = acc
                    .ones()
                    .map(|id| id as u32)
                    .filter(|&id| idx.facet(id).iter().all(|&w| !self.in_x[w as usize]))
                    .collect();
                if cand.is_empty() {
                    alive = false;
                    break;
                }
                self.candidates[yi] = cand;
            }
            if alive {
                if let Some(found) = self.place_x()? {
                    return Ok(Some(found));
                }
            }
            self.in_x[v as usize] = false;
            self.x_images.pop();
        }
        Ok(None)
    }

    fn finish_x(&mut self) -> Result<Option<PatternEmbedding>> {
        let idx = self.h.codegree_index();
        for yi in 0..self.p.y_count() {
            let in_x = &self.in_x;
            self.candidates[yi].retain(|&id| idx.facet(id).iter().all(|&w| !in_x[w as usize]));
            if self.candidates[yi].is_empty() {
                return Ok(None);
            }
        }
        if self.place_y(0)? {
            Ok(Some(PatternEmbedding {
                x_images: self.x_images.clone(),
                y_images: self.y_images.iter().map(|&id| idx.facet(id).to_vec()).collect(),
            }))
        } else {
            Ok(None)
        }
    }

    fn place_y(&mut self, pos: usize) -> Result<bool> {
        if pos == self.y_order.len() {
            return Ok(true);
        }
        self.budget.tick()?;
        let idx = self.h.codegree_index();
        let yi = self.y_order[pos];
        for c in 0..self.candidates[yi].len() {
            let id = self.candidates[yi][c];
            let facet = idx.facet(id);
            if facet.iter().any(|&w| self.used[w as usize]) {
                continue;
            }
            facet.iter().for_each(|&w| self.used[w as usize] = true);
            self.y_images[yi] = id;
            if self.place_y(pos + 1)? {
                return Ok(true);
            }
            facet.iter().for_each(|&w| self.used[w as usize] = false);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, through};

    fn star(n: usize) -> UniformHypergraph {
        through(3, n, &[0])
    }

    #[test]
    fn complete_pair_is_rich() {
        for t in 1..5 {
            let h = complete(3, 2 + 2 * t);
            let cert = is_t_rich(&h, &[0, 1], t, &Budget::unlimited()).unwrap().unwrap();
            assert_eq!(cert.t(), t);
            assert!(cert.validate(&h));
            assert!(is_t_rich(&h, &[0, 1], t + 1, &Budget::unlimited()).unwrap().is_none());
        }
    }

    #[test]
    fn star_pair_is_one_rich_only() {
        let h = star(8);
        let b = Budget::unlimited();
        let cert = is_t_rich(&h, &[1, 2], 1, &b).unwrap().unwrap();
        assert!(cert.witnesses[0].contains(&0));
        assert!(is_t_rich(&h, &[1, 2], 2, &b).unwrap().is_none());
    }

    #[test]
    fn single_edge_single_vertex() {
        let h = UniformHypergraph::new(3, 3, [[0, 1, 2]], None).unwrap();
        let cert = is_t_rich(&h, &[0], 1, &Budget::unlimited()).unwrap().unwrap();
        assert_eq!(cert.witnesses, vec![vec![1, 2]]);
        assert!(matches!(is_t_rich(&h, &[5], 1, &Budget::unlimited()), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn kst_examples() {
        let b = Budget::unlimited();
        assert!(find_kst(&star(8), 2, 2, &b).unwrap().is_none());
        let h = complete(3, 8);
        let cert = find_kst(&h, 2, 3, &b).unwrap().unwrap();
        assert_eq!(cert.s_set, vec![0, 1]);
        assert!(cert.validate(&h));
    }

    #[test]
    fn kst_returns_lexicographically_first() {
        // only {3,5} can be 2-rich
        let edges = [[3, 0, 1], [5, 0, 1], [3, 2, 4], [5, 2, 4], [0, 2, 6]];
        let h = UniformHypergraph::new(3, 7, edges, None).unwrap();
        let cert = find_kst(&h, 2, 2, &Budget::unlimited()).unwrap().unwrap();
        assert_eq!(cert.s_set, vec![3, 5]);
    }

    #[test]
    fn budget_is_distinct_from_free() {
        let h = complete(3, 9);
        let r = find_kst(&h, 3, 3, &Budget::new(2));
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 2, .. })));
    }

    #[test]
    fn certificate_text_roundtrip() {
        let h = complete(3, 8);
        let cert = find_kst(&h, 2, 3, &Budget::unlimited()).unwrap().unwrap();
        let text = cert.to_text();
        assert_eq!(text, "certificate s=2 t=3\n0 1\n2 3\n4 5\n6 7\n");
        assert_eq!(RichCertificate::parse(&text).unwrap(), cert);
        assert!(RichCertificate::parse("certificate s=2 t=3\n0 1\n").is_err());
    }

    #[test]
    fn tampered_certificate_fails() {
        let h = star(8);
        let bad = RichCertificate { s_set: vec![1, 2], witnesses: vec![vec![0, 3], vec![0, 4]] };
        assert!(!bad.validate(&h));
        let bad = RichCertificate { s_set: vec![1, 2], witnesses: vec![vec![3, 4]] };
        assert!(!bad.validate(&h));
    }

    #[test]
    fn cycle_absent_from_small_cover() {
        let b = Budget::unlimited();
        for t in 2..=3 {
            let centers: Vec<Vertex> = (0..t as Vertex - 1).collect();
            let h = through(3, 9, &centers);
            let c = BipartitePattern::even_cycle(t).unwrap();
            assert!(find_pattern(&h, &c, &b).unwrap().is_none());
            let full = complete(3, 9);
            let emb = find_pattern(&full, &c, &b).unwrap().unwrap();
            assert!(emb.validate(&full, &c));
        }
    }

    #[test]
    fn pattern_too_large() {
        let h = complete(3, 5);
        let p = BipartitePattern::complete(2, 2);
        assert_eq!(find_pattern(&h, &p, &Budget::unlimited()), Err(Error::PatternTooLarge { needed: 6, available: 5 }));
    }

    #[test]
    fn pattern_text_roundtrip() {
        let p = BipartitePattern::even_cycle(3).unwrap();
        let text = p.to_text();
        assert_eq!(text, "pattern 3 3\n0 1\n1 2\n0 2\n");
        assert_eq!(BipartitePattern::parse(&text).unwrap(), p);
        assert!(BipartitePattern::parse("pattern 2 1\n\n").is_err());
        assert!(BipartitePattern::new(2, vec![vec![]]).is_err());
        assert!(BipartitePattern::new(2, vec![vec![2]]).is_err());
    }

    fn brute_max(sets: &[Vec<Vertex>]) -> usize {
        let mut best = 0;
        for mask in 0u32..1 << sets.len() {
            let picked: Vec<&Vec<Vertex>> = (0..sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| &sets[i]).collect();
            let mut all: Vec<Vertex> = picked.iter().flat_map(|s| s.iter().copied()).collect();
            let total = all.len();
            all.sort_unstable();
            all.dedup();
            if all.len() == total {
                best = best.max(picked.len());
            }
        }
        best
    }

    proptest::proptest! {
        #[test]
        fn disjoint_family_is_exact(raw in proptest::collection::btree_set((0u32..7, 0u32..7), 0..12)) {
            let sets: Vec<Vec<Vertex>> = raw.into_iter().filter(|(a, b)| a < b).map(|(a, b)| vec![a, b]).collect();
            let refs: Vec<&[Vertex]> = sets.iter().map(Vec::as_slice).collect();
            let best = brute_max(&sets);
            for t in 1..=4 {
                let got = disjoint_family(&refs, 7, t, &Budget::unlimited()).unwrap();
                proptest::prop_assert_eq!(got.is_some(), t <= best);
            }
        }
    }
}
