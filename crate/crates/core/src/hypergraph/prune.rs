//! Co-degree pruning to the maximal D-core.

use super::{omit, UniformHypergraph, Vertex};

impl UniformHypergraph {
    /// Repeatedly delete every edge containing an (r-1)-set of co-degree
    /// below `d`. The result is the unique maximal edge set in which every
    /// (r-1)-subset of every edge has co-degree at least `d`.
    pub fn codegree_prune(&self, d: u32) -> UniformHypergraph {
        self.codegree_prune_by(d, |len| len - 1)
    }

    /// Pruning with a caller-chosen processing order: `pick(len)` returns
    /// the position in the pending queue to process next. The fixpoint does
    /// not depend on the order.
    pub fn codegree_prune_by(&self, d: u32, mut pick: impl FnMut(usize) -> usize) -> UniformHypergraph {
        let idx = self.codegree_index();
        let r = self.r;
        let m = self.edge_count();
        let facet_count = idx.len();

        // edge -> its r facet ids, facet -> edges containing it (CSR)
        let mut edge_facets = Vec::with_capacity(m * r);
        for e in self.edges() {
            for skip in 0..r {
                edge_facets.push(idx.id_of(&omit(e, skip)).expect("facet indexed"));
            }
        }
        let mut start = vec![0usize; facet_count + 1];
        for &f in &edge_facets {
            start[f as usize + 1] += 1;
        }
        for i in 0..facet_count {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut facet_edges = vec![0u32; edge_facets.len()];
        for (pos, &f) in edge_facets.iter().enumerate() {
            facet_edges[fill[f as usize]] = (pos / r) as u32;
            fill[f as usize] += 1;
        }

        let mut count: Vec<u32> = (0..facet_count as u32).map(|f| idx.codegree_of(f)).collect();
        let mut queued = vec![false; facet_count];
        let mut alive = vec![true; m];
        let mut pending: Vec<u32> = Vec::new();
        for f in 0..facet_count {
            if count[f] < d {
                queued[f] = true;
                pending.push(f as u32);
            }
        }
        while !pending.is_empty() {
            let at = pick(pending.len());
            let f = pending.swap_remove(at) as usize;
            for &e in &facet_edges[start[f]..start[f + 1]] {
                let e = e as usize;
                if !alive[e] {
                    continue;
                }
                alive[e] = false;
                for &g in &edge_facets[e * r..(e + 1) * r] {
                    let g = g as usize;
                    count[g] -= 1;
                    if count[g] < d && count[g] > 0 && !queued[g] {
                        queued[g] = true;
                        pending.push(g as u32);
                    }
                }
            }
        }

        let edges: Vec<Vertex> = self
            .edges()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .flat_map(|(e, _)| e.iter().copied())
            .collect();
        UniformHypergraph::from_sorted_flat(r, self.n, edges, self.parts.clone())
    }
}
