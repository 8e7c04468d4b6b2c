#![allow(dead_code)]

use kst_core::hypergraph::{combinations, UniformHypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each r-subset of `0..n` independently with probability `prob`.
pub fn random_hypergraph(r: usize, n: usize, prob: f64, rng: &mut ChaCha8Rng) -> UniformHypergraph {
    let edges: Vec<_> = combinations(n, r).into_iter().filter(|_| rng.random_bool(prob)).collect();
    UniformHypergraph::new(r, n, edges, None).unwrap()
}

/// Rescan every edge until no edge has a deficient (r-1)-subset.
pub fn naive_prune(h: &UniformHypergraph, d: u32) -> Vec<Vec<u32>> {
    let mut edges = h.edge_list();
    loop {
        let codeg = |f: &[u32], edges: &[Vec<u32>]| edges.iter().filter(|e| f.iter().all(|v| e.contains(v))).count() as u32;
        let keep: Vec<Vec<u32>> = edges
            .iter()
            .filter(|e| (0..e.len()).all(|i| {
                let f: Vec<u32> = e.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                codeg(&f, &edges) >= d
            }))
            .cloned()
            .collect();
        if keep.len() == edges.len() {
            return keep;
        }
        edges = keep;
    }
}
