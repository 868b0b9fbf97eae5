//! Seeded random graphs in the Erdős–Rényi `G(n, m)` model.

use std::collections::HashSet;

use dso_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `m` distinct vertex pairs chosen uniformly (unordered when undirected),
/// no self-loops, weights uniform in `1..=max_weight`. The edge order is the
/// order pairs were drawn in.
pub fn generate(n: usize, m: usize, max_weight: u32, directed: bool, seed: u64) -> Result<Graph> {
    if max_weight == 0 {
        return Err(Error::Input("maximum weight must be at least 1".into()));
    }
    let pairs = n * n.saturating_sub(1);
    let capacity = if directed { pairs } else { pairs / 2 };
    if m > capacity {
        return Err(Error::Input(format!("{m} edges do not fit on {n} vertices (at most {capacity})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key = |a: usize, b: usize| if directed { (a, b) } else { (a.min(b), a.max(b)) };
    let chosen: Vec<(usize, usize)> = if 2 * m <= capacity {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a != b && seen.insert(key(a, b)) {
                out.push((a, b));
            }
        }
        out
    } else {
        let mut all: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && key(a, b) == (a, b)).collect();
        let (head, _) = all.partial_shuffle(&mut rng, m);
        head.to_vec()
    };
    let edges: Vec<(usize, usize, u64)> =
        chosen.into_iter().map(|(a, b)| (a, b, rng.random_range(1..=u64::from(max_weight)))).collect();
    Ok(Graph::new(n, max_weight, directed, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::dump_graph;

    #[test]
    fn same_seed_same_bytes() {
        let a = dump_graph(&generate(4, 6, 5, true, 11).unwrap());
        let b = dump_graph(&generate(4, 6, 5, true, 11).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, dump_graph(&generate(4, 6, 5, true, 12).unwrap()));
    }

    #[test]
    fn unit_weights() {
        let g = generate(10, 30, 1, true, 3).unwrap();
        assert!(g.edges().iter().all(|e| e.weight == 1));
    }

    #[test]
    fn complete_digraph() {
        let g = generate(5, 20, 3, true, 0).unwrap();
        let mut pairs: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 20);
        assert!(generate(5, 21, 3, true, 0).is_err());
    }

    #[test]
    fn undirected_pairs_are_distinct() {
        let g = generate(6, 15, 2, false, 4).unwrap();
        let mut pairs: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.tail.min(e.head), e.tail.max(e.head))).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 15);
        assert!(generate(6, 16, 2, false, 4).is_err());
    }
}
