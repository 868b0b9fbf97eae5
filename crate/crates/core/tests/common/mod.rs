#![allow(dead_code)]

use dso_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random directed graph: a Hamiltonian-ish backbone of `n / 2` arcs for
/// some long paths, then uniform arcs up to `m`, weights in `1..=max_w`.
pub fn random_graph(n: usize, m: usize, max_w: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    for w in perm.windows(2).take(n / 2) {
        edges.push((w[0], w[1], rng.random_range(1..=u64::from(max_w))));
    }
    while edges.len() < m {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            edges.push((a, b, rng.random_range(1..=u64::from(max_w))));
        }
    }
    Graph::new(n, max_w, true, edges).unwrap()
}

pub fn queries(g: &Graph) -> impl Iterator<Item = (usize, usize, dso_core::Failure)> + '_ {
    let n = g.vertex_count();
    g.failures().flat_map(move |f| {
        (0..n).flat_map(move |u| (0..n).map(move |v| (u, v, f))).filter(move |&(u, v, f)| {
            f != dso_core::Failure::Vertex(u) && f != dso_core::Failure::Vertex(v)
        })
    })
}
