//! Single-source shortest paths over a [`GraphView`].

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::{GraphView, INF};
use crate::par;

/// Exact distances from `src`; `INF` where unreachable or `src` is removed.
pub(crate) fn distances_from<V: GraphView + ?Sized>(view: &V, src: usize) -> Vec<u64> {
    let n = view.vertex_count();
    let mut dist = vec![INF; n];
    if !view.has_vertex(src) {
        return dist;
    }
    dist[src] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, src as u32)));
    while let Some(Reverse((d, u))) = heap.pop() {
        let u = u as usize;
        if d > dist[u] {
            continue;
        }
        for (_, arc) in view.out_arcs(u) {
            let nd = d + u64::from(arc.weight);
            let h = arc.head as usize;
            if nd < dist[h] {
                dist[h] = nd;
                heap.push(Reverse((nd, arc.head)));
            }
        }
    }
    dist
}

/// Row-major `n × n` exact distance matrix.
pub(crate) fn all_pairs<V: GraphView + ?Sized>(view: &V) -> Vec<u64> {
    let n = view.vertex_count();
    par::map_range(n, |u| distances_from(view, u)).concat()
}

/// Fills `out` with `min{dist(src, ·), radius}` using a bucket queue.
///
/// Only distances strictly below `radius` are ever settled, so the cost is
/// bounded by the arcs leaving the radius ball.
pub(crate) fn capped_from<V: GraphView + ?Sized>(
    view: &V,
    src: usize,
    radius: u32,
    out: &mut [u32],
    buckets: &mut Vec<Vec<u32>>,
) {
    out.fill(radius);
    if !view.has_vertex(src) {
        return;
    }
    let r = radius as usize;
    if buckets.len() < r {
        buckets.resize_with(r, Vec::new);
    }
    if r == 0 {
        return;
    }
    out[src] = 0;
    buckets[0].push(src as u32);
    for d in 0..r {
        while let Some(u) = buckets[d].pop() {
            let u = u as usize;
            if out[u] as usize != d {
                continue;
            }
            for (_, arc) in view.out_arcs(u) {
                let nd = d + arc.weight as usize;
                let h = arc.head as usize;
                if nd < r && nd < out[h] as usize {
                    out[h] = nd as u32;
                    buckets[nd].push(arc.head);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn fixture_distances() {
        let a = fixtures::fix_a();
        assert_eq!(distances_from(&a, 0), [0, 1, 2, 3]);
        let b = fixtures::fix_b();
        assert_eq!(distances_from(&b, 0)[4], 4);
        assert_eq!(distances_from(&b, 4)[0], INF);
    }

    #[test]
    fn capped_matches_exact_below_radius() {
        let g = fixtures::fix_a();
        let mut buckets = Vec::new();
        let mut row = vec![0u32; 4];
        for radius in 0..6u32 {
            capped_from(&g, 0, radius, &mut row, &mut buckets);
            let exact = distances_from(&g, 0);
            for v in 0..4 {
                assert_eq!(u64::from(row[v]), exact[v].min(u64::from(radius)));
            }
        }
    }
}
