//! Slow, obviously-correct references: replacement distances by running
//! Dijkstra on `G − f`, and canonical paths computed directly from their
//! inductive definition. Tests and the CLI verifier compare against these.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{Failure, Graph, GraphView, PathLength, INF};
use crate::oracle::TruncatedOracle;
use crate::par;

/// Binary-heap Dijkstra from `src`; `INF` marks unreachable vertices.
fn dijkstra<V: GraphView + ?Sized>(view: &V, src: usize) -> Vec<u64> {
    let n = view.vertex_count();
    let mut dist = vec![INF; n];
    if !view.has_vertex(src) {
        return dist;
    }
    let mut heap = BinaryHeap::new();
    dist[src] = 0;
    heap.push(Reverse((0u64, src)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for (_, a) in view.out_arcs(x) {
            let y = a.head as usize;
            let nd = d + u64::from(a.weight);
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(Reverse((nd, y)));
            }
        }
    }
    dist
}

fn check_query(g: &Graph, u: usize, v: usize, f: Failure) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_failure(f)?;
    match f {
        Failure::Vertex(x) if x == u || x == v => Err(Error::EndpointFailure { vertex: x }),
        _ => Ok(()),
    }
}

/// `|uv⋄f|`: the shortest `u → v` distance in `G − f`.
pub fn brute_distance(g: &Graph, u: usize, v: usize, f: Failure) -> Result<PathLength> {
    check_query(g, u, v, f)?;
    let view = g.remove_failure(f)?;
    Ok(PathLength::from_raw(dijkstra(&view, u)[v]))
}

/// Plain distances of `g`, no failure.
pub fn brute_apsp(g: &Graph) -> Vec<Vec<PathLength>> {
    (0..g.vertex_count())
        .map(|s| dijkstra(g, s).into_iter().map(PathLength::from_raw).collect())
        .collect()
}

/// All-pairs distances of `G − f` for every failure `f`, computed eagerly.
pub struct ReplacementTable {
    n: usize,
    edges: usize,
    /// Failure-major: vertex failures `0..n`, then edge failures.
    dist: Vec<u64>,
}

impl ReplacementTable {
    pub fn build(g: &Graph) -> Self {
        let n = g.vertex_count();
        let failures: Vec<Failure> = g.failures().collect();
        let blocks = par::map_range(failures.len(), |i| {
            let view = g.remove_failure(failures[i]).expect("failure from the graph itself");
            let mut block = Vec::with_capacity(n * n);
            for s in 0..n {
                block.extend(dijkstra(&view, s));
            }
            block
        });
        ReplacementTable { n, edges: g.edge_count(), dist: blocks.concat() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, f: Failure) -> usize {
        match f {
            Failure::Vertex(x) => x,
            Failure::Edge(e) => {
                assert!(e < self.edges, "edge {e} out of range");
                self.n + e
            }
        }
    }

    pub(crate) fn raw(&self, u: usize, v: usize, f: Failure) -> u64 {
        let n = self.n;
        self.dist[self.slot(f) * n * n + u * n + v]
    }

    /// `|uv⋄f|`. A failed endpoint reads as unreachable.
    pub fn get(&self, u: usize, v: usize, f: Failure) -> PathLength {
        PathLength::from_raw(self.raw(u, v, f))
    }
}

/// The exact `r`-truncated oracle `‖uv⋄f‖_r`, read from a
/// [`ReplacementTable`].
pub struct ExactTruncated<'a> {
    pub table: &'a ReplacementTable,
    pub radius: u64,
}

impl TruncatedOracle for ExactTruncated<'_> {
    fn radius(&self) -> u64 {
        self.radius
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        if f == Failure::Vertex(u) || f == Failure::Vertex(v) {
            return self.radius;
        }
        if u == v {
            return 0;
        }
        self.table.raw(u, v, f).min(self.radius)
    }
}

/// Canonical paths built from the definition: `w(u, v)` is the largest
/// arc id `a` such that some shortest `u → v` path has all arc ids `≥ a`
/// and passes through `a`, and
/// `ρ(u, v) = ρ(u, tail(w)) · w · ρ(head(w), v)`.
pub struct CanonicalReference<'g> {
    graph: &'g Graph,
    dist: Vec<Vec<u64>>,
}

impl<'g> CanonicalReference<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let dist = (0..graph.vertex_count()).map(|s| dijkstra(graph, s)).collect();
        CanonicalReference { graph, dist }
    }

    pub fn dist(&self, u: usize, v: usize) -> PathLength {
        PathLength::from_raw(self.dist[u][v])
    }

    fn tight(&self, u: usize, v: usize, arc: usize) -> bool {
        let a = self.graph.arc(arc);
        let (x, y) = (a.tail as usize, a.head as usize);
        let (dux, dyv) = (self.dist[u][x], self.dist[y][v]);
        dux != INF && dyv != INF && dux + u64::from(a.weight) + dyv == self.dist[u][v]
    }

    /// `w(u, v)` as an arc id: the max over shortest paths of the
    /// smallest arc id on the path. `None` when `u == v` or unreachable.
    pub fn bottleneck(&self, u: usize, v: usize) -> Option<usize> {
        if u == v || self.dist[u][v] == INF {
            return None;
        }
        let n = self.graph.vertex_count();
        let mut order: Vec<usize> = (0..n).filter(|&x| self.dist[u][x] <= self.dist[u][v]).collect();
        order.sort_by_key(|&x| self.dist[u][x]);
        // best[x]: max over tight u → x prefixes of their smallest arc id.
        let mut best: Vec<Option<usize>> = vec![None; n];
        let mut reached = vec![false; n];
        reached[u] = true;
        for &x in &order {
            if !reached[x] {
                continue;
            }
            for &id in self.graph.out_arc_ids(x) {
                let id = id as usize;
                if !self.tight(u, v, id) {
                    continue;
                }
                let y = self.graph.arc(id).head as usize;
                let through = best[x].map_or(id, |b| b.min(id));
                reached[y] = true;
                if best[y].is_none_or(|b| through > b) {
                    best[y] = Some(through);
                }
            }
        }
        best[v]
    }

    /// `ρ(u, v)` as a vertex list; `Some([u])` when `u == v`.
    pub fn path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if self.dist[u][v] == INF {
            return None;
        }
        let mut out = vec![u];
        self.unfold(u, v, &mut out);
        Some(out)
    }

    fn unfold(&self, u: usize, v: usize, out: &mut Vec<usize>) {
        if u == v {
            return;
        }
        let w = self.bottleneck(u, v).expect("reachable pair has a bottleneck");
        let a = self.graph.arc(w);
        self.unfold(u, a.tail as usize, out);
        out.push(a.head as usize);
        self.unfold(a.head as usize, v, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    /// Every shortest path's arc ids, by exhaustive search.
    fn all_shortest(g: &Graph, dist: &[Vec<u64>], u: usize, v: usize) -> Vec<Vec<usize>> {
        fn go(g: &Graph, dist: &[Vec<u64>], u: usize, x: usize, v: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if x == v {
                out.push(cur.clone());
                return;
            }
            for &id in g.out_arc_ids(x) {
                let a = g.arc(id as usize);
                let y = a.head as usize;
                if dist[u][x] + u64::from(a.weight) == dist[u][y] && dist[y][v] != INF && dist[u][y] + dist[y][v] == dist[u][v] {
                    cur.push(id as usize);
                    go(g, dist, u, y, v, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(g, dist, u, u, v, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn fixture_distances() {
        let a = fixtures::fix_a();
        assert_eq!(brute_distance(&a, 0, 3, Failure::Vertex(2)).unwrap(), PathLength::Finite(4));
        let b = fixtures::fix_b();
        assert_eq!(brute_distance(&b, 0, 4, Failure::Edge(4)).unwrap(), PathLength::Finite(4));
        assert_eq!(brute_distance(&b, 0, 4, Failure::Vertex(3)).unwrap(), PathLength::Unreachable);
        assert!(brute_distance(&b, 0, 4, Failure::Vertex(4)).is_err());
    }

    #[test]
    fn table_matches_single_queries() {
        let g = fixtures::fix_b();
        let t = ReplacementTable::build(&g);
        for f in g.failures() {
            for u in 0..5 {
                for v in 0..5 {
                    if let Ok(d) = brute_distance(&g, u, v, f) {
                        assert_eq!(t.get(u, v, f), d);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_truncated_conventions() {
        let g = fixtures::fix_a();
        let t = ReplacementTable::build(&g);
        let o = ExactTruncated { table: &t, radius: 3 };
        assert_eq!(o.query(0, 3, Failure::Vertex(2)), 3);
        assert_eq!(o.query(0, 3, Failure::Vertex(3)), 3);
        assert_eq!(o.query(1, 1, Failure::Vertex(0)), 0);
    }

    #[test]
    fn fixture_canonical_paths() {
        let a = fixtures::fix_a();
        let c = CanonicalReference::new(&a);
        assert_eq!(c.bottleneck(0, 3), Some(2));
        assert_eq!(c.path(0, 3), Some(vec![0, 2, 3]));
        assert_eq!(c.path(1, 1), Some(vec![1]));
        let b = fixtures::fix_b();
        let c = CanonicalReference::new(&b);
        assert_eq!(c.bottleneck(1, 3), Some(4));
        assert_eq!(c.path(0, 4), Some(vec![0, 1, 3, 4]));
    }

    #[test]
    fn dag_maximin_matches_enumeration() {
        for g in [fixtures::fix_a(), fixtures::fix_b()] {
            let c = CanonicalReference::new(&g);
            let n = g.vertex_count();
            for u in 0..n {
                for v in 0..n {
                    let want = all_shortest(&g, &c.dist, u, v)
                        .iter()
                        .filter_map(|p| p.iter().copied().min())
                        .max();
                    assert_eq!(c.bottleneck(u, v), if u == v { None } else { want });
                }
            }
        }
    }
}
