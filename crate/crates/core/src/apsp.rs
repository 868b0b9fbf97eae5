//! Canonical tie-broken all-pairs shortest paths.
//!
//! Arcs are totally ordered by id. The bottleneck of a path is its smallest
//! arc; `w(u, v)` is the largest bottleneck over all shortest `u → v` paths,
//! and the canonical path `ρ(u, v)` is `ρ(u, u*) · w(u, v) · ρ(v*, v)` where
//! `w(u, v) = (u* → v*)`. Canonical paths are consistent under taking
//! subpaths and under deleting anything they avoid, so they form one
//! outgoing and one incoming shortest-path tree per vertex.
//!
//! The bottleneck table is filled in distance bands. Pairs at distance at
//! most `2M` are handled one distance value at a time with every vertex as a
//! bridge; after that each band `(R, ⌊3R/2⌋]` bridges through a random vertex
//! sample drawn with probability `min{1, c_H · M · ln n / R}`. Every band is
//! checked against a last-arc optimality certificate and resampled on failure.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dijkstra;
use crate::error::{Error, Result};
use crate::graph::{Failure, Graph, GraphView, PathLength, INF, NONE};
use crate::par;
use crate::rng::{self, Purpose};

/// Row-major `n × n` matrix of exact distances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    raw: Vec<u64>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> PathLength {
        PathLength::from_raw(self.raw[u * self.n + v])
    }

    #[inline]
    /// Adds one to the first finite off-diagonal entry.
    pub(crate) fn bump_first_finite(&mut self) -> bool {
        let n = self.n;
        match self.raw.iter().enumerate().position(|(i, &d)| i / n != i % n && d != INF) {
            Some(i) => {
                self.raw[i] += 1;
                true
            }
            None => false,
        }
    }

    pub(crate) fn raw(&self, u: usize, v: usize) -> u64 {
        self.raw[u * self.n + v]
    }

    /// Largest finite off-diagonal entry (0 when there is none).
    pub fn max_finite(&self) -> u64 {
        self.raw.iter().copied().filter(|&d| d != INF).max().unwrap_or(0)
    }
}

/// Exact distances by Dijkstra from every source.
pub fn compute_distances<V: GraphView>(view: &V) -> DistanceMatrix {
    DistanceMatrix { n: view.vertex_count(), raw: dijkstra::all_pairs(view) }
}

/// A distance/bottleneck matrix pair used as one side of a
/// Distance-Max-Min product. `dist[i]` is `Unreachable` exactly where
/// `bottleneck[i]` is `None` (the `-∞` bottleneck).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgedMatrixPair {
    rows: usize,
    cols: usize,
    dist: Vec<u64>,
    bottleneck: Vec<Option<u32>>,
}

impl BridgedMatrixPair {
    pub fn new(
        rows: usize,
        cols: usize,
        dist: Vec<PathLength>,
        bottleneck: Vec<Option<u32>>,
    ) -> Result<Self> {
        if dist.len() != rows * cols || bottleneck.len() != rows * cols {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected {rows}x{cols} entries, got {} distances and {} bottlenecks",
                dist.len(),
                bottleneck.len()
            )));
        }
        if dist.iter().zip(&bottleneck).any(|(d, w)| d.is_finite() != w.is_some()) {
            return Err(Error::Invariant("finite distance must pair with a bottleneck arc".into()));
        }
        Ok(BridgedMatrixPair { rows, cols, dist: dist.into_iter().map(PathLength::raw).collect(), bottleneck })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// `W'[u, v] = max over h with D[u,h] + D'[h,v] = target[u,v] of
/// min{W[u,h], W'[h,v]}`, or `None` when no `h` qualifies or the target
/// entry is unreachable.
pub fn distance_max_min_product(
    left: &BridgedMatrixPair,
    right: &BridgedMatrixPair,
    target: &[PathLength],
) -> Result<Vec<Option<u32>>> {
    if left.cols != right.rows || target.len() != left.rows * right.cols {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{}x{} by {}x{} with a target of {} entries",
            left.rows,
            left.cols,
            right.rows,
            right.cols,
            target.len()
        )));
    }
    let raw: Vec<u64> = target.iter().map(|t| t.raw()).collect();
    Ok(product_raw(left, right, &raw))
}

fn product_raw(left: &BridgedMatrixPair, right: &BridgedMatrixPair, target: &[u64]) -> Vec<Option<u32>> {
    let (inner, cols) = (left.cols, right.cols);
    par::map_range(left.rows, |u| {
        let mut row = vec![None; cols];
        let ld = &left.dist[u * inner..(u + 1) * inner];
        let lw = &left.bottleneck[u * inner..(u + 1) * inner];
        for (v, slot) in row.iter_mut().enumerate() {
            let t = target[u * cols + v];
            if t == INF {
                continue;
            }
            let mut best = None;
            for h in 0..inner {
                let (a, b) = (ld[h], right.dist[h * cols + v]);
                if a == INF || b == INF || a + b != t {
                    continue;
                }
                best = best.max(lw[h].min(right.bottleneck[h * cols + v]));
            }
            *slot = best;
        }
        row
    })
    .concat()
}

/// Settings for the randomized bottleneck rounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApspConfig {
    /// `c_H` in the bridge sampling probability.
    pub bridge_constant: f64,
    pub seed: u64,
    pub retry_budget: u32,
}

impl Default for ApspConfig {
    fn default() -> Self {
        ApspConfig { bridge_constant: 3.0, seed: 0, retry_budget: 64 }
    }
}

/// Per-band bookkeeping of the bottleneck computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandRound {
    pub lower: u64,
    pub upper: u64,
    pub pairs: usize,
    pub bridges: usize,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckTable {
    pub n: usize,
    pub w: Vec<Option<u32>>,
    pub rounds: Vec<BandRound>,
}

impl BottleneckTable {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.w[u * self.n + v].map(|a| a as usize)
    }
}

/// Fills `w(u, v)` for every reachable pair `u ≠ v`.
pub fn compute_bottleneck_table<V: GraphView>(
    view: &V,
    dist: &DistanceMatrix,
    cfg: &ApspConfig,
) -> Result<BottleneckTable> {
    let n = view.vertex_count();
    let max_w = u64::from(view.base().max_weight());
    let ln_n = libm::log(n.max(2) as f64);

    let mut direct = vec![None; n * n];
    for u in 0..n {
        for (id, arc) in view.out_arcs(u) {
            let h = arc.head as usize;
            if dist.raw(u, h) == u64::from(arc.weight) {
                direct[u * n + h] = direct[u * n + h].max(Some(id as u32));
            }
        }
    }

    let mut w: Vec<Option<u32>> = vec![None; n * n];
    let mut rounds = Vec::new();
    let max_d = dist.max_finite();
    let mut known = 0u64;
    let mut round_idx = 0u64;
    while known < max_d {
        let next = if known < 2 * max_w { known + 1 } else { known * 3 / 2 };
        let band: Vec<(u32, u32)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| {
                let d = dist.raw(u, v);
                u != v && d != INF && d > known && d <= next
            })
            .map(|(u, v)| (u as u32, v as u32))
            .collect();
        if band.is_empty() {
            known = next;
            continue;
        }
        let prob = if known < 2 * max_w {
            1.0
        } else {
            (cfg.bridge_constant * max_w as f64 * ln_n / known as f64).min(1.0)
        };
        let mut target = vec![PathLength::Unreachable; n * n];
        for &(u, v) in &band {
            target[u as usize * n + v as usize] = dist.get(u as usize, v as usize);
        }
        let target: Vec<u64> = target.into_iter().map(PathLength::raw).collect();

        let mut attempts = 0;
        let bridges = loop {
            attempts += 1;
            let bridges: Vec<usize> = if prob >= 1.0 {
                (0..n).collect()
            } else {
                let mut rng = rng::stream(cfg.seed, Purpose::Bridging, (round_idx << 32) | u64::from(attempts));
                (0..n).filter(|_| rng.random_bool(prob)).collect()
            };
            let (left, right) = bridge_matrices(dist, &w, &bridges, known);
            let product = product_raw(&left, &right, &target);
            for &(u, v) in &band {
                let i = u as usize * n + v as usize;
                w[i] = direct[i].max(product[i]);
            }
            if band.iter().all(|&(u, v)| certificate_holds(view, dist, &w, u as usize, v as usize)) {
                break bridges.len();
            }
            if attempts >= cfg.retry_budget {
                return Err(Error::RetryBudgetExhausted {
                    stage: "bottleneck table",
                    budget: cfg.retry_budget,
                    reason: alloc::format!("band ({known}, {next}] failed its optimality check"),
                });
            }
        };
        rounds.push(BandRound { lower: known, upper: next, pairs: band.len(), bridges, attempts });
        known = next;
        round_idx += 1;
    }
    Ok(BottleneckTable { n, w, rounds })
}

fn bridge_matrices(
    dist: &DistanceMatrix,
    w: &[Option<u32>],
    bridges: &[usize],
    radius: u64,
) -> (BridgedMatrixPair, BridgedMatrixPair) {
    let n = dist.n;
    let k = bridges.len();
    let entry = |a: usize, b: usize| -> (u64, Option<u32>) {
        let d = dist.raw(a, b);
        if a == b || d == INF || d > radius {
            (INF, None)
        } else {
            (d, w[a * n + b])
        }
    };
    let mut left = BridgedMatrixPair { rows: n, cols: k, dist: vec![INF; n * k], bottleneck: vec![None; n * k] };
    let mut right = BridgedMatrixPair { rows: k, cols: n, dist: vec![INF; n * k], bottleneck: vec![None; n * k] };
    for (j, &h) in bridges.iter().enumerate() {
        for x in 0..n {
            let (d, b) = entry(x, h);
            left.dist[x * k + j] = d;
            left.bottleneck[x * k + j] = b;
            let (d, b) = entry(h, x);
            right.dist[j * n + x] = d;
            right.bottleneck[j * n + x] = b;
        }
    }
    (left, right)
}

/// The entry for `(u, v)` is optimal iff no tight last arc `x → v` extends a
/// better prefix. Entries are lower bounds by construction, so this check
/// (applied in distance order) certifies exactness.
fn certificate_holds<V: GraphView>(view: &V, dist: &DistanceMatrix, w: &[Option<u32>], u: usize, v: usize) -> bool {
    let n = dist.n;
    let target = dist.raw(u, v);
    let mut best = None;
    for (id, arc) in view.in_arcs(v) {
        let x = arc.tail as usize;
        let dx = dist.raw(u, x);
        if dx == INF || dx + u64::from(arc.weight) != target {
            continue;
        }
        let cand = if x == u { Some(id as u32) } else { w[u * n + x].min(Some(id as u32)) };
        best = best.max(cand);
    }
    best.is_some() && best == w[u * n + v]
}

/// Parent pointers, hop counts and Euler timestamps of every canonical
/// shortest-path tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTrees {
    n: usize,
    /// `parent_out[u*n+v]`: predecessor of `v` on `ρ(u, v)`.
    parent_out: Vec<u32>,
    parent_arc_out: Vec<u32>,
    /// `parent_in[u*n+x]`: successor of `x` on `ρ(x, u)`.
    parent_in: Vec<u32>,
    parent_arc_in: Vec<u32>,
    hop: Vec<u32>,
    tin: Vec<u32>,
    tout: Vec<u32>,
}

/// Unfolds the bottleneck table into trees, in nondecreasing distance order.
pub fn build_path_trees(dist: &DistanceMatrix, w: &BottleneckTable, graph: &Graph) -> Result<PathTrees> {
    let n = dist.n;
    let mut order: Vec<(u64, u32, u32)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let d = dist.raw(u, v);
            if u != v && d != INF {
                order.push((d, u as u32, v as u32));
            }
        }
    }
    order.sort_unstable();

    let mut t = PathTrees {
        n,
        parent_out: vec![NONE; n * n],
        parent_arc_out: vec![NONE; n * n],
        parent_in: vec![NONE; n * n],
        parent_arc_in: vec![NONE; n * n],
        hop: vec![NONE; n * n],
        tin: vec![NONE; n * n],
        tout: vec![NONE; n * n],
    };
    for u in 0..n {
        t.hop[u * n + u] = 0;
    }
    for &(_, u, v) in &order {
        let (u, v) = (u as usize, v as usize);
        let uv = u * n + v;
        let wid = w.w[uv].ok_or_else(|| Error::Invariant(alloc::format!("no bottleneck arc for reachable pair ({u}, {v})")))?;
        let arc = graph.arc(wid as usize);
        let (us, vs) = (arc.tail as usize, arc.head as usize);

        // Out-tree of u: the predecessor of v.
        if vs == v {
            t.parent_out[uv] = us as u32;
            t.parent_arc_out[uv] = wid;
        } else {
            let p = t.parent_out[vs * n + v];
            if p == NONE {
                return Err(Error::Invariant(alloc::format!("tree cycle while resolving ρ({u}, {v})")));
            }
            t.parent_out[uv] = p;
            t.parent_arc_out[uv] = t.parent_arc_out[vs * n + v];
        }
        // In-tree of v: the successor of u.
        let vu = v * n + u;
        if us == u {
            t.parent_in[vu] = vs as u32;
            t.parent_arc_in[vu] = wid;
        } else {
            let s = t.parent_in[us * n + u];
            if s == NONE {
                return Err(Error::Invariant(alloc::format!("tree cycle while resolving ρ({u}, {v})")));
            }
            t.parent_in[vu] = s;
            t.parent_arc_in[vu] = t.parent_arc_in[us * n + u];
        }
        let parent_hop = t.hop[u * n + t.parent_out[uv] as usize];
        if parent_hop == NONE {
            return Err(Error::Invariant(alloc::format!("parent of {v} in T_out({u}) unresolved")));
        }
        t.hop[uv] = parent_hop + 1;
    }
    t.euler_tours();
    Ok(t)
}

impl PathTrees {
    fn euler_tours(&mut self) {
        let n = self.n;
        let (tin, tout): (Vec<Vec<u32>>, Vec<Vec<u32>>) = par::map_range(n, |u| {
            let row = &self.parent_out[u * n..(u + 1) * n];
            let mut start = vec![0u32; n + 1];
            for (v, &p) in row.iter().enumerate() {
                if v != u && p != NONE {
                    start[p as usize + 1] += 1;
                }
            }
            for i in 0..n {
                start[i + 1] += start[i];
            }
            let mut fill = start.clone();
            let mut kids = vec![0u32; start[n] as usize];
            for (v, &p) in row.iter().enumerate() {
                if v != u && p != NONE {
                    kids[fill[p as usize] as usize] = v as u32;
                    fill[p as usize] += 1;
                }
            }
            let mut tin = vec![NONE; n];
            let mut tout = vec![NONE; n];
            let mut clock = 0u32;
            let mut stack = vec![(u as u32, false)];
            while let Some((x, done)) = stack.pop() {
                let x = x as usize;
                if done {
                    tout[x] = clock;
                    clock += 1;
                    continue;
                }
                tin[x] = clock;
                clock += 1;
                stack.push((x as u32, true));
                for &c in &kids[start[x] as usize..start[x + 1] as usize] {
                    stack.push((c, false));
                }
            }
            (tin, tout)
        })
        .into_iter()
        .unzip();
        self.tin = tin.concat();
        self.tout = tout.concat();
    }

    #[inline]
    pub(crate) fn parent_out_raw(&self, u: usize, v: usize) -> u32 {
        self.parent_out[u * self.n + v]
    }

    #[inline]
    pub(crate) fn parent_arc_out_raw(&self, u: usize, v: usize) -> u32 {
        self.parent_arc_out[u * self.n + v]
    }

    #[inline]
    pub(crate) fn parent_in_raw(&self, root: usize, x: usize) -> u32 {
        self.parent_in[root * self.n + x]
    }

    #[inline]
    pub(crate) fn parent_arc_in_raw(&self, root: usize, x: usize) -> u32 {
        self.parent_arc_in[root * self.n + x]
    }

    #[inline]
    pub(crate) fn hop_raw(&self, u: usize, v: usize) -> u32 {
        self.hop[u * self.n + v]
    }

    /// `x` is `v` or an ancestor of `v` in `T_out(u)`.
    #[inline]
    pub(crate) fn is_ancestor(&self, u: usize, x: usize, v: usize) -> bool {
        let base = u * self.n;
        let (tx, tv) = (self.tin[base + x], self.tin[base + v]);
        tx != NONE && tv != NONE && tx <= tv && self.tout[base + v] <= self.tout[base + x]
    }
}

/// Canonical APSP data: distances, bottleneck arcs and the path trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalApsp {
    dist: DistanceMatrix,
    bottleneck: Vec<Option<u32>>,
    trees: PathTrees,
    rounds: Vec<BandRound>,
}

impl CanonicalApsp {
    pub(crate) fn corrupt_one_distance(&mut self) -> bool {
        self.dist.bump_first_finite()
    }

    /// Computes canonical APSP data of `view`, which may be a failure view
    /// of a larger graph.
    pub fn build<V: GraphView>(view: &V, cfg: &ApspConfig) -> Result<Self> {
        let dist = compute_distances(view);
        let table = compute_bottleneck_table(view, &dist, cfg)?;
        let trees = build_path_trees(&dist, &table, view.base())?;
        Ok(CanonicalApsp { dist, bottleneck: table.w, trees, rounds: table.rounds })
    }

    pub fn n(&self) -> usize {
        self.dist.n
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn dist(&self, u: usize, v: usize) -> PathLength {
        self.dist.get(u, v)
    }

    #[inline]
    pub(crate) fn dist_raw(&self, u: usize, v: usize) -> u64 {
        self.dist.raw(u, v)
    }

    pub(crate) fn trees(&self) -> &PathTrees {
        &self.trees
    }

    pub fn band_rounds(&self) -> &[BandRound] {
        &self.rounds
    }

    /// `w(u, v)` as an arc id.
    pub fn bottleneck(&self, u: usize, v: usize) -> Option<usize> {
        self.bottleneck[u * self.n() + v].map(|a| a as usize)
    }

    /// Predecessor of `v` in `T_out(u)`.
    pub fn parent_out(&self, u: usize, v: usize) -> Option<usize> {
        opt(self.trees.parent_out_raw(u, v))
    }

    /// Successor of `x` in `T_in(root)`, i.e. the vertex after `x` on `ρ(x, root)`.
    pub fn parent_in(&self, root: usize, x: usize) -> Option<usize> {
        opt(self.trees.parent_in_raw(root, x))
    }

    /// Number of arcs on `ρ(u, v)`.
    pub fn hops(&self, u: usize, v: usize) -> Option<u32> {
        opt(self.trees.hop_raw(u, v)).map(|h| h as u32)
    }

    /// Arc ids of `ρ(u, v)` from `u` to `v`; `None` when unreachable.
    pub fn canonical_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.hops(u, v)?;
        let mut arcs = Vec::new();
        let mut cur = v;
        while cur != u {
            arcs.push(self.trees.parent_arc_out_raw(u, cur) as usize);
            cur = self.trees.parent_out_raw(u, cur) as usize;
        }
        arcs.reverse();
        Some(arcs)
    }

    /// Vertices of `ρ(u, v)`, endpoints included.
    pub fn path_vertices(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.hops(u, v)?;
        let mut out = vec![v];
        let mut cur = v;
        while cur != u {
            cur = self.trees.parent_out_raw(u, cur) as usize;
            out.push(cur);
        }
        out.reverse();
        Some(out)
    }

    /// Whether `f` lies on `ρ(u, v)`, in constant time.
    ///
    /// An empty path (`u = v`) contains nothing. A vertex counts when it is
    /// on the path, endpoints included.
    pub fn on_path(&self, graph: &Graph, u: usize, v: usize, f: Failure) -> bool {
        self.on_path_arc(graph, u, v, f).is_some()
    }

    /// Like [`on_path`](Self::on_path), returning the `(tail, head)` of the
    /// failure on the path (`tail = head` for a vertex).
    pub(crate) fn on_path_arc(&self, graph: &Graph, u: usize, v: usize, f: Failure) -> Option<(usize, usize)> {
        if u == v {
            return None;
        }
        match f {
            Failure::Vertex(x) => self.trees.is_ancestor(u, x, v).then_some((x, x)),
            Failure::Edge(e) => graph.arcs_of_edge(e).find_map(|id| {
                let arc = graph.arc(id);
                let b = arc.head as usize;
                (b != u && self.trees.is_ancestor(u, b, v) && self.trees.parent_arc_out_raw(u, b) == id as u32)
                    .then_some((arc.tail as usize, b))
            }),
        }
    }

    /// Text dump of every outgoing tree, one line `u: p_0 p_1 … p_{n-1}`
    /// per root, `-` for the root itself and unreachable vertices.
    pub fn tree_dump(&self) -> String {
        let n = self.n();
        let mut s = String::new();
        for u in 0..n {
            let _ = write!(s, "{u}:");
            for v in 0..n {
                match self.parent_out(u, v) {
                    Some(p) => {
                        let _ = write!(s, " {p}");
                    }
                    None => s.push_str(" -"),
                }
            }
            s.push('\n');
        }
        s
    }
}

fn opt(x: u32) -> Option<usize> {
    (x != NONE).then_some(x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn apsp(g: &Graph) -> CanonicalApsp {
        CanonicalApsp::build(g, &ApspConfig::default()).unwrap()
    }

    #[test]
    fn fixture_distances() {
        let a = apsp(&fixtures::fix_a());
        assert_eq!(a.dist(0, 3), PathLength::Finite(3));
        let b = apsp(&fixtures::fix_b());
        assert_eq!(b.dist(0, 4), PathLength::Finite(4));
        for u in 0..5 {
            assert_eq!(b.dist(u, u), PathLength::Finite(0));
        }
    }

    #[test]
    fn fixture_bottlenecks() {
        let a = apsp(&fixtures::fix_a());
        assert_eq!(a.bottleneck(0, 2), Some(3));
        assert_eq!(a.bottleneck(0, 3), Some(2));
        assert_eq!(a.bottleneck(1, 3), Some(1));
        let b = apsp(&fixtures::fix_b());
        assert_eq!(b.bottleneck(1, 3), Some(4));
        assert_eq!(b.bottleneck(1, 4), Some(3));
        assert_eq!(b.bottleneck(0, 4), Some(0));
    }

    #[test]
    fn single_edge_bottleneck() {
        let g = Graph::new(2, 1, true, [(0, 1, 1)]).unwrap();
        assert_eq!(apsp(&g).bottleneck(0, 1), Some(0));
    }

    #[test]
    fn fixture_canonical_paths() {
        let a = apsp(&fixtures::fix_a());
        assert_eq!(a.canonical_path(0, 3), Some(vec![3, 2]));
        assert_eq!(a.path_vertices(0, 3), Some(vec![0, 2, 3]));
        let b = apsp(&fixtures::fix_b());
        assert_eq!(b.canonical_path(0, 4), Some(vec![0, 4, 3]));
        assert_eq!(b.path_vertices(0, 4), Some(vec![0, 1, 3, 4]));
        assert_eq!(b.canonical_path(2, 2), Some(vec![]));
        assert_eq!(b.canonical_path(4, 0), None);
        assert_eq!(b.hops(0, 4), Some(3));
    }

    #[test]
    fn in_tree_matches_out_tree() {
        let b = apsp(&fixtures::fix_b());
        // ρ(0,4) = 0 1 3 4: successors towards root 4.
        assert_eq!(b.parent_in(4, 0), Some(1));
        assert_eq!(b.parent_in(4, 1), Some(3));
        assert_eq!(b.parent_in(4, 3), Some(4));
    }

    #[test]
    fn on_path_checks() {
        let g = fixtures::fix_b();
        let b = apsp(&g);
        assert!(!b.on_path(&g, 0, 4, Failure::Vertex(2)));
        assert!(b.on_path(&g, 0, 4, Failure::Vertex(3)));
        assert!(b.on_path(&g, 0, 4, Failure::Edge(4)));
        assert!(!b.on_path(&g, 0, 4, Failure::Edge(1)));
        for f in g.failures() {
            assert!(!b.on_path(&g, 2, 2, f));
        }
    }

    #[test]
    fn product_single_bridge_and_empty_max() {
        let left = BridgedMatrixPair::new(1, 1, vec![PathLength::Finite(2)], vec![Some(5)]).unwrap();
        let right = BridgedMatrixPair::new(1, 1, vec![PathLength::Finite(3)], vec![Some(7)]).unwrap();
        let hit = distance_max_min_product(&left, &right, &[PathLength::Finite(5)]).unwrap();
        assert_eq!(hit, vec![Some(5)]);
        let miss = distance_max_min_product(&left, &right, &[PathLength::Finite(4)]).unwrap();
        assert_eq!(miss, vec![None]);
        assert!(distance_max_min_product(&left, &right, &[]).is_err());
    }

    #[test]
    fn product_on_fix_b_with_all_bridges() {
        let g = fixtures::fix_b();
        let a = apsp(&g);
        let n = g.vertex_count();
        let mut d = Vec::new();
        let mut w = Vec::new();
        for x in 0..n {
            for h in 0..n {
                let dist = a.dist(x, h);
                if x == h || !dist.is_finite() {
                    d.push(PathLength::Unreachable);
                    w.push(None);
                } else {
                    d.push(dist);
                    w.push(a.bottleneck(x, h).map(|e| e as u32));
                }
            }
        }
        let left = BridgedMatrixPair::new(n, n, d.clone(), w.clone()).unwrap();
        let right = BridgedMatrixPair::new(n, n, d, w).unwrap();
        let mut target = vec![PathLength::Unreachable; n * n];
        target[4] = a.dist(0, 4);
        let out = distance_max_min_product(&left, &right, &target).unwrap();
        assert_eq!(out[4], Some(0));
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        assert!(BridgedMatrixPair::new(1, 1, vec![PathLength::Finite(1)], vec![None]).is_err());
        assert!(BridgedMatrixPair::new(1, 2, vec![PathLength::Finite(1)], vec![Some(1)]).is_err());
    }

    #[test]
    fn tree_dump_format() {
        let b = apsp(&fixtures::fix_b());
        let dump = b.tree_dump();
        assert_eq!(dump.lines().next(), Some("0: - 0 1 1 3"));
    }
}
