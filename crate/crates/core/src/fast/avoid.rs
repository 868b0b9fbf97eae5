//! Avoidance values near path endpoints.
//!
//! For each pair `(u, v)` the front table holds `‖uv⋄x_i‖_r` and
//! `‖uv⋄e_i‖_r` for the first `min{B(c(u)), |uv|}` vertices and arcs after
//! `u`; the back table holds the same for the last `min{B(c(v)), |uv|}`
//! before `v`, plus the vertex ids, which the interval search reports.
//! Entry `i` (1-based) sits at `off[pair] + i − 1`.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::priorities::hop_bound;
use crate::apsp::CanonicalApsp;
use crate::graph::{Failure, Graph, NONE};
use crate::oracle::TruncatedOracle;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidTables {
    n: usize,
    front_off: Vec<u32>,
    front_vertex: Vec<u32>,
    front_edge: Vec<u32>,
    back_off: Vec<u32>,
    back_node: Vec<u32>,
    back_vertex: Vec<u32>,
    back_edge: Vec<u32>,
}

#[derive(Default)]
struct Row {
    front_len: Vec<u32>,
    front_vertex: Vec<u32>,
    front_edge: Vec<u32>,
    back_len: Vec<u32>,
    back_node: Vec<u32>,
    back_vertex: Vec<u32>,
    back_edge: Vec<u32>,
}

impl AvoidTables {
    pub fn build<D: TruncatedOracle>(
        graph: &Graph,
        apsp: &CanonicalApsp,
        prio: &[u8],
        confidence: f64,
        inner: &D,
    ) -> Self {
        let n = apsp.n();
        let r = inner.radius() as u32;
        let trees = apsp.trees();
        let rows = par::map_range(n, |u| {
            let mut row = Row::default();
            for v in 0..n {
                let hops = trees.hop_raw(u, v);
                if u == v || hops == NONE {
                    row.front_len.push(0);
                    row.back_len.push(0);
                    continue;
                }
                let hops = hops as usize;

                let len = hop_bound(confidence, prio[u], n).min(hops);
                row.front_len.push(len as u32);
                let mut x = u;
                for _ in 0..len {
                    let arc = graph.arc(trees.parent_arc_in_raw(v, x) as usize);
                    let next = trees.parent_in_raw(v, x) as usize;
                    row.front_edge.push(inner.query(u, v, Failure::Edge(arc.edge as usize)) as u32);
                    row.front_vertex.push(if next == v { r } else { inner.query(u, v, Failure::Vertex(next)) as u32 });
                    x = next;
                }

                let len = hop_bound(confidence, prio[v], n).min(hops);
                row.back_len.push(len as u32);
                let mut y = v;
                for _ in 0..len {
                    let arc = graph.arc(trees.parent_arc_out_raw(u, y) as usize);
                    let prev = trees.parent_out_raw(u, y) as usize;
                    row.back_node.push(prev as u32);
                    row.back_edge.push(inner.query(u, v, Failure::Edge(arc.edge as usize)) as u32);
                    row.back_vertex.push(if prev == u { r } else { inner.query(u, v, Failure::Vertex(prev)) as u32 });
                    y = prev;
                }
            }
            row
        });

        let mut t = AvoidTables {
            n,
            front_off: Vec::with_capacity(n * n + 1),
            front_vertex: Vec::new(),
            front_edge: Vec::new(),
            back_off: Vec::with_capacity(n * n + 1),
            back_node: Vec::new(),
            back_vertex: Vec::new(),
            back_edge: Vec::new(),
        };
        let (mut f, mut b) = (0u32, 0u32);
        for row in rows {
            for (&fl, &bl) in row.front_len.iter().zip(&row.back_len) {
                t.front_off.push(f);
                t.back_off.push(b);
                f += fl;
                b += bl;
            }
            t.front_vertex.extend(row.front_vertex);
            t.front_edge.extend(row.front_edge);
            t.back_node.extend(row.back_node);
            t.back_vertex.extend(row.back_vertex);
            t.back_edge.extend(row.back_edge);
        }
        t.front_off.push(f);
        t.back_off.push(b);
        t
    }

    #[inline]
    fn span(off: &[u32], pair: usize) -> (usize, usize) {
        (off[pair] as usize, off[pair + 1] as usize)
    }

    pub fn front_len(&self, u: usize, v: usize) -> usize {
        let (a, b) = Self::span(&self.front_off, u * self.n + v);
        b - a
    }

    pub fn back_len(&self, u: usize, v: usize) -> usize {
        let (a, b) = Self::span(&self.back_off, u * self.n + v);
        b - a
    }

    /// `‖uv⋄x_i‖_r` or `‖uv⋄e_i‖_r` for the `i`-th vertex or arc from `u`.
    #[inline]
    pub fn front(&self, u: usize, v: usize, i: usize, vertex: bool) -> u32 {
        let at = self.front_off[u * self.n + v] as usize + i - 1;
        debug_assert!(at < self.front_off[u * self.n + v + 1] as usize);
        if vertex {
            self.front_vertex[at]
        } else {
            self.front_edge[at]
        }
    }

    /// `‖uv⋄x_{-i}‖_r` or `‖uv⋄e_{-i}‖_r`, counting back from `v`.
    #[inline]
    pub fn back(&self, u: usize, v: usize, i: usize, vertex: bool) -> u32 {
        let at = self.back_off[u * self.n + v] as usize + i - 1;
        debug_assert!(at < self.back_off[u * self.n + v + 1] as usize);
        if vertex {
            self.back_vertex[at]
        } else {
            self.back_edge[at]
        }
    }

    /// The vertex `x_{-i}` of `ρ(u, v)`.
    #[inline]
    pub fn back_node(&self, u: usize, v: usize, i: usize) -> usize {
        self.back_node[self.back_off[u * self.n + v] as usize + i - 1] as usize
    }

    /// Vertex values of the back table of `(u, v)`, `x_{-1}` first.
    pub(crate) fn back_vertex_slice(&self, u: usize, v: usize) -> &[u32] {
        let (a, b) = Self::span(&self.back_off, u * self.n + v);
        &self.back_vertex[a..b]
    }

    /// Vertex values of the front table of `(u, v)`, `x_1` first.
    pub(crate) fn front_vertex_slice(&self, u: usize, v: usize) -> &[u32] {
        let (a, b) = Self::span(&self.front_off, u * self.n + v);
        &self.front_vertex[a..b]
    }

    pub fn entries(&self) -> usize {
        self.front_vertex.len() + self.back_vertex.len()
    }
}
