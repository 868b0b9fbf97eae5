//! Weighted digraphs with a fixed total edge order, single-failure views and
//! the distance type used at API boundaries.
//!
//! The edge order used for tie-breaking is the arc index: arcs are created in
//! input order, and an undirected edge `e` expands into the two consecutive
//! arcs `2e` (as written) and `2e + 1` (reversed). Both arcs share the input
//! edge id, so failing the edge removes both of them.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Internal "no path" marker for distance tables.
pub(crate) const INF: u64 = u64::MAX;
/// Internal "no vertex / no arc" marker for `u32` tables.
pub(crate) const NONE: u32 = u32::MAX;

/// One input edge, as it appears in the graph file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub tail: u32,
    pub head: u32,
    pub weight: u32,
}

/// A directed arc. `edge` is the input edge it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphArc {
    pub tail: u32,
    pub head: u32,
    pub weight: u32,
    pub edge: u32,
}

/// A failed vertex or a failed (input) edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Failure {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Vertex(x) => write!(f, "v:{x}"),
            Failure::Edge(e) => write!(f, "e:{e}"),
        }
    }
}

/// Length of a path, or the absence of one.
///
/// `Finite` sorts before `Unreachable`, so `min` picks the shorter option.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathLength {
    Finite(u64),
    Unreachable,
}

impl PathLength {
    pub fn finite(self) -> Option<u64> {
        match self {
            PathLength::Finite(d) => Some(d),
            PathLength::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, PathLength::Finite(_))
    }

    pub(crate) fn from_raw(d: u64) -> Self {
        if d == INF {
            PathLength::Unreachable
        } else {
            PathLength::Finite(d)
        }
    }

    pub(crate) fn raw(self) -> u64 {
        match self {
            PathLength::Finite(d) => d,
            PathLength::Unreachable => INF,
        }
    }

    /// `min{self, cap}` as a plain integer.
    pub fn capped(self, cap: u64) -> u64 {
        match self {
            PathLength::Finite(d) => d.min(cap),
            PathLength::Unreachable => cap,
        }
    }
}

impl Add for PathLength {
    type Output = PathLength;

    fn add(self, rhs: PathLength) -> PathLength {
        match (self, rhs) {
            (PathLength::Finite(a), PathLength::Finite(b)) => PathLength::Finite(a + b),
            _ => PathLength::Unreachable,
        }
    }
}

impl fmt::Display for PathLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathLength::Finite(d) => write!(f, "{d}"),
            PathLength::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// A weighted graph with weights in `1..=max_weight`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    max_weight: u32,
    directed: bool,
    edges: Vec<EdgeSpec>,
    arcs: Vec<GraphArc>,
    out_start: Vec<u32>,
    out_arcs: Vec<u32>,
    in_start: Vec<u32>,
    in_arcs: Vec<u32>,
}

impl Graph {
    /// Builds a graph from input edges given in `≺` order.
    pub fn new<I>(n: usize, max_weight: u32, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if max_weight == 0 {
            return Err(Error::ZeroMaxWeight);
        }
        if n > NONE as usize {
            return Err(Error::VertexOutOfRange { vertex: n, n: NONE as usize });
        }
        let mut specs = Vec::new();
        for (idx, (tail, head, weight)) in edges.into_iter().enumerate() {
            for vertex in [tail, head] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if weight == 0 || weight > u64::from(max_weight) {
                return Err(Error::WeightOutOfRange { edge: idx, weight, max: max_weight });
            }
            if tail == head {
                return Err(Error::SelfLoop { edge: idx, vertex: tail });
            }
            specs.push(EdgeSpec { tail: tail as u32, head: head as u32, weight: weight as u32 });
        }

        let mut arcs = Vec::with_capacity(if directed { specs.len() } else { 2 * specs.len() });
        for (e, s) in specs.iter().enumerate() {
            let edge = e as u32;
            arcs.push(GraphArc { tail: s.tail, head: s.head, weight: s.weight, edge });
            if !directed {
                arcs.push(GraphArc { tail: s.head, head: s.tail, weight: s.weight, edge });
            }
        }
        let (out_start, out_arcs) = csr(n, &arcs, |a| a.tail);
        let (in_start, in_arcs) = csr(n, &arcs, |a| a.head);
        Ok(Graph { n, max_weight, directed, edges: specs, arcs, out_start, out_arcs, in_start, in_arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of input edges (undirected edges count once).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[EdgeSpec] {
        &self.edges
    }

    pub fn arcs(&self) -> &[GraphArc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &GraphArc {
        &self.arcs[id]
    }

    /// Arc ids belonging to input edge `e`.
    pub fn arcs_of_edge(&self, e: usize) -> core::ops::Range<usize> {
        if self.directed {
            e..e + 1
        } else {
            2 * e..2 * e + 2
        }
    }

    pub fn out_arc_ids(&self, u: usize) -> &[u32] {
        &self.out_arcs[self.out_start[u] as usize..self.out_start[u + 1] as usize]
    }

    pub fn in_arc_ids(&self, v: usize) -> &[u32] {
        &self.in_arcs[self.in_start[v] as usize..self.in_start[v + 1] as usize]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_failure(&self, f: Failure) -> Result<()> {
        match f {
            Failure::Vertex(x) => self.check_vertex(x),
            Failure::Edge(e) if e < self.edges.len() => Ok(()),
            Failure::Edge(e) => Err(Error::EdgeOutOfRange { edge: e, m: self.edges.len() }),
        }
    }

    /// Every failure of this graph: vertices first, then input edges.
    pub fn failures(&self) -> impl Iterator<Item = Failure> + '_ {
        (0..self.n)
            .map(Failure::Vertex)
            .chain((0..self.edges.len()).map(Failure::Edge))
    }

    /// `G − f`. Surviving arcs keep their ids and therefore their order.
    pub fn remove_failure(&self, f: Failure) -> Result<FailureView<'_>> {
        self.check_failure(f)?;
        Ok(FailureView { graph: self, failure: f })
    }
}

fn csr(n: usize, arcs: &[GraphArc], key: impl Fn(&GraphArc) -> u32) -> (Vec<u32>, Vec<u32>) {
    let mut start = alloc::vec![0u32; n + 1];
    for a in arcs {
        start[key(a) as usize + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut ids = alloc::vec![0u32; arcs.len()];
    for (id, a) in arcs.iter().enumerate() {
        let slot = &mut fill[key(a) as usize];
        ids[*slot as usize] = id as u32;
        *slot += 1;
    }
    (start, ids)
}

/// Read access to a subgraph of a fixed base graph, with arc ids preserved.
pub trait GraphView: Sync {
    fn base(&self) -> &Graph;

    fn has_vertex(&self, v: usize) -> bool;

    fn has_arc(&self, arc: &GraphArc) -> bool;

    fn vertex_count(&self) -> usize {
        self.base().vertex_count()
    }

    /// Surviving arcs leaving `u`, as `(arc id, arc)`.
    fn out_arcs(&self, u: usize) -> impl Iterator<Item = (usize, &GraphArc)> {
        let g = self.base();
        let alive = self.has_vertex(u);
        g.out_arc_ids(u)
            .iter()
            .filter(move |_| alive)
            .map(move |&id| (id as usize, g.arc(id as usize)))
            .filter(move |(_, a)| self.has_arc(a))
    }

    /// Surviving arcs entering `v`.
    fn in_arcs(&self, v: usize) -> impl Iterator<Item = (usize, &GraphArc)> {
        let g = self.base();
        let alive = self.has_vertex(v);
        g.in_arc_ids(v)
            .iter()
            .filter(move |_| alive)
            .map(move |&id| (id as usize, g.arc(id as usize)))
            .filter(move |(_, a)| self.has_arc(a))
    }
}

impl GraphView for Graph {
    fn base(&self) -> &Graph {
        self
    }

    fn has_vertex(&self, _v: usize) -> bool {
        true
    }

    fn has_arc(&self, _arc: &GraphArc) -> bool {
        true
    }
}

/// `G − f` for one failure.
#[derive(Clone, Copy, Debug)]
pub struct FailureView<'a> {
    graph: &'a Graph,
    failure: Failure,
}

impl FailureView<'_> {
    pub fn failure(&self) -> Failure {
        self.failure
    }
}

impl GraphView for FailureView<'_> {
    fn base(&self) -> &Graph {
        self.graph
    }

    fn has_vertex(&self, v: usize) -> bool {
        self.failure != Failure::Vertex(v)
    }

    fn has_arc(&self, arc: &GraphArc) -> bool {
        match self.failure {
            Failure::Vertex(x) => arc.tail as usize != x && arc.head as usize != x,
            Failure::Edge(e) => arc.edge as usize != e,
        }
    }
}

/// Small hand-checkable graphs shared by tests, docs and the CLI.
pub mod fixtures {
    use super::Graph;

    /// Four vertices, six edges, `M = 5`.
    pub fn fix_a() -> Graph {
        Graph::new(
            4,
            5,
            true,
            [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 2), (0, 3, 5), (1, 3, 3)],
        )
        .expect("fixture is valid")
    }

    /// A unit chain `0 → 1 → 2 → 3 → 4` plus the shortcut `1 → 3` of weight 2.
    pub fn fix_b() -> Graph {
        Graph::new(5, 2, true, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 3, 2)])
            .expect("fixture is valid")
    }
}
