//! The small-radius truncated oracle built from random subgraphs.
//!
//! `r̃ = ⌈8·C·r·ln n⌉` edge samples keep every input edge with probability
//! `1 − 1/r`, and as many vertex samples keep every vertex with the same
//! probability. A query for failure `f` takes the minimum distance over the
//! samples that dropped `f`; with high probability one of them also keeps
//! the whole replacement path.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dijkstra;
use crate::error::{Error, Result};
use crate::graph::{Failure, Graph, GraphArc, GraphView};
use crate::oracle::{Probe, TruncatedOracle};
use crate::par;
use crate::rng::{self, Purpose};
use crate::truncated;

/// How each sample's capped distance matrix is computed. Both give
/// `min{d, r}` exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleKernel {
    /// Bucket-queue Dijkstra from every source, stopped at the radius.
    #[default]
    BoundedDijkstra,
    /// Hop-truncated min-plus squaring, then capped.
    MinPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledConfig {
    pub confidence: f64,
    pub seed: u64,
    pub retry_budget: u32,
    pub kernel: SampleKernel,
}

impl Default for SampledConfig {
    fn default() -> Self {
        SampledConfig { confidence: 4.0, seed: 0, retry_budget: 64, kernel: SampleKernel::BoundedDijkstra }
    }
}

/// Capped distances of every sample, `[sample][u][v]`, in the narrowest
/// integer type that holds the radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum CappedStore {
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
}

impl CappedStore {
    fn new(radius: u32, len: usize) -> Self {
        if radius <= u32::from(u8::MAX) {
            CappedStore::U8(vec![0; len])
        } else if radius <= u32::from(u16::MAX) {
            CappedStore::U16(vec![0; len])
        } else {
            CappedStore::U32(vec![0; len])
        }
    }

    #[inline]
    fn get(&self, i: usize) -> u32 {
        match self {
            CappedStore::U8(v) => u32::from(v[i]),
            CappedStore::U16(v) => u32::from(v[i]),
            CappedStore::U32(v) => v[i],
        }
    }

    fn write(&mut self, at: usize, vals: &[u32]) {
        match self {
            CappedStore::U8(v) => v[at..at + vals.len()].iter_mut().zip(vals).for_each(|(s, &x)| *s = x as u8),
            CappedStore::U16(v) => v[at..at + vals.len()].iter_mut().zip(vals).for_each(|(s, &x)| *s = x as u16),
            CappedStore::U32(v) => v[at..at + vals.len()].copy_from_slice(vals),
        }
    }
}

/// A graph restricted by survival bitmaps over vertices or input edges.
struct MaskView<'a> {
    graph: &'a Graph,
    vertices: Option<&'a [u64]>,
    edges: Option<&'a [u64]>,
}

#[inline]
fn bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

impl GraphView for MaskView<'_> {
    fn base(&self) -> &Graph {
        self.graph
    }

    fn has_vertex(&self, v: usize) -> bool {
        self.vertices.is_none_or(|b| bit(b, v))
    }

    fn has_arc(&self, arc: &GraphArc) -> bool {
        self.edges.is_none_or(|b| bit(b, arc.edge as usize))
            && self.has_vertex(arc.tail as usize)
            && self.has_vertex(arc.head as usize)
    }
}

/// One family of samples (all edge samples or all vertex samples).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Family {
    /// Survival bitmap of sample `i` at `[i * words ..]`.
    alive: Vec<u64>,
    words: usize,
    dist: CappedStore,
    /// For each element, the samples that dropped it (CSR).
    index_start: Vec<u32>,
    index: Vec<u32>,
    attempts: u32,
}

/// Sizes and retry counts of a built family, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledStats {
    pub samples: usize,
    pub edge_attempts: u32,
    pub vertex_attempts: u32,
    pub longest_edge_list: usize,
    pub longest_vertex_list: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledDso {
    n: usize,
    radius: u32,
    samples: usize,
    edge_family: Family,
    vertex_family: Family,
}

impl SampledDso {
    pub fn build(graph: &Graph, radius: u64, cfg: &SampledConfig) -> Result<Self> {
        if radius < 2 {
            return Err(Error::RadiusTooSmall { radius, min: 2 });
        }
        let r = u32::try_from(radius).ok().filter(|&r| r < u32::MAX).ok_or(Error::RadiusOverflow { radius })?;
        if !(cfg.confidence > 0.0) {
            return Err(Error::Config("confidence constant must be positive".into()));
        }
        let n = graph.vertex_count();
        let ln_n = libm::log(n.max(2) as f64);
        let samples = (libm::ceil(8.0 * cfg.confidence * radius as f64 * ln_n) as usize).max(1);
        let list_cap = (24.0 * cfg.confidence * ln_n) as usize;

        let edge_family = build_family(graph, r, samples, list_cap, cfg, Purpose::EdgeSample)?;
        let vertex_family = build_family(graph, r, samples, list_cap, cfg, Purpose::VertexSample)?;
        Ok(SampledDso { n, radius: r, samples, edge_family, vertex_family })
    }

    pub fn sample_count(&self) -> usize {
        self.samples
    }

    pub fn stats(&self) -> SampledStats {
        let longest = |f: &Family| f.index_start.windows(2).map(|w| (w[1] - w[0]) as usize).max().unwrap_or(0);
        SampledStats {
            samples: self.samples,
            edge_attempts: self.edge_family.attempts,
            vertex_attempts: self.vertex_family.attempts,
            longest_edge_list: longest(&self.edge_family),
            longest_vertex_list: longest(&self.vertex_family),
        }
    }

    /// Whether sample `i` keeps `f` (edge samples for edge failures, vertex
    /// samples for vertex failures).
    pub fn sample_keeps(&self, i: usize, f: Failure) -> bool {
        match f {
            Failure::Vertex(x) => {
                let fam = &self.vertex_family;
                bit(&fam.alive[i * fam.words..(i + 1) * fam.words], x)
            }
            Failure::Edge(e) => {
                let fam = &self.edge_family;
                bit(&fam.alive[i * fam.words..(i + 1) * fam.words], e)
            }
        }
    }

    /// Samples that dropped `f`.
    pub fn failure_index(&self, f: Failure) -> &[u32] {
        let (fam, id) = match f {
            Failure::Vertex(x) => (&self.vertex_family, x),
            Failure::Edge(e) => (&self.edge_family, e),
        };
        &fam.index[fam.index_start[id] as usize..fam.index_start[id + 1] as usize]
    }

    /// Capped `u → v` distance inside sample `i` of the family matching `f`.
    pub fn sample_distance(&self, i: usize, f: Failure, u: usize, v: usize) -> u64 {
        let fam = match f {
            Failure::Vertex(_) => &self.vertex_family,
            Failure::Edge(_) => &self.edge_family,
        };
        u64::from(fam.dist.get((i * self.n + u) * self.n + v))
    }

    pub fn query_probed<P: Probe>(&self, u: usize, v: usize, f: Failure, probe: &mut P) -> u64 {
        if let Failure::Vertex(x) = f {
            if x == u || x == v {
                return u64::from(self.radius);
            }
        }
        if u == v {
            return 0;
        }
        let (fam, id) = match f {
            Failure::Vertex(x) => (&self.vertex_family, x),
            Failure::Edge(e) => (&self.edge_family, e),
        };
        probe.lookup();
        let list = &fam.index[fam.index_start[id] as usize..fam.index_start[id + 1] as usize];
        let nn = self.n * self.n;
        let mut best = self.radius;
        for &i in list {
            probe.lookup();
            best = best.min(fam.dist.get(i as usize * nn + u * self.n + v));
        }
        u64::from(best)
    }
}

impl TruncatedOracle for SampledDso {
    fn radius(&self) -> u64 {
        u64::from(self.radius)
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        self.query_probed(u, v, f, &mut ())
    }
}

fn build_family(
    graph: &Graph,
    r: u32,
    samples: usize,
    list_cap: usize,
    cfg: &SampledConfig,
    purpose: Purpose,
) -> Result<Family> {
    let n = graph.vertex_count();
    let elems = match purpose {
        Purpose::VertexSample => n,
        _ => graph.edge_count(),
    };
    let words = elems.div_ceil(64).max(1);
    let drop_p = 1.0 / f64::from(r);

    for attempt in 1..=cfg.retry_budget {
        let alive: Vec<u64> = par::map_range(samples, |i| {
            let mut rng = rng::stream(cfg.seed, purpose, (u64::from(attempt) << 32) | i as u64);
            let mut bits = vec![0u64; words];
            for e in 0..elems {
                if !rng.random_bool(drop_p) {
                    bits[e / 64] |= 1 << (e % 64);
                }
            }
            bits
        })
        .concat();

        let mut counts = vec![0u32; elems + 1];
        for i in 0..samples {
            let bits = &alive[i * words..(i + 1) * words];
            for (e, c) in counts.iter_mut().skip(1).enumerate() {
                if !bit(bits, e) {
                    *c += 1;
                }
            }
        }
        if counts.iter().any(|&c| c as usize > list_cap) {
            continue;
        }
        let mut index_start = counts;
        for e in 0..elems {
            index_start[e + 1] += index_start[e];
        }
        let mut fill = index_start.clone();
        let mut index = vec![0u32; index_start[elems] as usize];
        for i in 0..samples {
            let bits = &alive[i * words..(i + 1) * words];
            for e in 0..elems {
                if !bit(bits, e) {
                    index[fill[e] as usize] = i as u32;
                    fill[e] += 1;
                }
            }
        }

        let rows = par::map_range(samples, |i| {
            let bits = &alive[i * words..(i + 1) * words];
            let view = match purpose {
                Purpose::VertexSample => MaskView { graph, vertices: Some(bits), edges: None },
                _ => MaskView { graph, vertices: None, edges: Some(bits) },
            };
            capped_matrix(&view, r, cfg.kernel)
        });
        let mut dist = CappedStore::new(r, samples * n * n);
        for (i, m) in rows.iter().enumerate() {
            dist.write(i * n * n, m);
        }
        return Ok(Family { alive, words, dist, index_start, index, attempts: attempt });
    }
    Err(Error::RetryBudgetExhausted {
        stage: "sampled oracle",
        budget: cfg.retry_budget,
        reason: alloc::format!("some failure was dropped by more than {list_cap} samples"),
    })
}

fn capped_matrix<V: GraphView>(view: &V, r: u32, kernel: SampleKernel) -> Vec<u32> {
    let n = view.vertex_count();
    let mut out = vec![r; n * n];
    match kernel {
        SampleKernel::BoundedDijkstra => {
            let mut buckets = Vec::new();
            for (u, row) in out.chunks_mut(n.max(1)).enumerate().take(n) {
                dijkstra::capped_from(view, u, r, row, &mut buckets);
            }
        }
        SampleKernel::MinPlus => {
            let t = truncated::hop_truncated_apsp(view, r as usize).expect("radius is at least 2");
            for u in 0..n {
                for v in 0..n {
                    out[u * n + v] = t.d.get(u, v).capped(u64::from(r)) as u32;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn cfg(seed: u64) -> SampledConfig {
        SampledConfig { seed, ..SampledConfig::default() }
    }

    #[test]
    fn rejects_radius_below_two() {
        let g = fixtures::fix_b();
        assert!(matches!(SampledDso::build(&g, 1, &cfg(0)), Err(Error::RadiusTooSmall { .. })));
    }

    #[test]
    fn sample_count_formula() {
        let g = fixtures::fix_b();
        let s = SampledDso::build(&g, 4, &cfg(0)).unwrap();
        let expect = libm::ceil(8.0 * 4.0 * 4.0 * libm::log(5.0)) as usize;
        assert_eq!(s.sample_count(), expect);
    }

    #[test]
    fn fix_b_queries() {
        let g = fixtures::fix_b();
        let s = SampledDso::build(&g, 4, &cfg(7)).unwrap();
        assert_eq!(s.query(0, 4, Failure::Edge(4)), 4);
        assert_eq!(s.query(0, 4, Failure::Vertex(3)), 4);
        assert_eq!(s.query(0, 4, Failure::Vertex(2)), 4);
        assert_eq!(s.query(2, 2, Failure::Edge(0)), 0);
        assert_eq!(s.query(0, 4, Failure::Vertex(0)), 4);
    }

    #[test]
    fn failure_index_matches_bitmaps() {
        let g = fixtures::fix_a();
        let s = SampledDso::build(&g, 3, &cfg(3)).unwrap();
        for f in g.failures() {
            let listed = s.failure_index(f);
            let recomputed: Vec<u32> =
                (0..s.sample_count()).filter(|&i| !s.sample_keeps(i, f)).map(|i| i as u32).collect();
            assert_eq!(listed, recomputed.as_slice());
        }
    }

    #[test]
    fn kernels_agree() {
        let g = fixtures::fix_a();
        let a = SampledDso::build(&g, 3, &cfg(5)).unwrap();
        let b = SampledDso::build(&g, 3, &SampledConfig { kernel: SampleKernel::MinPlus, ..cfg(5) }).unwrap();
        assert_eq!(a, b);
    }
}
