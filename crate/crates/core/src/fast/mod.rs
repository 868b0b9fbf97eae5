//! Compiling any truncated oracle into one that answers with a constant
//! number of table lookups.
//!
//! Random priorities select `O(log n)` key vertices on every canonical path,
//! with consecutive keys at most `C · 2^{min priority} · ⌈log₂ n⌉` hops
//! apart. A failure on `ρ(u, v)` is bracketed by two consecutive keys
//! `k_i, k_{i+1}` and then
//!
//! `‖uv⋄f‖_r = min{‖uk_{i+1}⋄f‖_r + ‖k_{i+1}v‖, ‖uk_i‖ + ‖k_iv⋄f‖_r, ‖uv⋄y‖_r, r}`
//!
//! where `y` is the worst single vertex between the two keys. The first two
//! terms come from the endpoint tables (the failure is close to `k_{i+1}`
//! resp. `k_i` in hops), the third is precomputed per key interval.
//!
//! The inner oracle is built once by the caller and queried `Õ(n²)` times.

pub mod avoid;
pub mod keys;
pub mod max_avoider;
pub mod priorities;
pub mod rmq;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use self::avoid::AvoidTables;
use self::keys::KeyVertexIndex;
use self::max_avoider::{find_max_avoider, AvoiderLookups};
use self::rmq::RmqIndex;
use crate::apsp::{ApspConfig, CanonicalApsp};
use crate::error::{Error, Result};
use crate::graph::{Failure, Graph, INF};
use crate::oracle::{Counted, Probe, TruncatedOracle};
use crate::par;

/// Most table lookups one query can make: distance, ancestor test and
/// parent arc, bracketing, then the three bracket terms.
pub const QUERY_LOOKUP_BOUND: u64 = 19;

/// A graph together with its canonical APSP data, computed once and shared
/// by every stage built on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApspData {
    graph: Graph,
    apsp: CanonicalApsp,
}

impl ApspData {
    pub fn build(graph: Graph, cfg: &ApspConfig) -> Result<Self> {
        let apsp = CanonicalApsp::build(&graph, cfg)?;
        Ok(ApspData { graph, apsp })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn apsp(&self) -> &CanonicalApsp {
        &self.apsp
    }

    pub(crate) fn corrupt_one_distance(&mut self) -> bool {
        self.apsp.corrupt_one_distance()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FastConfig {
    pub confidence: f64,
    pub seed: u64,
    pub retry_budget: u32,
}

impl Default for FastConfig {
    fn default() -> Self {
        FastConfig { confidence: 4.0, seed: 0, retry_budget: 64 }
    }
}

/// Build-time counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastStats {
    pub priority_attempts: u32,
    pub data_a_queries: u64,
    pub data_b_queries: u64,
    pub data_c_queries: u64,
    pub search_lookups: u64,
    pub data_a_entries: u64,
}

impl FastStats {
    pub fn inner_queries(&self) -> u64 {
        self.data_a_queries + self.data_b_queries + self.data_c_queries
    }
}

/// The three terms of the bracketing identity for one query, plus the
/// bracketing keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketTerms {
    pub k_prev: usize,
    pub k_next: usize,
    /// `‖uk_{i+1}⋄f‖_r + ‖k_{i+1}v‖`.
    pub via_next: u64,
    /// `‖uk_i‖ + ‖k_iv⋄f‖_r`.
    pub via_prev: u64,
    /// `max_{y ∈ [k_i, k_{i+1}]} ‖uv⋄y‖_r`.
    pub interval_max: u64,
    pub radius: u64,
}

impl BracketTerms {
    pub fn value(&self) -> u64 {
        self.via_next.min(self.via_prev).min(self.interval_max).min(self.radius)
    }
}

/// Where a failure on `ρ(u, v)` falls relative to the key vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Key(usize),
    Between { k_prev: usize, k_next: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Everything the query needs besides the APSP data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FastTables {
    radius: u32,
    confidence: f64,
    keys: KeyVertexIndex,
    avoid: AvoidTables,
    /// One sequence per pair `u·n + v`: back vertex values `1..=ℓ`.
    rmq: RmqIndex,
    /// Per-level slots parallel to `CL`/`CR`: the interval maximum for the
    /// interval that starts at `CL[c]` (resp. `CR[c]`), and the value of
    /// failing that key.
    b_left: Vec<u32>,
    b_right: Vec<u32>,
    c_left: Vec<u32>,
    c_right: Vec<u32>,
    stats: FastStats,
}

struct IntervalLookups<'a> {
    t: &'a FastTables,
    rmq_pair: usize,
    back: &'a [u32],
    front: &'a [u32],
    m: usize,
    us: u64,
    tv: u64,
    r: u64,
}

impl AvoiderLookups for IntervalLookups<'_> {
    fn span(&self) -> usize {
        self.m
    }

    fn ut_avoid(&self, p: usize) -> u64 {
        if p == self.m {
            self.r
        } else {
            u64::from(self.back[self.m - p - 1])
        }
    }

    fn sv_avoid(&self, p: usize) -> u64 {
        if p == 0 {
            self.r
        } else {
            u64::from(self.front[p - 1])
        }
    }

    fn ut_argmax(&self, lo: usize, hi: usize) -> usize {
        let j = self.t.rmq.argmax(self.rmq_pair, self.back, self.m - hi - 1, self.m - lo - 1);
        self.m - j - 1
    }

    fn us(&self) -> u64 {
        self.us
    }

    fn tv(&self) -> u64 {
        self.tv
    }

    fn radius(&self) -> u64 {
        self.r
    }
}

impl FastTables {
    /// Builds the tables from an already preprocessed inner oracle.
    pub fn build<D: TruncatedOracle>(base: &ApspData, inner: &D, cfg: &FastConfig) -> Result<Self> {
        let radius = inner.radius();
        let r = u32::try_from(radius).ok().filter(|&r| r < u32::MAX).ok_or(Error::RadiusOverflow { radius })?;
        if !(cfg.confidence > 0.0) {
            return Err(Error::Config("confidence constant must be positive".into()));
        }
        let (graph, apsp) = (&base.graph, &base.apsp);
        let n = apsp.n();

        let mut stats = FastStats::default();
        let mut accepted = None;
        let mut last = alloc::string::String::new();
        for attempt in 1..=cfg.retry_budget {
            let prio = priorities::sample(n, cfg.seed, attempt);
            if let Err(v) = priorities::check_counts(&prio) {
                last = alloc::format!("{v:?}");
                continue;
            }
            let keys = KeyVertexIndex::build(apsp, prio);
            if let Some((u, v, a, b)) = keys.gap_violation(apsp, cfg.confidence) {
                last = alloc::format!("keys {a} and {b} on the path {u} -> {v} are too far apart");
                continue;
            }
            stats.priority_attempts = attempt;
            accepted = Some(keys);
            break;
        }
        let keys = accepted.ok_or_else(|| Error::RetryBudgetExhausted {
            stage: "priorities",
            budget: cfg.retry_budget,
            reason: last,
        })?;

        let counted = Counted::new(inner);
        let avoid = AvoidTables::build(graph, apsp, keys.priorities(), cfg.confidence, &counted);
        stats.data_a_queries = counted.queries();
        stats.data_a_entries = avoid.entries() as u64;

        let trees = apsp.trees();
        let mut rmq = RmqIndex::build(core::iter::empty());
        for u in 0..n {
            for v in 0..n {
                let len = avoid.back_len(u, v);
                let hops = trees.hop_raw(u, v) as usize;
                let l = if len == 0 { 0 } else { len.min(hops - 1) };
                rmq.push(&avoid.back_vertex_slice(u, v)[..l]);
            }
        }

        let mut t = FastTables {
            radius: r,
            confidence: cfg.confidence,
            keys,
            avoid,
            rmq,
            b_left: Vec::new(),
            b_right: Vec::new(),
            c_left: Vec::new(),
            c_right: Vec::new(),
            stats,
        };
        let counted_b = Counted::new(inner);
        let counted_c = Counted::new(inner);
        let rows = par::map_range(n, |u| t.interval_rows(base, u, &counted_b, &counted_c));
        let mut search = 0;
        for (bl, br, cl, cr, s) in rows {
            t.b_left.extend(bl);
            t.b_right.extend(br);
            t.c_left.extend(cl);
            t.c_right.extend(cr);
            search += s;
        }
        debug_assert_eq!(t.b_left.len(), t.keys.level_slots());
        t.stats.data_b_queries = counted_b.queries();
        t.stats.data_c_queries = counted_c.queries();
        t.stats.search_lookups = search;
        Ok(t)
    }

    #[allow(clippy::type_complexity)]
    fn interval_rows<D: TruncatedOracle>(
        &self,
        base: &ApspData,
        u: usize,
        inner_b: &D,
        inner_c: &D,
    ) -> (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>, u64) {
        let apsp = &base.apsp;
        let n = apsp.n();
        let r = self.radius;
        let (mut bl, mut br, mut cl, mut cr) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut search = 0u64;
        for v in 0..n {
            let l = self.keys.bcp(u, v);
            if l == 0 {
                continue;
            }
            if u == v {
                for _ in 0..l {
                    bl.push(0);
                    br.push(0);
                    cl.push(r);
                    cr.push(r);
                }
                continue;
            }
            let keys = self.keys.keys(u, v);
            let interval: Vec<u32> = keys
                .windows(2)
                .map(|w| {
                    if w[0] == u || w[1] == v {
                        return 0;
                    }
                    let (y, s) = self.interval_argmax(base, u, v, w[0], w[1]);
                    search += u64::from(s);
                    inner_b.query(u, v, Failure::Vertex(y)) as u32
                })
                .collect();
            let key_val: Vec<u32> = keys
                .iter()
                .map(|&k| if k == u || k == v { r } else { inner_c.query(u, v, Failure::Vertex(k)) as u32 })
                .collect();
            let idx = |x: usize| keys.iter().position(|&k| k == x).expect("level vertex is a key");
            for c in 1..=l {
                let i = idx(self.keys.cl(u, v, c));
                bl.push(interval.get(i).copied().unwrap_or(0));
                cl.push(key_val[i]);
                let i = idx(self.keys.cr(u, v, c));
                br.push(interval.get(i).copied().unwrap_or(0));
                cr.push(key_val[i]);
            }
        }
        (bl, br, cl, cr, search)
    }

    /// The vertex of `[s, t] ⊂ ρ(u, v)` maximizing `‖uv⋄·‖_r`, for
    /// `u < s < t < v`, and the number of lookups spent.
    pub(crate) fn interval_argmax(&self, base: &ApspData, u: usize, v: usize, s: usize, t: usize) -> (usize, u32) {
        let apsp = &base.apsp;
        let n = apsp.n();
        let trees = apsp.trees();
        let m = (trees.hop_raw(u, t) - trees.hop_raw(u, s)) as usize;
        let back = self.avoid.back_vertex_slice(u, t);
        let front = self.avoid.front_vertex_slice(s, v);
        debug_assert!(m <= back.len() && m <= front.len());
        let lookups = IntervalLookups {
            t: self,
            rmq_pair: u * n + t,
            back,
            front,
            m,
            us: apsp.dist_raw(u, s),
            tv: apsp.dist_raw(t, v),
            r: u64::from(self.radius),
        };
        let (p, count) = find_max_avoider(&lookups);
        let y = if p == m { t } else { self.avoid.back_node(u, t, m - p) };
        (y, count)
    }

    pub fn radius(&self) -> u64 {
        u64::from(self.radius)
    }

    pub fn stats(&self) -> &FastStats {
        &self.stats
    }

    pub fn keys(&self) -> &KeyVertexIndex {
        &self.keys
    }

    pub fn avoid(&self) -> &AvoidTables {
        &self.avoid
    }

    /// Brackets a failure known to lie on `ρ(u, v)` with tail `a` and head `b`.
    fn bracket<P: Probe>(&self, u: usize, v: usize, a: usize, b: usize, probe: &mut P) -> (usize, Side, u8, usize) {
        let k = &self.keys;
        let l = k.bcp(u, v);
        let bcp_ua = k.bcp(u, a);
        let bcp_bv = k.bcp(b, v);
        probe.lookup();
        probe.lookup();
        probe.lookup();
        let (k_prev, side, level) = if bcp_bv == l {
            (k.cl(u, v, bcp_ua), Side::Left, bcp_ua)
        } else {
            (k.cr(u, v, bcp_bv + 1), Side::Right, bcp_bv + 1)
        };
        let k_next = if bcp_ua == l { k.cr(u, v, bcp_bv) } else { k.cl(u, v, bcp_ua + 1) };
        probe.lookup();
        probe.lookup();
        (k_prev, side, level, k_next)
    }

    /// Locates a failure on `ρ(u, v)`; `None` when it is off the path or
    /// `u = v`.
    pub fn locate(&self, base: &ApspData, u: usize, v: usize, f: Failure) -> Option<Location> {
        let (a, b) = base.apsp.on_path_arc(&base.graph, u, v, f)?;
        if matches!(f, Failure::Vertex(_)) && self.keys.is_key_on_path(u, v, a) {
            return Some(Location::Key(a));
        }
        let (k_prev, _, _, k_next) = self.bracket(u, v, a, b, &mut ());
        Some(Location::Between { k_prev, k_next })
    }

    /// The bracketing terms for a failure strictly between two keys that are
    /// both interior to `ρ(u, v)`; `None` in every other case.
    pub fn bracket_terms(&self, base: &ApspData, u: usize, v: usize, f: Failure) -> Option<BracketTerms> {
        let (a, b) = base.apsp.on_path_arc(&base.graph, u, v, f)?;
        let vertex = matches!(f, Failure::Vertex(_));
        if vertex && self.keys.is_key_on_path(u, v, a) {
            return None;
        }
        let (k_prev, side, level, k_next) = self.bracket(u, v, a, b, &mut ());
        if k_prev == u || k_next == v {
            return None;
        }
        Some(self.terms(base, u, v, a, b, vertex, k_prev, side, level, k_next, &mut ()))
    }

    #[allow(clippy::too_many_arguments)]
    #[inline]
    fn terms<P: Probe>(
        &self,
        base: &ApspData,
        u: usize,
        v: usize,
        a: usize,
        b: usize,
        vertex: bool,
        k_prev: usize,
        side: Side,
        level: u8,
        k_next: usize,
        probe: &mut P,
    ) -> BracketTerms {
        let apsp = &base.apsp;
        let trees = apsp.trees();
        let r = u64::from(self.radius);
        let j = trees.hop_raw(a, k_next) as usize;
        let via_next = (u64::from(self.avoid.back(u, k_next, j, vertex)) + apsp.dist_raw(k_next, v)).min(r);
        let i = trees.hop_raw(k_prev, b) as usize;
        let via_prev = (apsp.dist_raw(u, k_prev) + u64::from(self.avoid.front(k_prev, v, i, vertex))).min(r);
        let slot = self.keys.level_base(u, v) + level as usize - 1;
        let interval_max = u64::from(match side {
            Side::Left => self.b_left[slot],
            Side::Right => self.b_right[slot],
        });
        for _ in 0..8 {
            probe.lookup();
        }
        BracketTerms { k_prev, k_next, via_next, via_prev, interval_max, radius: r }
    }

    /// `min{‖uv⋄f‖, r}` from the tables, counting lookups into `probe`.
    pub fn query_probed<P: Probe>(&self, base: &ApspData, u: usize, v: usize, f: Failure, probe: &mut P) -> u64 {
        let r = u64::from(self.radius);
        if let Failure::Vertex(x) = f {
            if x == u || x == v {
                return r;
            }
        }
        if u == v {
            return 0;
        }
        let apsp = &base.apsp;
        probe.lookup();
        let d = apsp.dist_raw(u, v);
        if d == INF {
            return r;
        }
        // Ancestor test: two timestamp pairs, plus the parent arc for edges.
        let located = apsp.on_path_arc(&base.graph, u, v, f);
        for _ in 0..if matches!(f, Failure::Edge(_)) { 5 } else { 2 } {
            probe.lookup();
        }
        let Some((a, b)) = located else {
            return d.min(r);
        };
        let vertex = matches!(f, Failure::Vertex(_));
        if vertex {
            probe.lookup();
            probe.lookup();
            if self.keys.is_key_on_path(u, v, a) {
                probe.lookup();
                let c = self.keys.priority(a);
                let slot = self.keys.level_base(u, v) + c as usize - 1;
                return u64::from(if self.keys.cl(u, v, c) == a { self.c_left[slot] } else { self.c_right[slot] });
            }
        }
        let (k_prev, side, level, k_next) = self.bracket(u, v, a, b, probe);
        let trees = apsp.trees();
        if k_prev == u {
            probe.lookup();
            probe.lookup();
            return u64::from(self.avoid.front(u, v, trees.hop_raw(u, b) as usize, vertex));
        }
        if k_next == v {
            probe.lookup();
            probe.lookup();
            return u64::from(self.avoid.back(u, v, trees.hop_raw(a, v) as usize, vertex));
        }
        self.terms(base, u, v, a, b, vertex, k_prev, side, level, k_next, probe).value()
    }
}

/// A built Fast oracle bound to its APSP data.
#[derive(Clone, Debug)]
pub struct FastOracle<'a> {
    base: &'a ApspData,
    tables: FastTables,
}

impl<'a> FastOracle<'a> {
    pub fn build<D: TruncatedOracle>(base: &'a ApspData, inner: &D, cfg: &FastConfig) -> Result<Self> {
        Ok(FastOracle { base, tables: FastTables::build(base, inner, cfg)? })
    }

    pub fn from_tables(base: &'a ApspData, tables: FastTables) -> Self {
        FastOracle { base, tables }
    }

    pub fn tables(&self) -> &FastTables {
        &self.tables
    }

    pub fn into_tables(self) -> FastTables {
        self.tables
    }

    pub fn query_probed<P: Probe>(&self, u: usize, v: usize, f: Failure, probe: &mut P) -> u64 {
        self.tables.query_probed(self.base, u, v, f, probe)
    }

    pub fn locate(&self, u: usize, v: usize, f: Failure) -> Option<Location> {
        self.tables.locate(self.base, u, v, f)
    }

    pub fn bracket_terms(&self, u: usize, v: usize, f: Failure) -> Option<BracketTerms> {
        self.tables.bracket_terms(self.base, u, v, f)
    }

    /// Searches `[s, t] ⊂ ρ(u, v)` with the endpoint tables and RMQ.
    pub fn interval_argmax(&self, u: usize, v: usize, s: usize, t: usize) -> usize {
        self.tables.interval_argmax(self.base, u, v, s, t).0
    }
}

impl TruncatedOracle for FastOracle<'_> {
    fn radius(&self) -> u64 {
        self.tables.radius()
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        self.tables.query_probed(self.base, u, v, f, &mut ())
    }
}
