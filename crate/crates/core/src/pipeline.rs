//! End-to-end build: canonical APSP once, a sampled oracle at the base
//! radius, then `Fast(Extend(·))` stages growing the radius by `3/2` until it
//! covers every finite distance.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::apsp::ApspConfig;
use crate::error::{Error, Result};
use crate::extend::{ExtendConfig, ExtendedOracle};
use crate::fast::{ApspData, FastConfig, FastOracle, FastTables};
use crate::graph::{Failure, Graph, PathLength};
use crate::oracle::{Probe, TruncatedOracle};
use crate::rng;
use crate::sampled::{SampleKernel, SampledConfig, SampledDso};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DsoConfig {
    /// Base radius exponent: `r₀ = max{⌈n^a⌉, 3M, 2}`.
    pub a: f64,
    /// Confidence constant `C` shared by every randomized stage.
    pub confidence: f64,
    pub seed: u64,
    pub retry_budget: u32,
    /// `c_H` for the bottleneck rounds of the APSP step.
    pub bridge_constant: f64,
    pub kernel: SampleKernel,
}

impl Default for DsoConfig {
    fn default() -> Self {
        DsoConfig {
            a: 0.276724,
            confidence: 4.0,
            seed: 0,
            retry_budget: 64,
            bridge_constant: 3.0,
            kernel: SampleKernel::BoundedDijkstra,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerKind {
    Sampled,
    Extend,
}

/// What one `Fast` stage did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub index: usize,
    pub inner: InnerKind,
    pub radius: u64,
    /// Preprocessing runs of this stage's inner oracle.
    pub inner_builds: u32,
    /// Queries the `Fast` build made to its inner oracle.
    pub inner_queries: u64,
    pub bridges: Option<usize>,
    pub samples: Option<usize>,
    pub inner_attempts: u32,
    pub priority_attempts: u32,
}

/// Progress notifications from [`FullDso::build_observed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildEvent<'a> {
    ApspDone,
    StageDone(&'a StageReport),
}

/// `r₀ = max{⌈n^a⌉, 3M, 2}`.
pub fn base_radius(n: usize, max_weight: u32, a: f64) -> u64 {
    let pow = libm::ceil(libm::pow(n as f64, a)) as u64;
    pow.max(3 * u64::from(max_weight)).max(2)
}

/// A complete oracle: exact distances avoiding one failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullDso {
    base: ApspData,
    top: FastTables,
    config: DsoConfig,
    base_radius: u64,
    stages: Vec<StageReport>,
}

fn stage_seed(seed: u64, kind: u64, index: usize) -> u64 {
    rng::derive(seed, (kind << 32) | index as u64)
}

impl FullDso {
    pub fn build(graph: Graph, cfg: &DsoConfig) -> Result<Self> {
        Self::build_observed(graph, cfg, |_| {})
    }

    /// Like [`build`](Self::build), calling `observe` after the APSP step
    /// and after every stage.
    pub fn build_observed(graph: Graph, cfg: &DsoConfig, mut observe: impl FnMut(BuildEvent<'_>)) -> Result<Self> {
        let n = graph.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { n, min: 2 });
        }
        let max_w = graph.max_weight();
        let target = n as u64 * u64::from(max_w);
        let apsp_cfg = ApspConfig {
            bridge_constant: cfg.bridge_constant,
            seed: stage_seed(cfg.seed, 1, 0),
            retry_budget: cfg.retry_budget,
        };
        let base = ApspData::build(graph, &apsp_cfg)?;
        observe(BuildEvent::ApspDone);
        let graph = base.graph();
        let r0 = base_radius(n, max_w, cfg.a);
        let fast_cfg = |i| FastConfig {
            confidence: cfg.confidence,
            seed: stage_seed(cfg.seed, 2, i),
            retry_budget: cfg.retry_budget,
        };

        // Preprocessing runs per stage; entry `i` is the inner oracle of
        // Fast stage `i`.
        let mut builds = vec![0u32];
        let sampled = SampledDso::build(
            graph,
            r0,
            &SampledConfig {
                confidence: cfg.confidence,
                seed: stage_seed(cfg.seed, 3, 0),
                retry_budget: cfg.retry_budget,
                kernel: cfg.kernel,
            },
        )?;
        builds[0] += 1;
        let stats = sampled.stats();
        let mut top = FastTables::build(&base, &sampled, &fast_cfg(0))?;
        drop(sampled);
        let mut stages = vec![StageReport {
            index: 0,
            inner: InnerKind::Sampled,
            radius: top.radius(),
            inner_builds: builds[0],
            inner_queries: top.stats().inner_queries(),
            bridges: None,
            samples: Some(stats.samples),
            inner_attempts: stats.edge_attempts.max(stats.vertex_attempts),
            priority_attempts: top.stats().priority_attempts,
        }];
        observe(BuildEvent::StageDone(&stages[0]));

        let mut i = 0;
        while top.radius() < target {
            i += 1;
            builds.push(0);
            let prev = FastOracle::from_tables(&base, top);
            let ext_cfg = ExtendConfig {
                confidence: cfg.confidence,
                seed: stage_seed(cfg.seed, 4, i),
                retry_budget: cfg.retry_budget,
            };
            let extended = ExtendedOracle::build(prev, graph, &ext_cfg)?;
            builds[i] += 1;
            let next = FastTables::build(&base, &extended, &fast_cfg(i))?;
            stages.push(StageReport {
                index: i,
                inner: InnerKind::Extend,
                radius: next.radius(),
                inner_builds: builds[i],
                inner_queries: next.stats().inner_queries(),
                bridges: Some(extended.bridges().len()),
                samples: None,
                inner_attempts: extended.attempts(),
                priority_attempts: next.stats().priority_attempts,
            });
            observe(BuildEvent::StageDone(&stages[i]));
            top = next;
        }
        Ok(FullDso { base, top, config: *cfg, base_radius: r0, stages })
    }

    pub fn graph(&self) -> &Graph {
        self.base.graph()
    }

    pub fn apsp_data(&self) -> &ApspData {
        &self.base
    }

    pub fn top(&self) -> &FastTables {
        &self.top
    }

    pub fn config(&self) -> &DsoConfig {
        &self.config
    }

    pub fn base_radius(&self) -> u64 {
        self.base_radius
    }

    /// Radius of the final stage; at least `n·M`.
    pub fn cap(&self) -> u64 {
        self.top.radius()
    }

    pub fn stages(&self) -> &[StageReport] {
        &self.stages
    }

    pub fn query(&self, u: usize, v: usize, f: Failure) -> Result<PathLength> {
        self.query_probed(u, v, f, &mut ())
    }

    /// Like [`query`](Self::query), reporting each table lookup to `probe`.
    pub fn query_probed<P: Probe>(&self, u: usize, v: usize, f: Failure, probe: &mut P) -> Result<PathLength> {
        let g = self.base.graph();
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        g.check_failure(f)?;
        if let Failure::Vertex(x) = f {
            if x == u || x == v {
                return Err(Error::EndpointFailure { vertex: x });
            }
        }
        let d = self.top.query_probed(&self.base, u, v, f, probe);
        Ok(if d >= self.cap() { PathLength::Unreachable } else { PathLength::Finite(d) })
    }

    /// Bumps one stored distance so that verification must report
    /// mismatches. Used to test the verifier itself.
    #[doc(hidden)]
    pub fn corrupt_for_self_test(&mut self) -> bool {
        self.base.corrupt_one_distance()
    }
}

impl TruncatedOracle for FullDso {
    fn radius(&self) -> u64 {
        self.cap()
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        self.top.query_probed(&self.base, u, v, f, &mut ())
    }
}
