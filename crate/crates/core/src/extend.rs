//! Radius extension by a random bridging set.
//!
//! Given an `r`-truncated oracle `D`, `Extend(D)` answers up to `⌈3r/2⌉`:
//! a replacement path of length in `[r, 3r/2)` has a stretch of vertices at
//! distance below `r` from both ends, and a random set `H` hits that stretch
//! with high probability. Queries scan `H`, so they cost `O(|H|)` inner
//! queries.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Failure, Graph};
use crate::oracle::TruncatedOracle;
use crate::rng::{self, Purpose};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendConfig {
    pub confidence: f64,
    pub seed: u64,
    pub retry_budget: u32,
}

impl Default for ExtendConfig {
    fn default() -> Self {
        ExtendConfig { confidence: 4.0, seed: 0, retry_budget: 64 }
    }
}

#[derive(Debug)]
pub struct ExtendedOracle<D> {
    inner: D,
    bridges: Vec<u32>,
    radius: u64,
    probability: f64,
    attempts: u32,
}

impl<D: TruncatedOracle> ExtendedOracle<D> {
    /// Wraps an already built `inner`; its radius must be at least `3M`.
    pub fn build(inner: D, graph: &Graph, cfg: &ExtendConfig) -> Result<Self> {
        let r = inner.radius();
        let max_w = u64::from(graph.max_weight());
        if r < 3 * max_w {
            return Err(Error::RadiusTooSmall { radius: r, min: 3 * max_w });
        }
        let n = graph.vertex_count();
        let ln_n = libm::log(n.max(2) as f64);
        let p = (3.0 * cfg.confidence * max_w as f64 * ln_n / r as f64).min(1.0);
        let radius = (3 * r).div_ceil(2);
        if p >= 1.0 {
            let bridges = (0..n as u32).collect();
            return Ok(ExtendedOracle { inner, bridges, radius, probability: 1.0, attempts: 1 });
        }
        let limit = 2.0 * p * n as f64;
        for attempt in 1..=cfg.retry_budget {
            let mut rng = rng::stream(cfg.seed, Purpose::ExtendBridge, u64::from(attempt));
            let bridges: Vec<u32> = (0..n as u32).filter(|_| rng.random_bool(p)).collect();
            if bridges.len() as f64 <= limit {
                return Ok(ExtendedOracle { inner, bridges, radius, probability: p, attempts: attempt });
            }
        }
        Err(Error::RetryBudgetExhausted {
            stage: "extend",
            budget: cfg.retry_budget,
            reason: alloc::format!("bridging set kept exceeding {limit:.1} vertices"),
        })
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }

    pub fn into_inner(self) -> D {
        self.inner
    }

    pub fn bridges(&self) -> &[u32] {
        &self.bridges
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn attempts(&self) -> u32 {
        self.attempts
    }
}

impl<D: TruncatedOracle> TruncatedOracle for ExtendedOracle<D> {
    fn radius(&self) -> u64 {
        self.radius
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        let r = self.inner.radius();
        let d = self.inner.query(u, v, f);
        if d < r {
            return d;
        }
        let mut best = self.radius;
        for &h in &self.bridges {
            let h = h as usize;
            let left = self.inner.query(u, h, f);
            if left >= r || left >= best {
                continue;
            }
            let right = self.inner.query(h, v, f);
            if right < r {
                best = best.min(left + right);
            }
        }
        best
    }
}
