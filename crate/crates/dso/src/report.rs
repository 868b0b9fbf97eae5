//! Run reports: line-oriented `key=value` text, or JSON.
//!
//! Wall-clock entries all live under the `time.` prefix; every other line is
//! a deterministic function of the input and seeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dso_core::pipeline::{InnerKind, StageReport};
use dso_core::{DsoConfig, Failure, Graph, PathLength};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_weight: u32,
    pub directed: bool,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary { n: g.vertex_count(), m: g.edge_count(), max_weight: g.max_weight(), directed: g.is_directed() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub u: usize,
    pub v: usize,
    pub failure: String,
    pub got: String,
    pub want: String,
}

impl Mismatch {
    pub fn new(u: usize, v: usize, f: Failure, got: PathLength, want: PathLength) -> Self {
        Mismatch { u, v, failure: f.to_string(), got: show(got), want: show(want) }
    }
}

pub fn show(d: PathLength) -> String {
    match d {
        PathLength::Finite(x) => x.to_string(),
        PathLength::Unreachable => "unreachable".into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySection {
    /// `exhaustive` or `sampled`.
    pub mode: &'static str,
    pub sample_seed: u64,
    pub checked: u64,
    pub mismatches: u64,
    /// The first few mismatches, in enumeration order.
    pub examples: Vec<Mismatch>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QuerySection {
    pub sample_seed: u64,
    pub count: u64,
    pub lookups_max: u64,
    pub lookups_mean: f64,
    pub lookups_median: u64,
    /// Lookup count → number of queries.
    pub lookups_histogram: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub apsp_ms: f64,
    pub stage_ms: Vec<f64>,
    pub build_ms: f64,
    pub verify_ms: Option<f64>,
    pub query_mean_ns: Option<f64>,
    pub query_median_ns: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub graph: GraphSummary,
    pub config: DsoConfig,
    pub base_radius: u64,
    pub cap: u64,
    pub stages: Vec<StageReport>,
    pub verify: Option<VerifySection>,
    pub queries: Option<QuerySection>,
    pub time: Timings,
}

fn kind(k: InnerKind) -> &'static str {
    match k {
        InnerKind::Sampled => "sampled",
        InnerKind::Extend => "extend",
    }
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(o, "{k}={v}");
        };
        kv("command", &self.command);
        kv("graph.n", &self.graph.n);
        kv("graph.m", &self.graph.m);
        kv("graph.max_weight", &self.graph.max_weight);
        kv("graph.directed", &self.graph.directed);
        kv("config.a", &self.config.a);
        kv("config.C", &self.config.confidence);
        kv("config.seed", &self.config.seed);
        kv("config.retry_budget", &self.config.retry_budget);
        kv("base_radius", &self.base_radius);
        kv("cap", &self.cap);
        kv("stages", &self.stages.len());
        for s in &self.stages {
            let p = format!("stage.{}", s.index);
            kv(&format!("{p}.inner"), &kind(s.inner));
            kv(&format!("{p}.radius"), &s.radius);
            kv(&format!("{p}.inner_builds"), &s.inner_builds);
            kv(&format!("{p}.inner_queries"), &s.inner_queries);
            if let Some(x) = s.samples {
                kv(&format!("{p}.samples"), &x);
            }
            if let Some(x) = s.bridges {
                kv(&format!("{p}.bridges"), &x);
            }
            kv(&format!("{p}.inner_attempts"), &s.inner_attempts);
            kv(&format!("{p}.priority_attempts"), &s.priority_attempts);
        }
        if let Some(v) = &self.verify {
            kv("verify.mode", &v.mode);
            kv("verify.sample_seed", &v.sample_seed);
            kv("verify.checked", &v.checked);
            kv("mismatches", &v.mismatches);
            for (i, m) in v.examples.iter().enumerate() {
                kv(&format!("mismatch.{i}"), &format_args!("{} {} {} got={} want={}", m.u, m.v, m.failure, m.got, m.want));
            }
        }
        if let Some(q) = &self.queries {
            kv("queries.sample_seed", &q.sample_seed);
            kv("queries.count", &q.count);
            if q.count > 0 {
                kv("queries.lookups.max", &q.lookups_max);
                kv("queries.lookups.mean", &format_args!("{:.3}", q.lookups_mean));
                kv("queries.lookups.median", &q.lookups_median);
                for (k, c) in &q.lookups_histogram {
                    kv(&format!("queries.lookups.hist.{k}"), c);
                }
            }
        }
        let t = &self.time;
        kv("time.apsp_ms", &format_args!("{:.3}", t.apsp_ms));
        for (i, ms) in t.stage_ms.iter().enumerate() {
            kv(&format!("time.stage.{i}_ms"), &format_args!("{ms:.3}"));
        }
        kv("time.build_ms", &format_args!("{:.3}", t.build_ms));
        if let Some(x) = t.verify_ms {
            kv("time.verify_ms", &format_args!("{x:.3}"));
        }
        if let Some(x) = t.query_mean_ns {
            kv("time.query_mean_ns", &format_args!("{x:.1}"));
        }
        if let Some(x) = t.query_median_ns {
            kv("time.query_median_ns", &format_args!("{x:.1}"));
        }
        o
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The text form without `time.` lines.
    pub fn deterministic_text(&self) -> String {
        self.to_text().lines().filter(|l| !l.starts_with("time.")).map(|l| format!("{l}\n")).collect()
    }
}
