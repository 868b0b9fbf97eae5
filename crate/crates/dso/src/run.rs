//! Build, verification and benchmark runs behind the CLI subcommands.

use std::collections::BTreeMap;
use std::time::Instant;

use dso_core::baseline::{brute_distance, ReplacementTable};
use dso_core::oracle::LookupCounter;
use dso_core::pipeline::BuildEvent;
use dso_core::{DsoConfig, Failure, FullDso, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::{GraphSummary, Mismatch, QuerySection, RunReport, Timings, VerifySection};

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Builds the oracle, timing the APSP step and each stage.
pub fn build_timed(graph: Graph, cfg: &DsoConfig) -> Result<(FullDso, Timings)> {
    let start = Instant::now();
    let mut last = start;
    let mut t = Timings::default();
    let dso = FullDso::build_observed(graph, cfg, |e| {
        let now = Instant::now();
        let span = (now - last).as_secs_f64() * 1e3;
        last = now;
        match e {
            BuildEvent::ApspDone => t.apsp_ms = span,
            BuildEvent::StageDone(_) => t.stage_ms.push(span),
        }
    })
    .map_err(Error::from_build)?;
    t.build_ms = ms(start);
    Ok((dso, t))
}

pub fn report(command: &'static str, dso: &FullDso, time: Timings) -> RunReport {
    RunReport {
        command,
        graph: GraphSummary::of(dso.graph()),
        config: *dso.config(),
        base_radius: dso.base_radius(),
        cap: dso.cap(),
        stages: dso.stages().to_vec(),
        verify: None,
        queries: None,
        time,
    }
}

/// A uniform valid query: endpoint-failure triples are redrawn.
pub fn random_query(g: &Graph, rng: &mut impl Rng) -> (usize, usize, Failure) {
    let (n, m) = (g.vertex_count(), g.edge_count());
    loop {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let i = rng.random_range(0..n + m);
        let f = if i < n { Failure::Vertex(i) } else { Failure::Edge(i - n) };
        if f != Failure::Vertex(u) && f != Failure::Vertex(v) {
            return (u, v, f);
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Enumerate every triple when `n³ + n²m` is at most this.
    pub budget: u64,
    /// Queries to sample otherwise.
    pub samples: u64,
    pub sample_seed: u64,
    /// Damage one stored distance first, to check that mismatches are caught.
    pub corrupt: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: 2_000_000, samples: 20_000, sample_seed: 0, corrupt: false }
    }
}

const EXAMPLES: usize = 10;

/// Builds the oracle and compares it with Dijkstra on `G − f`.
pub fn verify(graph: Graph, cfg: &DsoConfig, opts: &VerifyOptions) -> Result<RunReport> {
    let (mut dso, mut time) = build_timed(graph, cfg)?;
    if opts.corrupt && !dso.corrupt_for_self_test() {
        return Err(Error::Input("graph has no finite distance to corrupt".into()));
    }
    let g = dso.graph().clone();
    let (n, m) = (g.vertex_count() as u64, g.edge_count() as u64);
    let start = Instant::now();
    let mut section = VerifySection { mode: "exhaustive", sample_seed: opts.sample_seed, checked: 0, mismatches: 0, examples: Vec::new() };
    let record = |s: &mut VerifySection, u, v, f, want| {
        let got = dso.query(u, v, f).expect("valid query");
        s.checked += 1;
        if got != want {
            s.mismatches += 1;
            if s.examples.len() < EXAMPLES {
                s.examples.push(Mismatch::new(u, v, f, got, want));
            }
        }
    };
    if n * n * n + n * n * m <= opts.budget {
        let table = ReplacementTable::build(&g);
        for f in g.failures() {
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    if f != Failure::Vertex(u) && f != Failure::Vertex(v) {
                        record(&mut section, u, v, f, table.get(u, v, f));
                    }
                }
            }
        }
    } else {
        section.mode = "sampled";
        let mut rng = ChaCha8Rng::seed_from_u64(opts.sample_seed);
        for _ in 0..opts.samples {
            let (u, v, f) = random_query(&g, &mut rng);
            record(&mut section, u, v, f, brute_distance(&g, u, v, f)?);
        }
    }
    time.verify_ms = Some(ms(start));
    let mut r = report("verify", &dso, time);
    r.verify = Some(section);
    Ok(r)
}

/// Times `queries` uniform random queries and histograms their lookups.
pub fn bench(graph: Graph, cfg: &DsoConfig, queries: u64, sample_seed: u64) -> Result<RunReport> {
    let (dso, mut time) = build_timed(graph, cfg)?;
    let q = measure(&dso, queries, sample_seed, &mut time);
    let mut r = report("bench", &dso, time);
    r.queries = Some(q);
    Ok(r)
}

fn median<T: Copy + Ord>(xs: &mut [T]) -> Option<T> {
    xs.sort_unstable();
    xs.get(xs.len().saturating_sub(1) / 2).copied()
}

pub fn measure(dso: &FullDso, queries: u64, sample_seed: u64, time: &mut Timings) -> QuerySection {
    let g = dso.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let mut lookups = Vec::with_capacity(queries as usize);
    let mut nanos = Vec::with_capacity(queries as usize);
    for _ in 0..queries {
        let (u, v, f) = random_query(g, &mut rng);
        let mut probe = LookupCounter::default();
        let t = Instant::now();
        let d = dso.query_probed(u, v, f, &mut probe);
        nanos.push(t.elapsed().as_nanos() as u64);
        std::hint::black_box(d).expect("valid query");
        lookups.push(probe.lookups);
    }
    let mut hist = BTreeMap::new();
    for &l in &lookups {
        *hist.entry(l).or_insert(0) += 1;
    }
    if queries > 0 {
        time.query_mean_ns = Some(nanos.iter().sum::<u64>() as f64 / queries as f64);
        time.query_median_ns = median(&mut nanos).map(|x| x as f64);
    }
    QuerySection {
        sample_seed,
        count: queries,
        lookups_max: lookups.iter().copied().max().unwrap_or(0),
        lookups_mean: if queries > 0 { lookups.iter().sum::<u64>() as f64 / queries as f64 } else { 0.0 },
        lookups_median: median(&mut lookups).unwrap_or(0),
        lookups_histogram: hist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dso_core::graph::fixtures;

    #[test]
    fn fix_b_verifies_clean() {
        let r = verify(fixtures::fix_b(), &DsoConfig::default(), &VerifyOptions::default()).unwrap();
        let v = r.verify.unwrap();
        assert_eq!(v.mode, "exhaustive");
        assert_eq!(v.mismatches, 0);
        // 5 vertex failures × 16 pairs avoiding them + 5 edge failures × 25 pairs.
        assert_eq!(v.checked, 5 * 16 + 5 * 25);
    }

    #[test]
    fn corruption_is_caught() {
        let opts = VerifyOptions { corrupt: true, ..Default::default() };
        let r = verify(fixtures::fix_b(), &DsoConfig::default(), &opts).unwrap();
        assert!(r.verify.unwrap().mismatches > 0);
    }

    #[test]
    fn sampled_mode_above_budget() {
        let opts = VerifyOptions { budget: 10, samples: 300, ..Default::default() };
        let r = verify(fixtures::fix_a(), &DsoConfig::default(), &opts).unwrap();
        let v = r.verify.unwrap();
        assert_eq!((v.mode, v.checked, v.mismatches), ("sampled", 300, 0));
    }

    #[test]
    fn empty_bench_has_no_query_stats() {
        let r = bench(fixtures::fix_a(), &DsoConfig::default(), 0, 1).unwrap();
        let text = r.to_text();
        assert!(text.contains("queries.count=0\n"));
        assert!(!text.contains("queries.lookups"));
    }

    #[test]
    fn bench_counters_are_deterministic() {
        let a = bench(fixtures::fix_b(), &DsoConfig::default(), 500, 7).unwrap();
        let b = bench(fixtures::fix_b(), &DsoConfig::default(), 500, 7).unwrap();
        assert_eq!(a.deterministic_text(), b.deterministic_text());
    }
}
