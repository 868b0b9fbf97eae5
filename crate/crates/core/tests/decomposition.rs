mod common;

use common::{queries, random_graph};
use dso_core::apsp::ApspConfig;
use dso_core::baseline::{ExactTruncated, ReplacementTable};
use dso_core::fast::max_avoider::{find_max_avoider, AvoiderLookups};
use dso_core::fast::rmq::RmqIndex;
use dso_core::fast::{ApspData, FastConfig, FastOracle, Location};
use dso_core::{Failure, TruncatedOracle};

#[test]
fn bracket_terms_give_truncated_distance() {
    let mut checked = 0;
    for seed in 0..4 {
        let g = random_graph(24, 40, 2, seed);
        let table = ReplacementTable::build(&g);
        let base = ApspData::build(g.clone(), &ApspConfig::default()).unwrap();
        for r in [6, 12, 48] {
            let inner = ExactTruncated { table: &table, radius: r };
            // A small confidence constant leaves more interior keys.
            let cfg = FastConfig { seed, confidence: 0.5, ..Default::default() };
            let fast = FastOracle::build(&base, &inner, &cfg).unwrap();
            for (u, v, f) in queries(&g) {
                if let Some(t) = fast.bracket_terms(u, v, f) {
                    assert_eq!(t.value(), inner.query(u, v, f), "({u},{v},{f}) r={r}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "only {checked} bracketed queries");
}

#[test]
fn key_failures_are_located_as_keys() {
    let g = random_graph(20, 50, 1, 3);
    let table = ReplacementTable::build(&g);
    let base = ApspData::build(g.clone(), &ApspConfig::default()).unwrap();
    let inner = ExactTruncated { table: &table, radius: 40 };
    let fast = FastOracle::build(&base, &inner, &FastConfig::default()).unwrap();
    let keys = fast.tables().keys();
    for u in 0..20 {
        for v in 0..20 {
            let k = keys.keys(u, v);
            for &x in k.iter().filter(|&&x| x != u && x != v) {
                assert_eq!(fast.locate(u, v, Failure::Vertex(x)), Some(Location::Key(x)));
            }
        }
    }
}

/// Interval lookups read from exact replacement distances.
struct Exact {
    back: Vec<u32>,
    front: Vec<u64>,
    rmq: RmqIndex,
    us: u64,
    tv: u64,
    r: u64,
}

impl AvoiderLookups for Exact {
    fn span(&self) -> usize {
        self.front.len() - 1
    }
    fn ut_avoid(&self, p: usize) -> u64 {
        if p == self.span() { self.r } else { u64::from(self.back[p]) }
    }
    fn sv_avoid(&self, p: usize) -> u64 {
        if p == 0 { self.r } else { self.front[p] }
    }
    fn ut_argmax(&self, lo: usize, hi: usize) -> usize {
        self.rmq.argmax(0, &self.back, lo, hi)
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

#[test]
fn interval_search_matches_linear_scan() {
    for seed in 0..3 {
        let g = random_graph(22, 30, 2, 50 + seed);
        let table = ReplacementTable::build(&g);
        let base = ApspData::build(g.clone(), &ApspConfig::default()).unwrap();
        let apsp = base.apsp();
        for r in [5, 20] {
            let o = ExactTruncated { table: &table, radius: r };
            let dist = |a: usize, b: usize| apsp.dist(a, b).finite().unwrap();
            for u in 0..22 {
                for v in 0..22 {
                    let Some(p) = apsp.path_vertices(u, v) else { continue };
                    for i in 1..p.len() {
                        for j in i + 1..p.len() - 1 {
                            let (s, t) = (p[i], p[j]);
                            let seg = &p[i..=j];
                            let back: Vec<u32> = seg[..seg.len() - 1].iter().map(|&x| o.query(u, t, Failure::Vertex(x)) as u32).collect();
                            let front: Vec<u64> = seg.iter().map(|&x| o.query(s, v, Failure::Vertex(x))).collect();
                            let rmq = RmqIndex::build([&back[..]]);
                            let l = Exact { back, front, rmq, us: dist(u, s), tv: dist(t, v), r };
                            let (pos, _) = find_max_avoider(&l);
                            let best = seg.iter().map(|&x| o.query(u, v, Failure::Vertex(x))).max().unwrap();
                            assert_eq!(o.query(u, v, Failure::Vertex(seg[pos])), best, "({u},{v}) [{s},{t}] r={r}");
                        }
                    }
                }
            }
        }
    }
}
