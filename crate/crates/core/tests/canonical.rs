mod common;

use common::random_graph;
use dso_core::apsp::{ApspConfig, CanonicalApsp};
use dso_core::baseline::CanonicalReference;
use dso_core::Graph;

fn graphs() -> impl Iterator<Item = Graph> {
    (0..4).flat_map(|s| [random_graph(12, 36, 1, s), random_graph(16, 40, 3, 100 + s), random_graph(20, 30, 2, 200 + s)])
}

#[test]
fn matches_reference_definition() {
    for g in graphs() {
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let r = CanonicalReference::new(&g);
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                assert_eq!(a.dist(u, v), r.dist(u, v));
                if u != v {
                    assert_eq!(a.bottleneck(u, v), r.bottleneck(u, v), "w({u},{v})");
                }
                assert_eq!(a.path_vertices(u, v), r.path(u, v), "rho({u},{v})");
            }
        }
    }
}

#[test]
fn subpaths_are_canonical() {
    for g in graphs() {
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let Some(p) = a.path_vertices(u, v) else { continue };
                for i in 0..p.len() {
                    for j in i..p.len() {
                        assert_eq!(a.path_vertices(p[i], p[j]).unwrap(), &p[i..=j]);
                    }
                }
            }
        }
    }
}

#[test]
fn paths_avoiding_a_failure_survive_it() {
    for g in graphs().take(6) {
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let n = g.vertex_count();
        for f in g.failures() {
            let view = g.remove_failure(f).unwrap();
            let af = CanonicalApsp::build(&view, &ApspConfig::default()).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if a.dist(u, v).is_finite() && !a.on_path(&g, u, v, f) && f != dso_core::Failure::Vertex(u) && f != dso_core::Failure::Vertex(v) {
                        assert_eq!(af.path_vertices(u, v), a.path_vertices(u, v), "({u},{v},{f})");
                    }
                }
            }
        }
    }
}

#[test]
fn paths_have_shortest_length() {
    for g in graphs() {
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let Some(arcs) = a.canonical_path(u, v) else { continue };
                let len: u64 = arcs.iter().map(|&id| u64::from(g.arc(id).weight)).sum();
                assert_eq!(a.dist(u, v).finite(), Some(len));
            }
        }
    }
}
