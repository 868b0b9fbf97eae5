mod common;

use common::{queries, random_graph};
use dso_core::baseline::ReplacementTable;
use dso_core::{DsoConfig, FullDso};

fn check(n: usize, m: usize, max_w: u32, seed: u64) {
    let g = random_graph(n, m, max_w, seed);
    let table = ReplacementTable::build(&g);
    let cfg = DsoConfig { seed, ..DsoConfig::default() };
    let dso = FullDso::build(g.clone(), &cfg).unwrap();
    for (u, v, f) in queries(&g) {
        assert_eq!(dso.query(u, v, f).unwrap(), table.get(u, v, f), "n={n} seed={seed} query ({u},{v},{f})");
    }
}

#[test]
fn small_unit_weight_graphs() {
    for seed in 0..6 {
        check(12, 40, 1, seed);
    }
}

#[test]
fn small_weighted_graphs() {
    for seed in 0..6 {
        check(12, 40, 4, seed);
    }
}

#[test]
fn sparse_long_paths() {
    for seed in 0..4 {
        check(25, 30, 2, seed);
    }
}

#[test]
fn denser_graph() {
    check(30, 150, 3, 7);
}
