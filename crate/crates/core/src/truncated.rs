//! Hop-truncated all-pairs distances.
//!
//! The output is exact for every pair that has a shortest path with at most
//! `r` arcs and is an upper bound (a walk length, or `Unreachable`) for the
//! rest.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{GraphView, PathLength, INF};
use crate::par;
use crate::rng::{self, Purpose};

/// Dense `rows × cols` matrix of path lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistMatrix {
    rows: usize,
    cols: usize,
    raw: Vec<u64>,
}

impl DistMatrix {
    pub fn unreachable(rows: usize, cols: usize) -> Self {
        DistMatrix { rows, cols, raw: vec![INF; rows * cols] }
    }

    pub fn from_rows(rows: &[&[PathLength]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let raw = rows.iter().flat_map(|r| r.iter().map(|d| d.raw())).collect();
        Ok(DistMatrix { rows: rows.len(), cols, raw })
    }

    /// Zero diagonal plus one entry per arc (the lightest parallel arc wins).
    pub fn adjacency<V: GraphView>(view: &V) -> Self {
        let n = view.vertex_count();
        let mut m = DistMatrix::unreachable(n, n);
        for u in 0..n {
            if !view.has_vertex(u) {
                continue;
            }
            m.raw[u * n + u] = 0;
            for (_, arc) in view.out_arcs(u) {
                let slot = &mut m.raw[u * n + arc.head as usize];
                *slot = (*slot).min(u64::from(arc.weight));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, u: usize, v: usize) -> PathLength {
        PathLength::from_raw(self.raw[u * self.cols + v])
    }

    pub fn set(&mut self, u: usize, v: usize, d: PathLength) {
        self.raw[u * self.cols + v] = d.raw();
    }

    fn columns(&self, keep: &[usize]) -> DistMatrix {
        let mut out = DistMatrix::unreachable(self.rows, keep.len());
        for u in 0..self.rows {
            for (j, &h) in keep.iter().enumerate() {
                out.raw[u * keep.len() + j] = self.raw[u * self.cols + h];
            }
        }
        out
    }

    fn rows_of(&self, keep: &[usize]) -> DistMatrix {
        let mut raw = Vec::with_capacity(keep.len() * self.cols);
        for &h in keep {
            raw.extend_from_slice(&self.raw[h * self.cols..(h + 1) * self.cols]);
        }
        DistMatrix { rows: keep.len(), cols: self.cols, raw }
    }

    fn min_assign(&mut self, other: &DistMatrix) {
        for (a, &b) in self.raw.iter_mut().zip(&other.raw) {
            *a = (*a).min(b);
        }
    }
}

/// `C[u][v] = min_h A[u][h] + B[h][v]`, with `Unreachable` absorbing.
pub fn minplus_product(a: &DistMatrix, b: &DistMatrix) -> Result<DistMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{}x{} by {}x{}",
            a.rows,
            a.cols,
            b.rows,
            b.cols
        )));
    }
    let cols = b.cols;
    let raw = par::map_range(a.rows, |u| {
        let mut row = vec![INF; cols];
        for h in 0..a.cols {
            let x = a.raw[u * a.cols + h];
            if x == INF {
                continue;
            }
            let brow = &b.raw[h * cols..(h + 1) * cols];
            for (slot, &y) in row.iter_mut().zip(brow) {
                if y != INF && x + y < *slot {
                    *slot = x + y;
                }
            }
        }
        row
    })
    .concat();
    Ok(DistMatrix { rows: a.rows, cols, raw })
}

/// How the truncated distances are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TruncationKernel {
    /// `⌈log₂ r⌉` rounds of min-plus squaring.
    #[default]
    Squaring,
    /// Random bridging rounds: round `i` samples a vertex set `B` and
    /// relaxes through it with `D ← min(D, D[:, B] ⋆ D[B, :])`.
    Bridging { seed: u64 },
}

/// Distances that are exact whenever some shortest path has at most
/// `r_hops` arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopTruncatedDistances {
    pub r_hops: usize,
    pub d: DistMatrix,
}

pub fn hop_truncated_apsp<V: GraphView>(view: &V, r: usize) -> Result<HopTruncatedDistances> {
    hop_truncated_apsp_with(view, r, TruncationKernel::Squaring)
}

pub fn hop_truncated_apsp_with<V: GraphView>(
    view: &V,
    r: usize,
    kernel: TruncationKernel,
) -> Result<HopTruncatedDistances> {
    if r == 0 {
        return Err(Error::Config("hop budget must be at least 1".into()));
    }
    let mut d = DistMatrix::adjacency(view);
    match kernel {
        TruncationKernel::Squaring => {
            let mut covered = 1usize;
            while covered < r {
                d = minplus_product(&d, &d)?;
                covered = covered.saturating_mul(2);
            }
        }
        TruncationKernel::Bridging { seed } => {
            // Round i covers pairs with at most (3/2)^i hops, whp; the
            // sample only needs to hit the middle third of such a path.
            let n = view.vertex_count();
            let ln_n = libm::log(n.max(2) as f64);
            let mut covered = 1.0f64;
            let mut round = 0u64;
            while covered < r as f64 {
                let s = covered;
                let p = (9.0 * ln_n / s).min(1.0);
                let mut rng = rng::stream(seed, Purpose::MinPlusBridge, round);
                let bridges: Vec<usize> = (0..n).filter(|_| p >= 1.0 || rng.random_bool(p)).collect();
                let step = minplus_product(&d.columns(&bridges), &d.rows_of(&bridges))?;
                d.min_assign(&step);
                covered *= 1.5;
                round += 1;
            }
        }
    }
    Ok(HopTruncatedDistances { r_hops: r, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, Graph};

    #[test]
    fn fix_b_single_hop_is_exact_on_arcs_only() {
        let t = hop_truncated_apsp(&fixtures::fix_b(), 1).unwrap();
        assert_eq!(t.d.get(0, 1), PathLength::Finite(1));
        assert!(t.d.get(0, 2) >= PathLength::Finite(2));
    }

    #[test]
    fn fix_b_four_hops() {
        let t = hop_truncated_apsp(&fixtures::fix_b(), 4).unwrap();
        assert_eq!(t.d.get(0, 4), PathLength::Finite(4));
    }

    #[test]
    fn five_cycle() {
        let g = Graph::new(5, 1, true, (0..5).map(|i| (i, (i + 1) % 5, 1))).unwrap();
        let t = hop_truncated_apsp(&g, 4).unwrap();
        for i in 0..5 {
            assert_eq!(t.d.get(i, (i + 4) % 5), PathLength::Finite(4));
        }
    }

    #[test]
    fn minplus_identity_and_hand_case() {
        use PathLength::{Finite as F, Unreachable as U};
        let id = DistMatrix::from_rows(&[&[F(0), U], &[U, F(0)]]).unwrap();
        let b = DistMatrix::from_rows(&[&[F(0), F(2)], &[U, F(0)]]).unwrap();
        assert_eq!(minplus_product(&id, &b).unwrap(), b);
        let a = DistMatrix::from_rows(&[&[F(0), F(1)], &[U, F(0)]]).unwrap();
        let c = minplus_product(&a, &b).unwrap();
        assert_eq!(c, DistMatrix::from_rows(&[&[F(0), F(1)], &[U, F(0)]]).unwrap());
        let all_inf = DistMatrix::unreachable(2, 2);
        assert_eq!(minplus_product(&a, &all_inf).unwrap(), all_inf);
        assert!(minplus_product(&a, &DistMatrix::unreachable(3, 1)).is_err());
    }

    #[test]
    fn bridging_kernel_on_fix_b() {
        let g = fixtures::fix_b();
        let t = hop_truncated_apsp_with(&g, 4, TruncationKernel::Bridging { seed: 1 }).unwrap();
        assert_eq!(t.d.get(0, 4), PathLength::Finite(4));
    }
}
