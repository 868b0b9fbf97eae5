//! `CL`, `CR` and `BCP` tables over every canonical path, and the key
//! vertices they define.
//!
//! For a pair `(u, v)` with `ℓ = BCP[u][v]`, levels `1..=ℓ` are stored
//! contiguously at `level_off[u·n+v]`. The key sequence is
//! `CL[1] ⇝ … ⇝ CL[ℓ] ⇝ CR[ℓ] ⇝ … ⇝ CR[1]` with repeats collapsed.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::priorities::hop_bound;
use crate::apsp::CanonicalApsp;
use crate::graph::NONE;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyVertexIndex {
    n: usize,
    prio: Vec<u8>,
    bcp: Vec<u8>,
    level_off: Vec<u32>,
    cl: Vec<u32>,
    cr: Vec<u32>,
}

/// Reachable vertices of `T_out(u)` in nondecreasing hop order, `u` first.
pub(crate) fn hop_order(apsp: &CanonicalApsp, u: usize) -> Vec<u32> {
    let n = apsp.n();
    let trees = apsp.trees();
    let mut count = vec![0u32; n + 1];
    for v in 0..n {
        let h = trees.hop_raw(u, v);
        if h != NONE {
            count[h as usize + 1] += 1;
        }
    }
    for i in 0..n {
        count[i + 1] += count[i];
    }
    let mut order = vec![0u32; count[n] as usize];
    for v in 0..n {
        let h = trees.hop_raw(u, v);
        if h != NONE {
            order[count[h as usize] as usize] = v as u32;
            count[h as usize] += 1;
        }
    }
    order
}

impl KeyVertexIndex {
    /// One pass per root over `T_out(u)` in hop order: each vertex inherits
    /// its parent's levels and overrides the ones its own priority affects.
    pub fn build(apsp: &CanonicalApsp, prio: Vec<u8>) -> Self {
        let n = apsp.n();
        let trees = apsp.trees();
        let rows = par::map_range(n, |u| {
            let order = hop_order(apsp, u);
            let mut bcp = vec![0u8; n];
            for &v in &order {
                let v = v as usize;
                let parent_bcp = if v == u { 0 } else { bcp[trees.parent_out_raw(u, v) as usize] };
                bcp[v] = parent_bcp.max(prio[v]);
            }
            // Slots go in vertex order so that per-pair data can be laid out
            // by a plain scan over `v`.
            let mut local_off = vec![0u32; n];
            let mut total = 0u32;
            for v in 0..n {
                local_off[v] = total;
                total += u32::from(bcp[v]);
            }
            let mut cl = vec![0u32; total as usize];
            let mut cr = vec![0u32; total as usize];
            for &v in &order {
                let v = v as usize;
                let base = local_off[v] as usize;
                let (pb, pbase) = if v == u {
                    (0, 0)
                } else {
                    let p = trees.parent_out_raw(u, v) as usize;
                    (bcp[p], local_off[p] as usize)
                };
                for c in 1..=bcp[v] {
                    let i = (c - 1) as usize;
                    cl[base + i] = if c <= pb { cl[pbase + i] } else { v as u32 };
                    cr[base + i] = if c <= prio[v] { v as u32 } else { cr[pbase + i] };
                }
            }
            (bcp, local_off, cl, cr)
        });

        let mut bcp = Vec::with_capacity(n * n);
        let mut level_off = Vec::with_capacity(n * n + 1);
        let mut cl = Vec::new();
        let mut cr = Vec::new();
        for (row_bcp, row_off, row_cl, row_cr) in rows {
            let shift = cl.len() as u32;
            for v in 0..n {
                level_off.push(shift + row_off[v]);
            }
            bcp.extend_from_slice(&row_bcp);
            cl.extend_from_slice(&row_cl);
            cr.extend_from_slice(&row_cr);
        }
        level_off.push(cl.len() as u32);
        KeyVertexIndex { n, prio, bcp, level_off, cl, cr }
    }

    pub fn priorities(&self) -> &[u8] {
        &self.prio
    }

    #[inline]
    pub fn priority(&self, v: usize) -> u8 {
        self.prio[v]
    }

    /// Largest priority on `ρ(u, v)`; `c(u)` when `u = v`, 0 when unreachable.
    #[inline]
    pub fn bcp(&self, u: usize, v: usize) -> u8 {
        self.bcp[u * self.n + v]
    }

    #[inline]
    pub(crate) fn level_base(&self, u: usize, v: usize) -> usize {
        self.level_off[u * self.n + v] as usize
    }

    /// Total number of stored levels, i.e. the length of every per-level array.
    pub(crate) fn level_slots(&self) -> usize {
        self.cl.len()
    }

    /// First vertex on `ρ(u, v)` with priority at least `c` (`1 ≤ c ≤ BCP`).
    #[inline]
    pub fn cl(&self, u: usize, v: usize, c: u8) -> usize {
        self.cl[self.level_base(u, v) + c as usize - 1] as usize
    }

    /// Last vertex on `ρ(u, v)` with priority at least `c`.
    #[inline]
    pub fn cr(&self, u: usize, v: usize, c: u8) -> usize {
        self.cr[self.level_base(u, v) + c as usize - 1] as usize
    }

    /// Whether `x`, already known to lie on `ρ(u, v)`, is a key vertex.
    #[inline]
    pub fn is_key_on_path(&self, u: usize, v: usize, x: usize) -> bool {
        let c = self.prio[x];
        c <= self.bcp(u, v) && (self.cl(u, v, c) == x || self.cr(u, v, c) == x)
    }

    /// Key vertices of `ρ(u, v)` in path order.
    pub fn keys(&self, u: usize, v: usize) -> Vec<usize> {
        let l = self.bcp(u, v);
        let mut out: Vec<usize> = Vec::with_capacity(2 * l as usize);
        for c in (1..=l).map(|c| self.cl(u, v, c)).chain((1..=l).rev().map(|c| self.cr(u, v, c))) {
            if out.last() != Some(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Finds a pair whose consecutive keys are further apart than
    /// `C · 2^{min priority} · ⌈log₂ n⌉` hops.
    pub fn gap_violation(&self, apsp: &CanonicalApsp, confidence: f64) -> Option<(usize, usize, usize, usize)> {
        let n = self.n;
        let trees = apsp.trees();
        par::map_range(n, |u| {
            for v in 0..n {
                if u == v || self.bcp(u, v) == 0 {
                    continue;
                }
                let keys = self.keys(u, v);
                for w in keys.windows(2) {
                    let gap = (trees.hop_raw(u, w[1]) - trees.hop_raw(u, w[0])) as usize;
                    let c = self.prio[w[0]].min(self.prio[w[1]]);
                    if gap > hop_bound(confidence, c, n) {
                        return Some((u, v, w[0], w[1]));
                    }
                }
            }
            None
        })
        .into_iter()
        .flatten()
        .next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apsp::ApspConfig;
    use crate::graph::{fixtures, Graph};

    #[test]
    fn uniform_priorities_give_endpoint_keys() {
        let g = fixtures::fix_b();
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let k = KeyVertexIndex::build(&a, vec![1; 5]);
        assert_eq!(k.bcp(0, 4), 1);
        assert_eq!(k.cl(0, 4, 1), 0);
        assert_eq!(k.cr(0, 4, 1), 4);
        assert_eq!(k.keys(0, 4), [0, 4]);
    }

    #[test]
    fn fix_b_mixed_priorities() {
        let g = fixtures::fix_b();
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let k = KeyVertexIndex::build(&a, vec![1, 2, 1, 2, 1]);
        assert_eq!(k.keys(0, 4), [0, 1, 3, 4]);
        assert!(k.is_key_on_path(0, 4, 3));
        // ρ(0,2) = 0 1 2: the only priority-2 vertex is 1, so it is a key.
        assert_eq!(k.keys(0, 2), [0, 1, 2]);
    }

    #[test]
    fn degenerate_pair() {
        let g = fixtures::fix_b();
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let k = KeyVertexIndex::build(&a, vec![3, 1, 1, 1, 1]);
        assert_eq!(k.bcp(0, 0), 3);
        assert_eq!(k.keys(0, 0), [0]);
        assert_eq!(k.bcp(4, 0), 0);
    }

    #[test]
    fn level_slots_follow_vertex_order() {
        // Hop order from 0 is 0 1 2 3 4 and from 2 is 2 3 4, so only vertex
        // order distinguishes the layouts when the root is in the middle.
        let g = Graph::new(5, 1, true, [(2, 0, 1), (2, 3, 1), (3, 1, 1), (1, 4, 1), (0, 4, 1)]).unwrap();
        let a = CanonicalApsp::build(&g, &ApspConfig::default()).unwrap();
        let k = KeyVertexIndex::build(&a, vec![2, 1, 3, 1, 2]);
        for u in 0..5 {
            for v in 0..5 {
                let next = if u * 5 + v + 1 < 25 { k.level_base(u + (v + 1) / 5, (v + 1) % 5) } else { k.level_slots() };
                assert_eq!(next - k.level_base(u, v), usize::from(k.bcp(u, v)));
            }
        }
    }
}
