//! Binary search for the vertex of a path interval whose removal hurts the
//! most.
//!
//! Fix `u < s < t < v` on `ρ(u, v)` and number the vertices of `[s, t]` by
//! their position `p = 0..=m` from `s`. With
//! `h(p) = min{‖ut⋄x_p‖_r + ‖tv‖, ‖us‖ + ‖sv⋄x_p‖_r, r}`, every
//! `‖uv⋄x_p‖_r` equals `min{h(p), K}` for one constant `K`, so an argmax of
//! `h` is an argmax of `‖uv⋄·‖_r`. Each step probes the interval's left half
//! with a range-maximum query and keeps whichever half may still beat the
//! probe; the probe itself stays as the incumbent.

/// The lookups the search needs, by position in `[s, t]`.
pub trait AvoiderLookups {
    /// `m = |st|`.
    fn span(&self) -> usize;
    /// `‖ut⋄x_p‖_r`; `r` at `p = m`.
    fn ut_avoid(&self, p: usize) -> u64;
    /// `‖sv⋄x_p‖_r`; `r` at `p = 0`.
    fn sv_avoid(&self, p: usize) -> u64;
    /// A position in `lo..=hi` maximizing `ut_avoid` (`hi < m`).
    fn ut_argmax(&self, lo: usize, hi: usize) -> usize;
    fn us(&self) -> u64;
    fn tv(&self) -> u64;
    fn radius(&self) -> u64;
}

/// Intervals with at most this many hops are scanned directly.
pub const BRUTE_FORCE_SPAN: usize = 4;

fn h<L: AvoiderLookups>(l: &L, p: usize) -> (u64, u64) {
    let r = l.radius();
    let via_t = (l.ut_avoid(p) + l.tv()).min(r);
    let via_s = (l.us() + l.sv_avoid(p)).min(r);
    (via_t.min(via_s), via_t)
}

/// Returns a position maximizing `h`, lowest among the candidates seen on
/// ties, and the number of lookups made.
pub fn find_max_avoider<L: AvoiderLookups>(l: &L) -> (usize, u32) {
    let mut best: Option<(u64, usize)> = None;
    let mut offer = |p: usize, value: u64| {
        if best.is_none_or(|(bv, bp)| value > bv || (value == bv && p < bp)) {
            best = Some((value, p));
        }
    };
    let (mut lo, mut hi) = (0, l.span());
    let mut lookups = 0;
    while hi - lo > BRUTE_FORCE_SPAN {
        let q = lo + (hi - lo) / 2;
        let y = l.ut_argmax(lo, q);
        let (hy, via_t) = h(l, y);
        lookups += 3;
        offer(y, hy);
        if via_t == hy {
            lo = q;
        } else {
            hi = q;
        }
    }
    for p in lo..=hi {
        offer(p, h(l, p).0);
        lookups += 2;
    }
    (best.map(|(_, p)| p).unwrap_or(lo), lookups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    struct Table {
        ut: Vec<u64>,
        sv: Vec<u64>,
        us: u64,
        tv: u64,
        r: u64,
    }

    impl AvoiderLookups for Table {
        fn span(&self) -> usize {
            self.ut.len() - 1
        }
        fn ut_avoid(&self, p: usize) -> u64 {
            self.ut[p]
        }
        fn sv_avoid(&self, p: usize) -> u64 {
            self.sv[p]
        }
        fn ut_argmax(&self, lo: usize, hi: usize) -> usize {
            (lo..=hi).fold(lo, |b, i| if self.ut[i] > self.ut[b] { i } else { b })
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
    fn single_interior_vertex() {
        let t = Table { ut: alloc::vec![3, 9], sv: alloc::vec![9, 2], us: 1, tv: 1, r: 9 };
        let (p, _) = find_max_avoider(&t);
        assert_eq!(p, 0);
    }

    #[test]
    fn tie_takes_lowest_position() {
        let t = Table { ut: alloc::vec![6, 6, 6], sv: alloc::vec![6, 6, 6], us: 1, tv: 1, r: 6 };
        assert_eq!(find_max_avoider(&t).0, 0);
    }
}
