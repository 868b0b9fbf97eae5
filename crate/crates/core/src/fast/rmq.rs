//! Range-maximum sparse tables for many short sequences, packed into one
//! buffer. Values are not copied: queries take the sequence they were built
//! from. Ties resolve to the lowest index.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmqIndex {
    /// Start of each sequence's table; `off[i+1] - off[i]` is its size.
    off: Vec<u32>,
    len: Vec<u32>,
    /// Level `k` of a length-`ℓ` sequence holds, for each start `i`, the
    /// 0-based argmax of `[i, i + 2^k)`; it begins at `k(ℓ+1) − (2^k − 1)`.
    arg: Vec<u32>,
}

fn table_size(len: usize) -> usize {
    if len == 0 {
        return 0;
    }
    let levels = usize::BITS - len.leading_zeros();
    (0..levels).map(|k| len - (1 << k) + 1).sum()
}

#[inline]
fn level_start(len: usize, k: u32) -> usize {
    k as usize * (len + 1) - ((1usize << k) - 1)
}

impl RmqIndex {
    /// Builds one table per sequence, in order.
    pub fn build<'a, I>(sequences: I) -> Self
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut out = RmqIndex { off: alloc::vec![0], ..RmqIndex::default() };
        for seq in sequences {
            out.push(seq);
        }
        out
    }

    pub fn push(&mut self, seq: &[u32]) {
        let len = seq.len();
        let base = self.arg.len();
        self.arg.extend(0..len as u32);
        let mut k = 1;
        while (1usize << k) <= len {
            let half = 1usize << (k - 1);
            let prev = base + level_start(len, k - 1);
            for i in 0..=len - (1 << k) {
                let a = self.arg[prev + i];
                let b = self.arg[prev + i + half];
                self.arg.push(if seq[b as usize] > seq[a as usize] { b } else { a });
            }
            k += 1;
        }
        debug_assert_eq!(self.arg.len() - base, table_size(len));
        self.off.push(self.arg.len() as u32);
        self.len.push(len as u32);
    }

    pub fn sequences(&self) -> usize {
        self.len.len()
    }

    /// Index in `lo..=hi` (0-based, inclusive) maximizing `seq`, lowest on ties.
    #[inline]
    pub fn argmax(&self, which: usize, seq: &[u32], lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.len[which] as usize);
        let len = self.len[which] as usize;
        let k = usize::BITS - 1 - (hi - lo + 1).leading_zeros();
        let at = self.off[which] as usize + level_start(len, k);
        let a = self.arg[at + lo] as usize;
        let b = self.arg[at + hi + 1 - (1 << k)] as usize;
        if seq[b] > seq[a] {
            b
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(seq: &[u32], lo: usize, hi: usize) -> usize {
        (lo..=hi).fold(lo, |best, i| if seq[i] > seq[best] { i } else { best })
    }

    #[test]
    fn direct_maximum() {
        let seq = [3, 6, 4];
        let r = RmqIndex::build([&seq[..]]);
        assert_eq!(r.argmax(0, &seq, 0, 2), 1);
    }

    #[test]
    fn constant_sequence_returns_lowest() {
        let seq = [5; 9];
        let r = RmqIndex::build([&seq[..]]);
        for lo in 0..9 {
            for hi in lo..9 {
                assert_eq!(r.argmax(0, &seq, lo, hi), lo);
            }
        }
    }

    #[test]
    fn singleton_and_packed_sequences_match_scan() {
        let seqs: [&[u32]; 4] = [&[7], &[], &[1, 9, 9, 2, 0, 9, 3], &[4, 4, 8, 1, 8, 8, 2, 0, 5, 8, 3]];
        let r = RmqIndex::build(seqs);
        assert_eq!(r.argmax(0, seqs[0], 0, 0), 0);
        for (w, seq) in seqs.iter().enumerate() {
            for lo in 0..seq.len() {
                for hi in lo..seq.len() {
                    assert_eq!(r.argmax(w, seq, lo, hi), scan(seq, lo, hi));
                }
            }
        }
    }
}
