//! Geometric vertex priorities: `P[c(v) = k] = 2^{-k}`.

use alloc::vec::Vec;

use rand::Rng;

use crate::rng::{self, Purpose};

/// `⌈log₂ n⌉`, at least 1.
pub fn log2_ceil(n: usize) -> u64 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1) as u64
}

/// The hop bound `C · 2^c · ⌈log₂ n⌉` attached to priority `c`.
pub fn hop_bound(confidence: f64, c: u8, n: usize) -> usize {
    let b = libm::ceil(confidence * libm::ldexp(1.0, i32::from(c)) * log2_ceil(n) as f64);
    if b >= n as f64 {
        n
    } else {
        b as usize
    }
}

/// Draws one priority per vertex from attempt-specific stream `attempt`.
pub fn sample(n: usize, seed: u64, attempt: u32) -> Vec<u8> {
    let mut rng = rng::stream(seed, Purpose::Priorities, u64::from(attempt));
    (0..n).map(|_| 1 + rng.random::<u64>().trailing_zeros().min(62) as u8).collect()
}

/// Which structural assumption a priority draw violated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Violation {
    MaxPriority { max: u8, bound: u64 },
    LevelCount { level: u8, count: usize, bound: f64 },
}

/// The first two checks (vacuous for a single vertex): `c_max ≤ 2⌈log₂ n⌉ + 2` and
/// `#{v : c(v) = c} ≤ 2n/2^c + 8⌈log₂ n⌉` for every `c`.
pub fn check_counts(prio: &[u8]) -> Result<(), Violation> {
    let n = prio.len();
    if n <= 1 {
        return Ok(());
    }
    let lg = log2_ceil(n);
    let max = prio.iter().copied().max().unwrap_or(1);
    let bound = 2 * lg + 2;
    if u64::from(max) > bound {
        return Err(Violation::MaxPriority { max, bound });
    }
    let mut counts = [0usize; 64];
    for &c in prio {
        counts[c as usize] += 1;
    }
    for (level, &count) in counts.iter().enumerate().skip(1) {
        let bound = 2.0 * n as f64 / libm::ldexp(1.0, level as i32) + 8.0 * lg as f64;
        if count as f64 > bound {
            return Err(Violation::LevelCount { level: level as u8, count, bound });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceil_values() {
        assert_eq!(log2_ceil(1), 1);
        assert_eq!(log2_ceil(2), 1);
        assert_eq!(log2_ceil(3), 2);
        assert_eq!(log2_ceil(8), 3);
        assert_eq!(log2_ceil(9), 4);
    }

    #[test]
    fn geometric_frequencies() {
        let draws = sample(200_000, 11, 1);
        let freq = |k: u8| draws.iter().filter(|&&c| c == k).count() as f64 / draws.len() as f64;
        assert!((freq(1) - 0.5).abs() < 0.01);
        assert!((freq(2) - 0.25).abs() < 0.01);
        let tail3 = draws.iter().filter(|&&c| c >= 3).count() as f64 / draws.len() as f64;
        assert!((tail3 - 0.25).abs() < 0.01);
    }

    #[test]
    fn single_vertex_passes() {
        assert_eq!(check_counts(&[5]), Ok(()));
    }

    #[test]
    fn too_many_high_priorities_fail() {
        assert!(matches!(check_counts(&[9, 1, 1, 1]), Err(Violation::MaxPriority { .. })));
    }

    #[test]
    fn hop_bound_is_capped_by_n() {
        assert_eq!(hop_bound(4.0, 1, 1000), 80);
        assert_eq!(hop_bound(4.0, 30, 1000), 1000);
    }
}
