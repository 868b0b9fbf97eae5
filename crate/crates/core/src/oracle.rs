//! The truncated-oracle interface shared by every stage, and the counters
//! used to audit query and build budgets.

use core::sync::atomic::{AtomicU64, Ordering};

use crate::graph::Failure;

/// An `r`-truncated distance sensitivity oracle: `query(u, v, f)` returns
/// `min{‖uv⋄f‖, r}`.
///
/// Conventions shared by all implementations: ids are assumed valid, a
/// vertex failure equal to `u` or `v` yields `r`, and otherwise `u = v`
/// yields 0.
pub trait TruncatedOracle: Sync {
    fn radius(&self) -> u64;

    fn query(&self, u: usize, v: usize, f: Failure) -> u64;
}

impl<T: TruncatedOracle + ?Sized> TruncatedOracle for &T {
    fn radius(&self) -> u64 {
        (**self).radius()
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        (**self).query(u, v, f)
    }
}

/// Receives one call per table lookup made by an instrumented query.
pub trait Probe {
    fn lookup(&mut self);
}

impl Probe for () {
    #[inline(always)]
    fn lookup(&mut self) {}
}

/// Counts table lookups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LookupCounter {
    pub lookups: u64,
}

impl Probe for LookupCounter {
    #[inline]
    fn lookup(&mut self) {
        self.lookups += 1;
    }
}

/// Wraps an oracle and counts the queries made to it.
#[derive(Debug)]
pub struct Counted<D> {
    inner: D,
    queries: AtomicU64,
}

impl<D: TruncatedOracle> Counted<D> {
    pub fn new(inner: D) -> Self {
        Counted { inner, queries: AtomicU64::new(0) }
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> D {
        self.inner
    }
}

impl<D: TruncatedOracle> TruncatedOracle for Counted<D> {
    fn radius(&self) -> u64 {
        self.inner.radius()
    }

    fn query(&self, u: usize, v: usize, f: Failure) -> u64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.inner.query(u, v, f)
    }
}
