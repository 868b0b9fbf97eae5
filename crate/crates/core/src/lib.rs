//! Distance sensitivity oracles for directed graphs with integer edge weights
//! in `1..=M`.
//!
//! A query `(u, v, f)` asks for the length of the shortest `u → v` path that
//! avoids a failed vertex or edge `f`. [`pipeline::FullDso`] answers it with a
//! constant number of table lookups after a randomized build that starts
//! from a sampled small-radius oracle and alternates radius extension with
//! table compilation until the radius covers every finite distance.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is on;
//! `parallel` spreads the heavier builds over rayon's pool.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod apsp;
pub mod baseline;
mod dijkstra;
pub mod error;
pub mod extend;
pub mod fast;
pub mod graph;
pub mod oracle;
mod par;
pub mod pipeline;
pub mod rng;
pub mod sampled;
pub mod truncated;

pub use error::{Error, Result};
pub use graph::{Failure, Graph, GraphView, PathLength};
pub use oracle::TruncatedOracle;
pub use pipeline::{DsoConfig, FullDso};
