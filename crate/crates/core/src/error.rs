use alloc::string::String;

/// Errors surfaced by graph construction, oracle builds and queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("edge {edge}: weight {weight} outside 1..={max}")]
    WeightOutOfRange { edge: usize, weight: u64, max: u32 },
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("maximum weight must be at least 1")]
    ZeroMaxWeight,
    #[error("failed vertex {vertex} is a query endpoint")]
    EndpointFailure { vertex: usize },
    #[error("radius {radius} below the required minimum {min}")]
    RadiusTooSmall { radius: u64, min: u64 },
    #[error("radius {radius} does not fit the 32-bit table encoding")]
    RadiusOverflow { radius: u64 },
    #[error("matrix dimensions do not agree: {0}")]
    DimensionMismatch(String),
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("{stage}: retry budget of {budget} exhausted ({reason})")]
    RetryBudgetExhausted {
        stage: &'static str,
        budget: u32,
        reason: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
