use thiserror::Error;

/// Errors raised by the algebraic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative upper index unsupported: C({n}, {k})")]
    NegativeUpperIndex { n: i64, k: i64 },

    #[error("projection defined only on weight-1/2 sections (got weight {twice_m}/2)")]
    ProjectionWeight { twice_m: i64 },

    #[error("weight mismatch: expected {expected}/2, got {found}/2")]
    WeightMismatch { expected: i64, found: i64 },

    #[error("operator domain is H^{{1/2}}(Δ*): input has a term at exponent {exponent}")]
    OperatorDomain { exponent: i64 },

    #[error("symbol must be holomorphic on the disk: term at exponent {exponent}")]
    NonHolomorphicSymbol { exponent: i64 },

    #[error("O_j hypothesis k > s - j violated (s = {s}, j = {j}, k = {k})")]
    OjHypothesis { s: u32, j: u32, k: u32 },

    #[error("raising chain of (d_0)^s did not collapse onto (d_2)^s for s = {s}")]
    RaisingChainCollapse { s: u32 },

    #[error(
        "recursion produced a coefficient outside its admissible range at (p, n) = ({p}, {n})"
    )]
    RecursionRange { p: u32, n: u32 },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),

    #[error("singular matrix")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
