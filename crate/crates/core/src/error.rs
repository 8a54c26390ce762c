use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid coupling parameters: {0}")]
    InvalidParams(String),

    #[error("invalid temperature {0}: must be finite and strictly positive")]
    InvalidTemperature(f64),

    #[error("chain length {0} must be even and at least 2")]
    InvalidChain(usize),

    #[error("chain length {sites} exceeds the dense-diagonalization limit of {max}")]
    ChainTooLarge { sites: usize, max: usize },

    #[error("mode index {k} outside 1..={max}")]
    ModeOutOfRange { k: usize, max: usize },

    #[error("site index {l} outside 1..={max}")]
    SiteOutOfRange { l: usize, max: usize },

    #[error("log partition function diverges at T = 0; use the ground energy instead")]
    ZeroTemperature,

    #[error("single-site entropy is only defined at T = 0")]
    FiniteTemperatureUnsupported,

    #[error("ground state is degenerate (gap {gap:e}); pure-state entropy is ill-defined")]
    DegenerateGroundState { gap: f64 },

    #[error("no maximal-entropy solution: {0}")]
    NoSolution(String),

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("oracle routes disagree: {0}")]
    OracleInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
