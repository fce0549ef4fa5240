use crate::negativity::NegativityResult;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid spin `{0}`: spins must be nonnegative integers or half-integers")]
    InvalidSpin(String),

    #[error("invalid projection m={m} for spin j={j}")]
    InvalidProjection { j: String, m: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("imaginary residue {0:e} in a Wigner function value (phase convention mismatch)")]
    ImaginaryResidue(f64),

    #[error("{message}; best estimate delta={:.6e} (error estimate {:.3e})", best.delta, best.error_estimate)]
    NonConvergence {
        message: String,
        best: Box<NegativityResult>,
    },

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),

    #[error("eigenvalue solver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
