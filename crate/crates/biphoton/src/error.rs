use thiserror::Error;

/// Failure modes of the physics pipeline.
///
/// Numeric payloads are carried as `f64` regardless of the scalar the
/// computation ran in, so the enum stays non-generic and cheap to pass
/// across crate boundaries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested transverse wave vector lies outside the propagating
    /// region of a wave-vector surface, or the requested reflected
    /// partial wave does not exist on it.
    #[error("evanescent mode on the {surface} surface")]
    EvanescentMode { surface: &'static str },

    /// A bracketed root solve could not finish.
    #[error("root solve did not converge")]
    NoConvergence,

    /// Wave vector parallel to the optic axis: the transverse
    /// polarization pair is not defined there.
    #[error("degenerate direction: wave vector parallel to the optic axis")]
    DegenerateDirection,

    /// The pump wave number is outside the range spanned by the
    /// degenerate emission sum over the search bracket.
    #[error("no phase match in bracket")]
    NoPhaseMatch,

    /// A linear constraint cannot be solved because its pivot
    /// coefficient is numerically zero.
    #[error("degenerate constraint: pivot coefficient {coeff:e} too small")]
    DegenerateConstraint { coeff: f64 },

    /// An analyzer was applied to a field form built for the other beam.
    #[error("basis mismatch: analyzer beam does not match the field form")]
    BasisMismatch,

    /// Input outside the domain of a closed-form expression.
    #[error("domain error: {0}")]
    DomainError(&'static str),

    /// Correlation outcomes sum to zero, so normalized correlators are
    /// undefined at these analyzer settings.
    #[error("degenerate analyzer settings: outcome probabilities sum to zero")]
    DegenerateSettings,

    /// A parameter set fails basic sanity checks.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
