//! Error types shared across the summation pipeline.
//!
//! Every fallible operation returns [`Error`]; "absence" results (e.g. a term
//! that is provably not Gosper-summable) are encoded as `Option`, not errors.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by construction, telescoping, and evaluation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A denominator factor vanished during exact evaluation.
    #[error("pole during evaluation: {0}")]
    Pole(String),

    /// Zeilberger's algorithm exhausted the order bound without a solution.
    #[error("no telescoper up to order {max_order}")]
    NoTelescoper { max_order: u32 },

    /// The telescoper order exceeds what the first-order pipeline handles.
    #[error("telescoper order {order} > 1: the WZ-pair pipeline handles only first-order recurrences")]
    OrderTooHigh { order: u32 },

    /// An order-1 coefficient has an irreducible factor that is not linear,
    /// so the multiplier cannot be written in Pochhammer form.
    #[error("nonlinear irreducible factor in telescoper coefficient: {residual}")]
    NonlinearFactor { residual: String },

    /// A Pochhammer base produced by normalization would hit a pole or zero
    /// on the summation range n >= 0.
    #[error("nonpositive Pochhammer base {base} in multiplier (pole/zero on n >= 0)")]
    BadPochBase { base: String },

    /// A slope in an acceleration pattern (or a derived denominator slope)
    /// is negative, which the term representation does not cover.
    #[error("negative derived slope: {0}")]
    NegativeSlope(String),

    /// Omega-series parameters violate the convergence condition.
    #[error("series diverges: convergence margin {margin} <= 0")]
    Divergent { margin: String },

    /// The geometric tail bound could not be closed within the term budget.
    #[error("tail bound failure: {0}")]
    TailBound(String),

    /// A sequence fed to the extrapolator did not converge.
    #[error("extrapolation did not converge: {0}")]
    NoConvergence(String),

    /// A shifted-pair evaluation found a boundary limit that does not vanish.
    #[error("non-vanishing boundary limit: {0}")]
    NonVanishingBoundary(String),

    /// Malformed user input (CLI parameters, fixture ids, flag values).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An evaluation was requested at a point the representation cannot
    /// reach (e.g. Pochhammer exponents at non-integer k, which would need
    /// Gamma-function continuation).
    #[error("unsupported evaluation point: {0}")]
    Unsupported(String),
}
