//! Error type shared by all layers of the crate.

use thiserror::Error;

/// Errors produced by field evaluation, metric validation and the
/// connection/deformation machinery.
///
/// Plain algebra operations (products of [`crate::Multivector`]s,
/// extensor composition) treat mismatched dimensions as a programming
/// error and panic instead; everything that can fail for numerical or
/// domain reasons goes through this enum.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects from algebras of different dimension were combined
    /// through a checked entry point.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// An operator that must be invertible is numerically singular.
    #[error("operator is numerically degenerate (|det| = {det:.3e} <= threshold {threshold:.3e})")]
    NonDegenerateViolation { det: f64, threshold: f64 },

    /// A metric operator failed the symmetry check.
    #[error("metric operator is not symmetric (max deviation {0:.3e})")]
    NotSymmetric(f64),

    /// The eigenvalue signature of the metric differs between sample points.
    #[error("metric signature changed between sample points: ({0}, {1}) vs ({2}, {3})")]
    SignatureChange(usize, usize, usize, usize),

    /// A connection handed to the deformation machinery is not metric
    /// compatible.
    #[error("connection is not metric compatible (max residual {residual:.3e})")]
    Compatibility { residual: f64 },

    /// A gauge rotation field produced a value that is not a bivector.
    #[error("expected a bivector (grade-2) value")]
    NotBivector,

    /// Field evaluation failed at a point (stencil outside the domain,
    /// log of a non-positive number, division by zero, ...).
    #[error("field evaluation failed at {point:?}: {reason}")]
    Domain { point: Vec<f64>, reason: String },

    /// Catch-all for invalid arguments to constructors.
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
