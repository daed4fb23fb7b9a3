//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors raised by operator construction, compilation, and verification.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// Qubit site index outside `1..=n`.
    SiteOutOfRange { site: usize, n: usize },
    /// Qubit count outside the supported range `1..=MAX_QUBITS`.
    UnsupportedQubitCount { n: usize },
    /// Exchange pulse with `i == j`.
    CoincidentSites { site: usize },
    /// Operator dimensions do not match.
    DimensionMismatch { left: usize, right: usize },
    /// Input expected Hermitian; carries the measured max-entry deviation.
    NotHermitian { deviation: f64 },
    /// Input expected unitary; carries the measured max-entry deviation.
    NotUnitary { deviation: f64 },
    /// Subspace basis is not orthonormal; carries the measured deviation.
    NotOrthonormal { deviation: f64 },
    /// Operation defined only for a specific dimension (e.g. 2-qubit Schmidt).
    UnsupportedDimension { dim: usize },
    /// Angle is NaN or infinite.
    NonFiniteAngle { value: f64 },
    /// Circuit constructor called with an incompatible geometry.
    WrongGeometry { expected: &'static str },
    /// In-plane spin-orbit vector is zero where a direction is required.
    ZeroInPlaneBeta,
    /// Continuous-gate formula disambiguation found no (or no unique) match.
    DisambiguationFailure { detail: String },
    /// Requested continuous gate angle is outside the reachable range and
    /// no composition fallback was permitted.
    AngleOutOfRange { requested: f64, max: f64 },
    /// Scaling fit needs more usable points than were supplied.
    InsufficientPoints { needed: usize, got: usize },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::SiteOutOfRange { site, n } => {
                write!(f, "site {site} out of range 1..={n}")
            }
            CoreError::UnsupportedQubitCount { n } => {
                write!(f, "qubit count {n} outside supported range 1..={}", crate::MAX_QUBITS)
            }
            CoreError::CoincidentSites { site } => {
                write!(f, "exchange pulse requires distinct sites, got i == j == {site}")
            }
            CoreError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            CoreError::NotHermitian { deviation } => {
                write!(f, "input not Hermitian: max |H - H^dag| = {deviation:e}")
            }
            CoreError::NotUnitary { deviation } => {
                write!(f, "input not unitary: max |U U^dag - I| = {deviation:e}")
            }
            CoreError::NotOrthonormal { deviation } => {
                write!(f, "basis not orthonormal: max Gram deviation = {deviation:e}")
            }
            CoreError::UnsupportedDimension { dim } => {
                write!(f, "operation not defined for dimension {dim}")
            }
            CoreError::NonFiniteAngle { value } => write!(f, "non-finite angle {value}"),
            CoreError::WrongGeometry { expected } => {
                write!(f, "circuit requires geometry {expected}")
            }
            CoreError::ZeroInPlaneBeta => write!(f, "in-plane beta vector is zero"),
            CoreError::DisambiguationFailure { detail } => {
                write!(f, "formula disambiguation failed: {detail}")
            }
            CoreError::AngleOutOfRange { requested, max } => {
                write!(f, "angle {requested} outside reachable range (max {max})")
            }
            CoreError::InsufficientPoints { needed, got } => {
                write!(f, "need at least {needed} usable points, got {got}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoreError {}
