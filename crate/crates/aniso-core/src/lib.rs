//! Dense operator algebra and pulse-circuit verification for spin qubits
//! controlled through Zeeman splitting and anisotropic Heisenberg exchange.
//!
//! The crate is organized in four layers:
//!
//! - [`spin_algebra`]: exact dense complex operators on small multi-qubit
//!   Hilbert spaces, Hermitian exponentials via Jacobi eigendecomposition,
//!   global-phase-insensitive equivalence metrics, subspace restriction,
//!   and operator-Schmidt analysis.
//! - [`model`]: the physical generators — Zeeman terms, the anisotropic
//!   exchange Hamiltonian with Dzyaloshinskii–Moriya and symmetric
//!   corrections, the two-spin logical encoding, and the in-plane frame
//!   rotation.
//! - [`circuits`]: pulses, circuits, compilation to unitaries, and
//!   constructors for the named gate sequences (single-logical-qubit
//!   rotations, the separable V block, the 8/17/55-step gates, and the
//!   repeated short-time CPHASE / DM / composite-Sx trains).
//! - [`verify`]: gate-identity certification, leakage analysis, algebra
//!   checks, separability checks, power-law scaling fits, and the
//!   parity-kick suppression study.
//!
//! All data is immutable after construction and every operation is a pure
//! function of its inputs, so everything here is safe to call concurrently.
//!
//! `no_std` builds are supported (with `alloc`); disable the default `std`
//! feature. Float math then comes from `libm` via `num-traits`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod circuits;
pub mod error;
mod linalg;
pub mod model;
pub mod spin_algebra;
pub mod verify;

pub use error::CoreError;
pub use model::{AnisotropyParams, Geometry, LogicalQubit};
pub use spin_algebra::{Operator, SchmidtSpectrum};

/// Maximum supported qubit count (dimension 256). The circuits in scope
/// use at most 4 qubits; 8 leaves headroom for embedding studies while
/// keeping dense methods trivial.
pub const MAX_QUBITS: usize = 8;
