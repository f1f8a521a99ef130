//! Numerical toolkit for ontological models of quantum states.
//!
//! The crate is organized in four layers:
//!
//! * [`qstate`] — finite-dimensional complex Hilbert-space core: unit state
//!   vectors, Hermitian generators, exact unitary evolution and the
//!   Fubini–Study geometry of the projective space.
//! * [`ontic_frame`] — a discretized preparation/measurement framework:
//!   weighted ontic grids, epistemic distributions μ, response functions ξ,
//!   Born-rule integrals, a concrete qubit instance on the Bloch sphere and
//!   the frozen-response experiment.
//! * [`hidden_model`] — an epistemic model built from propensity amplitudes
//!   over an enlarged orthonormal hidden basis: preparation, reconstruction,
//!   transition probabilities and Bayesian cell updates.
//! * [`locality`] — exact (rational) probability calculus for the two-region
//!   detection scenario: locality factorization and its audit.

pub mod error;
pub mod hidden_model;
pub mod locality;
pub mod ontic_frame;
pub mod qstate;
pub mod sum;

pub use nalgebra;

pub use error::{Error, Result};
pub use qstate::{EvolutionParams, HermitianOperator, StateVector};
