//! Lindblad master equations for synthetic squeezed dissipation.
//!
//! The crate builds every two-level dissipative model used for squeezing-based
//! entanglement stabilization (single-qubit squeezed baths, two-mode squeezed
//! dissipation, collective loss with Rabi drives, transmission-line spacing
//! errors and thermal baths), turns them into column-stacked Liouvillians, and
//! extracts steady states, spectra, dissipative gaps and trajectories.
//!
//! Qubit basis order is `(|e⟩, |g⟩)`: index 0 is excited, index 1 is ground, so
//! `σz = diag(1, -1)` and the "|0⟩" of two-qubit kets is the ground state.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod lindblad;
pub mod metrics;
pub mod operator;
pub mod schemes;

pub use error::{Error, Result};
pub use lindblad::{
    eigenspectrum, evolve, evolve_with, liouvillian, spectrum, steady_state, EvolveOptions,
    LindbladModel, SpectralResult, Superoperator,
};
pub use metrics::{concurrence, fidelity, purity, trace_distance, MetricSet};
pub use operator::{
    annihilator, embed, kron, partial_trace, pauli, DensityMatrix, Ket, Operator, Pauli, C64,
};
