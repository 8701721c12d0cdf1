//! Dissipative field dynamics of the two-photon Jaynes-Cummings model with
//! Stark shift, deep in the dispersive regime.
//!
//! A two-level atom crosses a leaky cavity and exchanges photons in pairs
//! through a far-detuned intermediate level. In the dispersive limit the
//! effective Hamiltonian is diagonal in the |atom, n⟩ basis, and at zero
//! temperature the cavity loss enters through the standard Lindblad
//! dissipator κ(2aρa† − a†aρ − ρa†a) (Breuer & Petruccione, "The Theory of
//! Open Quantum Systems", Ch. 3). For an atom entering in an equal
//! superposition and a coherent field, the reduced field state then evolves
//! in closed form; this crate implements that solution and everything
//! needed to distrust it:
//!
//! * [`params`] — model constants, raw and dimensionless construction.
//! * [`fock`] — truncated Fock-space containers and truncation control.
//! * [`spectrum`] — exact 2×2 block spectrum and its dispersive limit.
//! * [`liouville`] — the closed-form kernels, branch densities, reduced
//!   field state, amplitude moments, and linear entropy (two independent
//!   evaluation routes).
//! * [`superop`] — explicit superoperator matrices and their algebra.
//! * [`oracle`] — brute-force RK4 integration of the master equation on
//!   the joint space, the ground truth the closed form is checked against.
//! * [`linalg`] — small self-contained eigenvalue/exponential helpers.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod liouville;
pub mod oracle;
pub mod params;
pub mod spectrum;
pub mod superop;

pub use error::{Error, Result};
pub use fock::{choose_truncation, coherent_vector, CoherentVector, FieldDensityMatrix};
pub use liouville::{
    amplitude_moment, branch_density, field_state, kernel, linear_entropy, Branch,
    BranchDensity, KernelValue, LiouvillianSpec,
};
pub use oracle::{
    generator_apply, propagate, propagate_sampled, propagate_sampled_with_gate, reduce_field,
    unitary_reference, IntegratorConfig, JointState,
};
pub use params::{DimensionlessInputs, ModelParams, OmegaConvention, RawInputs};
pub use spectrum::{
    block_hamiltonian, dispersive_eigenvalues, dispersive_report, effective_diagonal,
    exact_eigenvalues, AtomLevel, BlockHamiltonian, DispersiveReport,
};
