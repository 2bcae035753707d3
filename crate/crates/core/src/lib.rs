//! Nonfreeness and Rényi correlation functionals of many-fermion states.
//!
//! States are density operators on the Fock space of `d` orbitals, stored
//! densely in the occupation-number basis (bit `i - 1` of a basis index is
//! the occupation of orbital `i`). The nonfreeness of a state is its
//! relative entropy to the free (quasi-free) state with the same
//! one-particle density matrix, computed as `S(Gamma_rho) - S(rho)`.
//!
//! ```
//! use fermifree::{nonfreeness, one_particle_mixture};
//!
//! let rho = one_particle_mixture(2.0 / 3.0).unwrap();
//! let report = nonfreeness(&rho).unwrap();
//! assert!((report.nonfreeness.value() - 0.636514).abs() < 1e-6);
//! ```
//!
//! The `verify` module cross-checks the structural identities (minimum
//! property, chain rule, additivity, monotonicity, Wick relations) on
//! random instances, and `io` holds the JSON document formats used by the
//! `fermifree` binary.

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlation;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod free;
pub mod io;
pub mod linalg;
pub mod pdm;
pub mod sample;
pub mod state;
pub mod verify;

pub use correlation::{
    chain_rule_terms, correlation_renyi, correlation_sandwiched, nonfreeness, restrict,
    CorrelationReport,
};
pub use entropy::{
    relative_entropy, renyi_divergence, sandwiched_renyi, von_neumann, DivergenceValue,
};
pub use error::{Error, Result};
pub use fock::{basis_change_unitary, OccupationList, OrbitalSpace};
pub use free::{free_from_pdm, gamma_of, purify_free, wick_check, FreeState, FreeStateSpec};
pub use pdm::{natural_spectrum, one_pdm, OnePdm};
pub use state::{
    gibbs_free_density, hubbard_ground_state, mixture, one_particle_mixture, paired_state,
    pure_density, slater_density, tensor_product, DensityOperator, HubbardParams, PureState,
};
