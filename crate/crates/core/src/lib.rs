//! Certification of quantum coherence measured by an untrusted device.
//!
//! The crate implements a prepare-and-measure scheme: trusted ancilla states
//! are used to tomograph a two-outcome POVM, after which the observed click
//! probability of the unknown state yields certified lower bounds on its
//! coherence (relative entropy and l1 norm) in the computational basis.
//!
//! Everything here is pure computation on small dense matrices and works
//! without the standard library (`alloc` is required). IO, file formats and
//! the command line live in the companion `cohcert-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bloch;
pub mod coherence;
pub mod eig;
pub mod error;
pub mod generators;
pub mod l1_bound;
mod math;
pub mod matrix;
pub mod nogo;
pub mod oracle;
pub mod povm;
pub mod re_bound;
pub mod sample;
pub mod scenario;
pub mod state;
pub mod tomography;

pub use bloch::{bloch_to_operator, operator_to_bloch, BlochVector};
pub use coherence::{c_l1, c_l1_bloch, c_re, CoherenceMeasure, CoherenceValue};
pub use eig::{dephase, herm_eig, herm_exp, herm_log};
pub use error::Error;
pub use generators::su_generators;
pub use l1_bound::{
    l1_lower_bound_partial, l1_lower_bound_qubit, l1_lower_bound_qudit, normalize_element,
    tight_state, witnessable, L1Branch, L1BoundResult, NormalizedElement,
};
pub use matrix::ComplexMatrix;
pub use nogo::{nogo_fully_di, nogo_joint, ReconstructionCertificate};
pub use oracle::{oracle_min_coherence, oracle_witness, OracleParams, OracleResult};
pub use povm::{PovmElement, TwoOutcomePovm};
pub use re_bound::{
    re_bound_convex, re_bound_dual, re_bound_partial, re_dual_objective, region_samples,
    ReBoundResult, ReMethod,
};
pub use scenario::{exact_probability, run_session, AncillaSet, MeasurementStatistics};
pub use state::{von_neumann_entropy, DensityMatrix};
pub use tomography::{
    full_tomography_qubit, full_tomography_qudit, partial_tomography_z, PartialPovmKnowledge,
};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
