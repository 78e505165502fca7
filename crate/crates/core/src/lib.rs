//! Quasi-probability representations of finite-dimensional quantum states
//! built from projective frames of finite abelian groups.
//!
//! A projective frame assigns a unitary `P_g` to every element `g` of a finite
//! abelian group `G`, with `P_g P_h = alpha(g, h) P_{gh}` for a unimodular
//! 2-cocycle `alpha`. Fourier transforming the frame over the dual group gives
//! Hermitian operators `F_j` and the quasi-probabilities `mu_j = Tr(rho F_j)`.
//! The characteristic function `phi(g) = Tr(rho P_g)` is the inverse
//! transform of `mu`.
//!
//! Positivity is decided from `phi` alone:
//!
//! * `rho` is a density operator iff `M^Q[g][g'] = phi(g' g^{-1}) alpha(g^{-1}, g')`
//!   is positive semidefinite;
//! * `mu` is nonnegative iff `M^C[g][g'] = phi(g' g^{-1})` is positive semidefinite.
//!
//! [`bochner`] builds both matrices and cross-checks them against direct
//! oracles. [`projective`] ships the standard frames: odd-dimensional Weyl
//! frames, the eight signed qubit frames, tensor products, the doubled
//! Leonhardt phase space, and an unfaithful `Z_2^3` qubit frame.
//!
//! ```
//! use fourier_frames::prelude::*;
//!
//! let frame = weyl_frame(3).unwrap();
//! let rep = build_representation(&frame).unwrap();
//! let rho = states::basis_state(3, 0).unwrap();
//! let cert = certify_state(&rep, &rho, Tolerance::default()).unwrap();
//! assert!(cert.is_quantum_state && cert.is_positively_representable);
//! ```
//!
//! Random states come from ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`)
//! with standard normal draws, so a seed gives the same state everywhere.

pub mod bochner;
pub mod cli;
pub mod error;
pub mod group;
pub mod numerics;
pub mod projective;
pub mod quasiprob;
pub mod states;

pub use error::{Error, Result};

/// The types and constructors most programs need.
pub mod prelude {
    pub use crate::bochner::{
        build_mc, build_mq, certify_distribution, certify_state, scan, BochnerCertificate, Verdict,
    };
    pub use crate::error::{Error, Result};
    pub use crate::group::{
        classical_bochner_check, fourier_forward, fourier_inverse, make_group, DualIndex, FiniteAbelianGroup,
        GroupElement, GroupFunction,
    };
    pub use crate::numerics::{herm_eigen, is_psd, ComplexMatrix, Tolerance};
    pub use crate::projective::{
        leonhardt_frame, qubit_frame, tensor_frame, weyl_frame, z2cubed_frame, ProjectiveFrame, Sign,
    };
    pub use crate::quasiprob::{build_representation, QuasiProbDistribution, QuasiProbRepresentation};
    pub use crate::states;
}
