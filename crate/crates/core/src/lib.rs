//! Dual -1 Hahn polynomials and the XX spin chains with perfect state
//! transfer (PST) they generate.
//!
//! The crate is organised bottom-up:
//!
//! * [`m1hahn`] closed-form recurrence data, Bannai-Ito grids and weights;
//! * [`orthopoly`] monic polynomial evaluation, orthogonality checks, the
//!   Christoffel transform and the discrete Stieltjes inverse procedure;
//! * [`spinchain`] the one-excitation Jacobi matrix, its eigensystem and
//!   transfer amplitudes;
//! * [`pst`] exact PST certification, chain design and the Christoffel link
//!   between the odd-N and even-N families.
//!
//! Everything that decides PST is done in exact rational arithmetic
//! ([`Rational`]); floating point is only used to simulate dynamics.

pub mod error;
pub mod m1hahn;
pub mod orthopoly;
pub mod pst;
pub mod scalar;
pub mod spinchain;

pub use error::{Error, Result};
pub use m1hahn::{
    bi_grid, closed_form_weights, mu_number, pochhammer, positivity_check, recurrence_coefficients,
    BannaiItoGrid, ChainParameters, Parity, PositivityReport, PositivityViolation, RecurrenceData,
    WeightTable,
};
pub use orthopoly::{
    characteristic_derivative, christoffel_k_closed_form, christoffel_transform,
    evaluate_monic_sequence, stieltjes_reconstruct, verify_orthogonality, ChristoffelData,
    OrthogonalityReport, PolynomialTableau,
};
pub use pst::{
    certify_pst, design_chain, fidelity_trace, spacing_certificate, verify_christoffel_link,
    ChristoffelLink, Design, DesignRequest, FailureReason, PstCertificate, SpacingCertificate,
};
pub use scalar::{parse_rational, Rational, Scalar};
pub use spinchain::{
    build_jacobi, eigensystem, is_mirror_symmetric, mirror_weight_condition, reflection_weights,
    spectral_weights, transfer_amplitude, EigenOptions, FidelityTrace, SpectralDecomposition,
    SpinChain,
};
