//! Exact Walsh-Fourier analysis of real-valued functions on the biased
//! discrete cube `{-gamma, 1/gamma}^n`, with verifiers for the
//! hypercontractive level-damping inequality, closeness of low-spectrum
//! Boolean functions to single-coordinate functions, and the distance from
//! bounded functions to bounded affine functions on the symmetric cube.
//!
//! Tables store all `2^n` values, so everything here is exact enumeration —
//! no sampling, no approximation — up to the documented `n <= 26` cap.

pub mod affine;
pub mod cube;
pub mod error;
pub mod fkn;
pub mod fourier;
pub mod hypercontract;
pub mod io;

pub use affine::{
    bounded_affine_witness, dist_to_affine, dist_to_bounded_affine, jow_example, phi, project_l1,
    AffineFit, AffineFunction, RademacherSum, WitnessBranch, WitnessParams, WitnessReport,
};
pub use cube::{Bias, PointWeight, TableFunction, MAX_N};
pub use error::{Error, Result};
pub use fkn::{
    check_conditional_bound, counterexample, fkn_witness, sgn, sign_residual, FknReport,
};
pub use fourier::{transform, Spectrum};
pub use hypercontract::{c_q, verify_hyper, HyperCheck, HyperParams};
