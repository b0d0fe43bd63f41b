//! Second-order linear difference equations with slowly varying coefficients.
//!
//! The crate solves `y[k+2] + f1[k] y[k+1] + f0[k] y[k] + f[k] = 0` by exact
//! transfer-matrix propagation and by three discrete-WKB approximations,
//! cascades per-cell scattering matrices to get reflection and transmission
//! through an inhomogeneous chain, and builds the coupled-cavity benchmark
//! chains used to compare the methods.
//!
//! Module map:
//!
//! * [`recurrence`]: coefficient sequences, characteristic roots with branch
//!   tracking, the direct boundary-value oracle and the flux invariant.
//! * [`wave_split`]: the two-wave splitting, transfer matrices and the Riccati
//!   gauge.
//! * [`scattering`]: per-cell S-matrices, the cascade, R/T extraction and
//!   profile reconstruction.
//! * [`closed_form`]: closed-form WKB profiles and the phase-drift sum.
//! * [`dlw`]: phase-ramp and disk-loaded waveguide chains.
//! * [`experiment`]: configuration, method comparison and file output.

pub mod closed_form;
pub mod dlw;
mod error;
pub mod experiment;
pub mod recurrence;
pub mod scattering;
mod seq;
pub mod wave_split;

pub use error::{Error, Result};
pub use seq::Indexed;

/// Complex scalar used for amplitudes, roots and coefficients.
pub type ComplexScalar = num_complex::Complex64;
