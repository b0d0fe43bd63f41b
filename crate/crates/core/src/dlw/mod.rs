//! Benchmark chains: identical cavities whose coupling varies along the
//! chain, described either by the per-cell phase advance or by physical
//! disk-loaded waveguide geometry.
//!
//! Cells are numbered `1..=N`. Outside that range the chain continues as a
//! homogeneous lead with the phase of the nearest end cell.

mod bessel;
mod geometry;

pub use bessel::{bessel_j0, bessel_j1, ModelConstants};
pub use geometry::{
    coeffs_from_geometry, coupling_coeffs, p_polynomials, realize_phase_profile, Coupling, PFit,
    WaveguideGeometry,
};

use crate::recurrence::CoefficientSequence;
use crate::{ComplexScalar, Error, Indexed, Result};
use std::f64::consts::PI;

/// Phase advance per cell, `phi[k]` for `k` in `1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    phi: Indexed<f64>,
    n_h: usize,
}

fn in_passband(phi: f64) -> bool {
    phi > 0.0 && phi < PI
}

impl PhaseProfile {
    /// Arbitrary profile; every phase must lie strictly inside `(0, pi)`.
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::BadWindow("phase profile has no cells".into()));
        }
        for (i, &p) in phi.iter().enumerate() {
            if !in_passband(p) {
                return Err(Error::BadProfile {
                    k: i as i64 + 1,
                    reason: format!("phase {p} outside (0, pi)"),
                });
            }
        }
        Ok(PhaseProfile {
            phi: Indexed::new(1, phi),
            n_h: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Plateau length at each end (0 for profiles not built by the ramp).
    pub fn n_h(&self) -> usize {
        self.n_h
    }

    /// Phase at cell `k`, continued as a constant outside `1..=N`.
    pub fn phi(&self, k: i64) -> f64 {
        self.phi[k.clamp(1, self.n() as i64)]
    }

    pub fn phi_in(&self) -> f64 {
        self.phi(1)
    }

    pub fn phi_out(&self) -> f64 {
        self.phi(self.n() as i64)
    }

    pub fn values(&self) -> &Indexed<f64> {
        &self.phi
    }
}

/// Constant plateaus of `n_h` cells joined by a linear phase ramp:
/// `phi[k] = phi_i + (phi_ii - phi_i) (k - n_h) / (n - 2 n_h)` in between.
pub fn linear_ramp_profile(phi_i: f64, phi_ii: f64, n_h: usize, n: usize) -> Result<PhaseProfile> {
    if n <= 2 * n_h {
        return Err(Error::BadWindow(format!(
            "need N > 2 N_h, got N = {n}, N_h = {n_h}"
        )));
    }
    for p in [phi_i, phi_ii] {
        if !in_passband(p) {
            return Err(Error::BadProfile {
                k: 1,
                reason: format!("lead phase {p} outside (0, pi)"),
            });
        }
    }
    let slope = (phi_ii - phi_i) / (n - 2 * n_h) as f64;
    let phi = (1..=n)
        .map(|k| {
            if k <= n_h {
                phi_i
            } else if k <= n - n_h {
                phi_i + slope * (k - n_h) as f64
            } else {
                phi_ii
            }
        })
        .collect();
    let mut profile = PhaseProfile::new(phi)?;
    profile.n_h = n_h;
    Ok(profile)
}

/// Normalised coupling `u[k] / u_I = (1 - cos phi_I) / (1 - cos phi[k])`.
pub fn u_bar(profile: &PhaseProfile, k: i64) -> f64 {
    (1.0 - profile.phi_in().cos()) / (1.0 - profile.phi(k).cos())
}

/// `u_bar` over `[from, to]`; the weights of the conserved flux.
pub fn u_bar_weights(profile: &PhaseProfile, from: i64, to: i64) -> Indexed<f64> {
    Indexed::from_fn(from, to, |k| u_bar(profile, k))
}

fn real(v: f64) -> ComplexScalar {
    ComplexScalar::new(v, 0.0)
}

/// Canonical coefficients over `[1, N]`.
///
/// The coupled-cavity equation at cell `j` reads
/// `y[j+1] + ((2(1 - cos phi_I) - (u[j] + u[j+1])) / u[j+1]) y[j] + (u[j] / u[j+1]) y[j-1] = 0`
/// (with `u` normalised); canonical index `k` holds the equation at `j = k + 1`.
pub fn coeffs_from_phase(profile: &PhaseProfile) -> Result<CoefficientSequence> {
    let two_c = 2.0 * (1.0 - profile.phi_in().cos());
    CoefficientSequence::from_fn(1, profile.n() as i64, |k| {
        let (u0, u1) = (u_bar(profile, k + 1), u_bar(profile, k + 2));
        (real(u0 / u1), real((two_c - (u0 + u1)) / u1))
    })
}

/// Same coefficients written through the cosines alone:
/// `f1 = -2 cos phi[j+1] + dc / (1 - cos phi[j])`, `f0 = 1 - dc / (1 - cos phi[j])`
/// with `dc = cos phi[j+1] - cos phi[j]`.
pub fn coeffs_from_phase_cosine_form(profile: &PhaseProfile) -> Result<CoefficientSequence> {
    CoefficientSequence::from_fn(1, profile.n() as i64, |k| {
        let (c0, c1) = (profile.phi(k + 1).cos(), profile.phi(k + 2).cos());
        let ratio = (c1 - c0) / (1.0 - c0);
        (real(1.0 - ratio), real(-2.0 * c1 + ratio))
    })
}
