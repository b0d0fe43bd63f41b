//! Approximate solutions of the Riccati equation `f0[k] + g[k] (g[k+1] + f1[k]) = 0`.
//!
//! An exact solution of that equation diagonalises the transfer map. The
//! first-order approximation below is what the WKB-Riccati transfer matrices
//! carry on their diagonal.

use super::GaugeSequences;
use crate::recurrence::{Branch, CoefficientSequence, RootPairSequence};
use crate::{ComplexScalar, Error, Indexed, Result};

/// `g[k-1] = rho[k-1] (1 -+ (rho[k] - rho[k-1]) / (rho1[k] - rho2[k]))` with
/// `-` for the first branch, over `[k_min, k_max - 1]` of the roots.
pub fn riccati_approx_roots(
    roots: &RootPairSequence,
    branch: Branch,
) -> Result<Indexed<ComplexScalar>> {
    if roots.len() < 2 {
        return Err(Error::WindowTooSmall { len: roots.len() });
    }
    Indexed::try_from_fn(roots.k_min(), roots.k_max() - 1, |m| {
        let d = roots.split(m + 1);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateRoots { k: m + 1 });
        }
        let rho = roots.rho(branch, m);
        Ok(rho * (1.0 + branch.correction_sign() * (roots.rho(branch, m + 1) - rho) / d))
    })
}

/// Both branches of [`riccati_approx_roots`] as a gauge.
pub fn riccati_gauge(roots: &RootPairSequence) -> Result<GaugeSequences> {
    let g1 = riccati_approx_roots(roots, Branch::First)?;
    let g2 = riccati_approx_roots(roots, Branch::Second)?;
    GaugeSequences::new(g1.start(), g1.into_values(), g2.into_values())
}

/// `max |f0[k] + g[k] (g[k+1] + f1[k])|` over the coefficient window, for one
/// branch of the gauge. The gauge must cover `[k_min, k_max + 1]`.
pub fn riccati_residual(
    g: &GaugeSequences,
    seq: &CoefficientSequence,
    branch: Branch,
) -> Result<f64> {
    g.require(seq.k_min(), seq.k_max() + 1)?;
    Ok((seq.k_min()..=seq.k_max())
        .map(|k| (seq.f0(k) + g.g(branch, k) * (g.g(branch, k + 1) + seq.f1(k))).norm())
        .fold(0.0, f64::max))
}

/// Residual of the iterated quadratic
/// `g[m]^2 + g[m] f1[m] + f0[m] + rho[m+1] (rho[m+2] - rho[m+1]) = 0`
/// over the coefficient window. `g` must cover the window and the roots
/// `[k_min + 1, k_max + 2]`.
pub fn quadratic_residual(
    g: &Indexed<ComplexScalar>,
    seq: &CoefficientSequence,
    roots: &RootPairSequence,
    branch: Branch,
) -> Result<f64> {
    g.require(seq.k_min(), seq.k_max(), "gauge")?;
    roots.require(seq.k_min() + 1, seq.k_max() + 2)?;
    Ok((seq.k_min()..=seq.k_max())
        .map(|m| {
            let (r1, r2) = (roots.rho(branch, m + 1), roots.rho(branch, m + 2));
            (g[m] * g[m] + g[m] * seq.f1(m) + seq.f0(m) + r1 * (r2 - r1)).norm()
        })
        .fold(0.0, f64::max))
}
