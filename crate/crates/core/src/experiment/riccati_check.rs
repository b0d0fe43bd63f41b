use crate::dlw::{coeffs_from_phase, linear_ramp_profile};
use crate::recurrence::{assign_branches, Branch, CoefficientSequence};
use crate::wave_split::{riccati_gauge, riccati_residual, GaugeSequences};
use crate::Result;

/// Riccati-equation residuals of the two gauges on one ramp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiResiduals {
    /// Cells in the linear part of the ramp.
    pub ramp_len: usize,
    /// Residual of the first-order corrected gauge.
    pub corrected: f64,
    /// Residual of the bare characteristic roots.
    pub root: f64,
}

fn worst(g: &GaugeSequences, seq: &CoefficientSequence) -> Result<f64> {
    Ok(riccati_residual(g, seq, Branch::First)?.max(riccati_residual(g, seq, Branch::Second)?))
}

/// Residuals over the cells whose stencil `phi[k+1..=k+4]` lies on the
/// linear part of a ramp of `ramp_len` cells between `n_h`-cell plateaus.
///
/// The corners where the ramp meets the plateaus are excluded: there the
/// phase has a jump in slope and no gauge built from local roots can do
/// better than first order, whatever the ramp length.
pub fn riccati_residuals(
    phi_i: f64,
    phi_ii: f64,
    n_h: usize,
    ramp_len: usize,
) -> Result<RiccatiResiduals> {
    let n = 2 * n_h + ramp_len;
    let profile = linear_ramp_profile(phi_i, phi_ii, n_h, n)?;
    let seq = coeffs_from_phase(&profile)?;
    let roots = assign_branches(&seq)?;
    let from = n_h.max(2) as i64 - 1;
    let to = (n - n_h) as i64 - 4;
    let window = seq.restrict(from, to)?;
    Ok(RiccatiResiduals {
        ramp_len,
        corrected: worst(&riccati_gauge(&roots)?, &window)?,
        root: worst(&GaugeSequences::from_roots(&roots), &window)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn corrected_gauge_is_better_and_converges_faster() {
        let a = riccati_residuals(PI / 3.0, 2.0 * PI / 3.0, 20, 40).unwrap();
        let b = riccati_residuals(PI / 3.0, 2.0 * PI / 3.0, 20, 80).unwrap();
        assert!(a.corrected < a.root);
        assert!(a.corrected / b.corrected > 3.0);
        assert!(a.root / b.root > 1.5 && a.root / b.root < 2.5);
    }

    #[test]
    fn flat_profile_has_zero_residual() {
        let r = riccati_residuals(1.0, 1.0, 10, 20).unwrap();
        assert!(r.corrected < 1e-14 && r.root < 1e-14);
    }

    #[test]
    fn too_short_ramp_is_rejected() {
        assert!(riccati_residuals(1.0, 2.0, 10, 2).is_err());
    }
}
