//! Independent boundary-value solve of the whole chain.
//!
//! The recurrence rows plus one radiation condition per lead form a
//! tridiagonal system in `y[k_min] .. y[k_max + 1]`. Nothing here touches the
//! wave splitting or scattering matrices, so it can check them.

use super::{roots::quadratic_roots, CoefficientSequence, SolutionProfile};
use crate::{ComplexScalar, Error, Indexed, Result};

/// Lead phases and incoming amplitudes for a two-lead scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterBoundary {
    /// Phase advance per cell in the left lead, in `(0, pi)`.
    pub phi_in: f64,
    /// Phase advance per cell in the right lead, in `(0, pi)`.
    pub phi_out: f64,
    /// Forward wave entering from the left, referenced to the first cell.
    pub incident_amplitude: ComplexScalar,
    /// Backward wave entering from the right, referenced to the last cell.
    pub incident_right: ComplexScalar,
}

impl ScatterBoundary {
    /// Unit incidence from the left, nothing from the right.
    pub fn new(phi_in: f64, phi_out: f64) -> Self {
        ScatterBoundary {
            phi_in,
            phi_out,
            incident_amplitude: ComplexScalar::new(1.0, 0.0),
            incident_right: ComplexScalar::new(0.0, 0.0),
        }
    }

    fn validate(&self, k_min: i64, k_max: i64) -> Result<()> {
        let ok = |p: f64| p > 0.0 && p < std::f64::consts::PI;
        if !ok(self.phi_in) {
            return Err(Error::LeadMismatch { k: k_min });
        }
        if !ok(self.phi_out) {
            return Err(Error::LeadMismatch { k: k_max });
        }
        Ok(())
    }
}

/// Result of [`direct_scatter_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    /// Outgoing backward amplitude at the first cell (`R` for unit incidence).
    pub r: ComplexScalar,
    /// Outgoing forward amplitude at the last cell (`T` for unit incidence).
    pub t: ComplexScalar,
    /// Total field over `[k_min, k_max + 1]`.
    pub y: SolutionProfile,
}

fn lead_matches(seq: &CoefficientSequence, k: i64, phi: f64) -> Result<bool> {
    let (a, b, _) = quadratic_roots(seq.f0(k), seq.f1(k), k)?;
    let up = ComplexScalar::from_polar(1.0, phi);
    let down = up.conj();
    let direct = (a - up).norm().max((b - down).norm());
    let swapped = (a - down).norm().max((b - up).norm());
    Ok(direct.min(swapped) < 1e-9)
}

/// Solves the chain with plane-wave leads.
///
/// Left lead: `y[k] = a e^{i phi_in (k-k_min)} + R e^{-i phi_in (k-k_min)}`.
/// Right lead: `y[k] = T e^{i phi_out (k-k_max)} + b e^{-i phi_out (k-k_max)}`.
/// `a` and `b` come from the boundary; `R`, `T` and the interior field are
/// unknowns. The first and last cells must carry the lead dispersion.
pub fn direct_scatter_solve(
    seq: &CoefficientSequence,
    boundary: &ScatterBoundary,
) -> Result<OracleSolution> {
    let cells = seq.len();
    if cells < 2 {
        return Err(Error::WindowTooSmall { len: cells });
    }
    boundary.validate(seq.k_min(), seq.k_max())?;
    if !lead_matches(seq, seq.k_min(), boundary.phi_in)? {
        return Err(Error::LeadMismatch { k: seq.k_min() });
    }
    if !lead_matches(seq, seq.k_max(), boundary.phi_out)? {
        return Err(Error::LeadMismatch { k: seq.k_max() });
    }

    let n = cells + 1;
    let zero = ComplexScalar::new(0.0, 0.0);
    let one = ComplexScalar::new(1.0, 0.0);
    let mut sub = vec![zero; n - 1];
    let mut diag = vec![zero; n];
    let mut sup = vec![zero; n - 1];
    let mut rhs = vec![zero; n];

    // Left radiation condition: y[1] - e^{-i phi} y[0] = (e^{i phi} - e^{-i phi}) a.
    let up = ComplexScalar::from_polar(1.0, boundary.phi_in);
    diag[0] = -up.conj();
    sup[0] = one;
    rhs[0] = (up - up.conj()) * boundary.incident_amplitude;

    for row in 1..cells {
        let k = seq.k_min() + row as i64 - 1;
        sub[row - 1] = seq.f0(k);
        diag[row] = seq.f1(k);
        sup[row] = one;
        rhs[row] = -seq.forcing(k);
    }

    // Right radiation condition: y[N+1] - e^{i phi} y[N] = -(e^{i phi} - e^{-i phi}) b.
    let out = ComplexScalar::from_polar(1.0, boundary.phi_out);
    sub[n - 2] = -out;
    diag[n - 1] = one;
    rhs[n - 1] = -(out - out.conj()) * boundary.incident_right;

    let y = solve_tridiagonal(sub, diag, sup, rhs)?;
    let r = y[0] - boundary.incident_amplitude;
    let t = y[cells - 1] - boundary.incident_right;
    Ok(OracleSolution {
        r,
        t,
        y: Indexed::new(seq.k_min(), y),
    })
}

/// Gaussian elimination with partial pivoting for a tridiagonal system.
///
/// `sub[i]` sits at `(i+1, i)`, `sup[i]` at `(i, i+1)`. Row interchanges fill
/// one extra superdiagonal.
pub fn solve_tridiagonal(
    sub: Vec<ComplexScalar>,
    mut diag: Vec<ComplexScalar>,
    mut sup: Vec<ComplexScalar>,
    mut rhs: Vec<ComplexScalar>,
) -> Result<Vec<ComplexScalar>> {
    let n = diag.len();
    assert!(n >= 1 && sub.len() + 1 == n && sup.len() + 1 == n && rhs.len() == n);
    let zero = ComplexScalar::new(0.0, 0.0);
    let mut sup2 = vec![zero; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if diag[i].l1_norm() >= sub[i].l1_norm() {
            if diag[i].norm() == 0.0 {
                return Err(Error::SingularSystem { row: i });
            }
            let m = sub[i] / diag[i];
            diag[i + 1] -= m * sup[i];
            rhs[i + 1] = rhs[i + 1] - m * rhs[i];
        } else {
            let m = diag[i] / sub[i];
            diag[i] = sub[i];
            let tmp = diag[i + 1];
            diag[i + 1] = sup[i] - m * tmp;
            if i + 2 < n {
                sup2[i] = sup[i + 1];
                sup[i + 1] = -m * sup2[i];
            }
            sup[i] = tmp;
            rhs.swap(i, i + 1);
            rhs[i + 1] = rhs[i + 1] - m * rhs[i];
        }
    }
    if diag[n - 1].norm() == 0.0 {
        return Err(Error::SingularSystem { row: n - 1 });
    }
    let mut x = rhs;
    x[n - 1] /= diag[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / diag[i];
    }
    if x.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::SingularSystem { row: 0 });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::recurrence_residual;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn pivoting_solver_matches_dense_product() {
        // Zero leading diagonal forces an interchange on the first step.
        let sub = vec![c(2.0, 1.0), c(0.5, 0.0), c(-1.0, 3.0)];
        let diag = vec![c(0.0, 0.0), c(1.0, -1.0), c(0.1, 0.0), c(4.0, 0.0)];
        let sup = vec![c(1.0, 0.0), c(3.0, 0.5), c(0.0, 2.0)];
        let x_true = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0), c(2.0, -1.0)];
        let n = 4;
        let mut b = vec![c(0.0, 0.0); n];
        for i in 0..n {
            b[i] += diag[i] * x_true[i];
            if i > 0 {
                b[i] += sub[i - 1] * x_true[i - 1];
            }
            if i + 1 < n {
                b[i] += sup[i] * x_true[i + 1];
            }
        }
        let x = solve_tridiagonal(sub, diag, sup, b).unwrap();
        for (a, e) in x.iter().zip(&x_true) {
            assert!((a - e).norm() < 1e-13);
        }
    }

    #[test]
    fn singular_system_is_reported() {
        let err = solve_tridiagonal(
            vec![c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap_err();
        assert_eq!(err, Error::SingularSystem { row: 0 });
    }

    #[test]
    fn homogeneous_chain_is_reflectionless() {
        let phi = PI / 3.0;
        let seq = CoefficientSequence::from_real(1, &[1.0; 30], &[-2.0 * phi.cos(); 30]).unwrap();
        let sol = direct_scatter_solve(&seq, &ScatterBoundary::new(phi, phi)).unwrap();
        assert!(sol.r.norm() < 1e-13);
        assert!((sol.t.norm() - 1.0).abs() < 1e-13);
        // Forward wave from unit amplitude at cell 1 reaches cell 30 with phase 29 phi.
        assert!((sol.t - ComplexScalar::from_polar(1.0, 29.0 * phi)).norm() < 1e-12);
        let inner = seq.restrict(1, 29).unwrap();
        assert!(recurrence_residual(&inner, &sol.y).unwrap() < 1e-12);
    }

    #[test]
    fn mismatched_lead_and_tiny_window() {
        let seq = CoefficientSequence::from_real(1, &[1.0; 5], &[-1.0; 5]).unwrap();
        assert_eq!(
            direct_scatter_solve(&seq, &ScatterBoundary::new(PI / 2.0, PI / 3.0)).unwrap_err(),
            Error::LeadMismatch { k: 1 }
        );
        assert_eq!(
            direct_scatter_solve(&seq, &ScatterBoundary::new(PI / 3.0, PI / 2.0)).unwrap_err(),
            Error::LeadMismatch { k: 5 }
        );
        let one = CoefficientSequence::from_real(1, &[1.0], &[-1.0]).unwrap();
        assert_eq!(
            direct_scatter_solve(&one, &ScatterBoundary::new(PI / 3.0, PI / 3.0)).unwrap_err(),
            Error::WindowTooSmall { len: 1 }
        );
    }
}
