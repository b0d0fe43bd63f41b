//! Closed-form WKB profiles and the phase-drift sum that separates them.
//!
//! All profiles are normalised to a caller-supplied value at `k0`; the
//! closed forms hold only up to a constant factor.

use crate::recurrence::{assign_branches, Branch, CoefficientSequence, RootPairSequence};
use crate::{ComplexScalar, Error, Indexed, Result};
use std::f64::consts::PI;

/// Which closed form produced a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    /// Prefactor times `exp(sum ln rho +- sum df1 / (2 sqrt(disc)))`.
    RiccatiSum,
    /// Prefactor times `exp(sum ln rho)` only.
    DirectSum,
    /// Running product of the WKB-Riccati diagonal factors.
    ProductForm,
}

/// A closed-form WKB profile over `[k0, k_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WkbClosedForm {
    pub variant: ClosedFormVariant,
    pub branch: Branch,
    pub k0: i64,
    pub values: Indexed<ComplexScalar>,
    /// `(f1^2 - 4 f0)^(-1/4)` on a branch continued from `k0`. All ones for
    /// the product form.
    pub prefactor: Indexed<ComplexScalar>,
}

fn check_window(roots: &RootPairSequence, k0: i64, k_end: i64) -> Result<()> {
    if k_end < k0 {
        return Err(Error::BadWindow(format!("[{k0}, {k_end}] is empty")));
    }
    roots.require(k0, k_end)
}

/// Running product `y0 prod rho[s-1] (1 -+ (rho[s] - rho[s-1]) / (rho1[s] - rho2[s]))`.
pub fn wkb_product(
    roots: &RootPairSequence,
    branch: Branch,
    k0: i64,
    k_end: i64,
    y0: ComplexScalar,
) -> Result<WkbClosedForm> {
    check_window(roots, k0, k_end)?;
    let mut values = Vec::with_capacity((k_end - k0 + 1) as usize);
    let mut y = y0;
    values.push(y);
    for s in k0 + 1..=k_end {
        let d = roots.split(s);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateRoots { k: s });
        }
        let prev = roots.rho(branch, s - 1);
        y *= prev * (1.0 + branch.correction_sign() * (roots.rho(branch, s) - prev) / d);
        values.push(y);
    }
    let n = values.len();
    Ok(WkbClosedForm {
        variant: ClosedFormVariant::ProductForm,
        branch,
        k0,
        values: Indexed::new(k0, values),
        prefactor: Indexed::new(k0, vec![ComplexScalar::new(1.0, 0.0); n]),
    })
}

/// `(rho1 - rho2)^(-1/2)` along the window with its argument continued from
/// the first cell. A jump of more than a quarter turn in `arg(rho1 - rho2)`
/// between neighbours cannot be continued unambiguously.
fn quarter_root_prefactor(
    roots: &RootPairSequence,
    k0: i64,
    k_end: i64,
) -> Result<Indexed<ComplexScalar>> {
    let mut theta = roots.split(k0).arg();
    let mut prev = theta;
    Indexed::try_from_fn(k0, k_end, |k| {
        let d = roots.split(k);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateRoots { k });
        }
        if k > k0 {
            let mut step = d.arg() - prev;
            step -= 2.0 * PI * (step / (2.0 * PI)).round();
            if step.abs() > PI / 2.0 {
                return Err(Error::BranchCutCrossing { k });
            }
            theta += step;
            prev = d.arg();
        }
        Ok(ComplexScalar::from_polar(d.norm().powf(-0.5), -0.5 * theta))
    })
}

/// Partial sums `sum_{s=k0+1}^{k} (f1[s] - f1[s-1]) / (2 (rho1[s] - rho2[s]))`.
fn drift_partial_sums(
    seq: &CoefficientSequence,
    roots: &RootPairSequence,
    k0: i64,
    k_end: i64,
) -> Result<Vec<ComplexScalar>> {
    if !(seq.contains(k0) && seq.contains(k_end)) {
        return Err(Error::WindowMismatch(format!(
            "coefficients [{}, {}] do not cover [{k0}, {k_end}]",
            seq.k_min(),
            seq.k_max()
        )));
    }
    let mut acc = ComplexScalar::new(0.0, 0.0);
    let mut out = Vec::with_capacity((k_end - k0 + 1) as usize);
    out.push(acc);
    for s in k0 + 1..=k_end {
        let d = roots.split(s);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateRoots { k: s });
        }
        acc += (seq.f1(s) - seq.f1(s - 1)) / (2.0 * d);
        out.push(acc);
    }
    Ok(out)
}

fn expsum(
    seq: &CoefficientSequence,
    roots: &RootPairSequence,
    branch: Branch,
    k0: i64,
    k_end: i64,
    y0: ComplexScalar,
    with_drift: bool,
) -> Result<WkbClosedForm> {
    check_window(roots, k0, k_end)?;
    let prefactor = quarter_root_prefactor(roots, k0, k_end)?;
    let drift = if with_drift {
        Some(drift_partial_sums(seq, roots, k0, k_end)?)
    } else {
        None
    };
    // + for the first branch, - for the second.
    let sign = -branch.correction_sign();
    let mut log_sum = ComplexScalar::new(0.0, 0.0);
    let q0 = prefactor[k0];
    let values = Indexed::from_fn(k0, k_end, |k| {
        if k > k0 {
            log_sum += roots.rho(branch, k - 1).ln();
        }
        let mut exponent = log_sum;
        if let Some(d) = &drift {
            exponent += sign * d[(k - k0) as usize];
        }
        y0 * prefactor[k] / q0 * exponent.exp()
    });
    Ok(WkbClosedForm {
        variant: if with_drift {
            ClosedFormVariant::RiccatiSum
        } else {
            ClosedFormVariant::DirectSum
        },
        branch,
        k0,
        values,
        prefactor,
    })
}

/// Closed form obtained through the Riccati equation: prefactor, log-sum of
/// roots and the phase-drift sum.
pub fn wkb_expsum_riccati(
    seq: &CoefficientSequence,
    roots: &RootPairSequence,
    branch: Branch,
    k0: i64,
    k_end: i64,
    y0: ComplexScalar,
) -> Result<WkbClosedForm> {
    expsum(seq, roots, branch, k0, k_end, y0, true)
}

/// Closed form of the direct asymptotic expansion: no phase-drift sum.
pub fn wkb_expsum_direct(
    seq: &CoefficientSequence,
    roots: &RootPairSequence,
    branch: Branch,
    k0: i64,
    k_end: i64,
    y0: ComplexScalar,
) -> Result<WkbClosedForm> {
    expsum(seq, roots, branch, k0, k_end, y0, false)
}

/// `sum_{s=k0+1}^{k_end} (f1[s] - f1[s-1]) / (2 sqrt(f1[s]^2 - 4 f0[s]))`,
/// with the square root taken as `rho1 - rho2` of the branch assignment.
pub fn delta_p_sum(seq: &CoefficientSequence, k0: i64, k_end: i64) -> Result<ComplexScalar> {
    if k_end < k0 {
        return Err(Error::BadWindow(format!("[{k0}, {k_end}] is empty")));
    }
    let roots = assign_branches(&seq.restrict(k0, k_end)?)?;
    Ok(*drift_partial_sums(seq, &roots, k0, k_end)?.last().unwrap())
}

/// Continuum limit of [`delta_p_sum`] across a passband phase change:
/// `-i (phi_out - phi_in) / 2`.
pub fn delta_p_estimate(phi_in: f64, phi_out: f64) -> ComplexScalar {
    ComplexScalar::new(0.0, -0.5 * (phi_out - phi_in))
}
