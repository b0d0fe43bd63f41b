//! Canonical recurrence `y[k+2] + f1[k] y[k+1] + f0[k] y[k] + f[k] = 0`.
//!
//! Coefficients at index `k` belong to the step that produces `y[k+2]`.

mod flux;
mod oracle;
mod roots;

pub use flux::flux_series;
pub use oracle::{direct_scatter_solve, solve_tridiagonal, OracleSolution, ScatterBoundary};
pub use roots::{assign_branches, characteristic_roots, degenerate, Branch, RootPairSequence};

use crate::{ComplexScalar, Error, Indexed, Result};

/// Amplitudes `y[k]` over a contiguous window.
pub type SolutionProfile = Indexed<ComplexScalar>;

/// Per-cell coefficients `f0`, `f1` and forcing `f` over `[k_min, k_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    f0: Indexed<ComplexScalar>,
    f1: Indexed<ComplexScalar>,
    forcing: Indexed<ComplexScalar>,
}

impl CoefficientSequence {
    /// Homogeneous sequence starting at `k_min`. `f0` and `f1` must have equal
    /// nonzero length, be finite, and `f0` must not vanish.
    pub fn new(k_min: i64, f0: Vec<ComplexScalar>, f1: Vec<ComplexScalar>) -> Result<Self> {
        if f0.len() != f1.len() {
            return Err(Error::WindowMismatch(format!(
                "f0 has {} entries, f1 has {}",
                f0.len(),
                f1.len()
            )));
        }
        if f0.is_empty() {
            return Err(Error::WindowTooSmall { len: 0 });
        }
        let n = f0.len();
        for (i, (a, b)) in f0.iter().zip(&f1).enumerate() {
            let k = k_min + i as i64;
            if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
                return Err(Error::NonFinite { k });
            }
            if a.norm() == 0.0 {
                return Err(Error::VanishingCoefficient { k });
            }
        }
        Ok(CoefficientSequence {
            f0: Indexed::new(k_min, f0),
            f1: Indexed::new(k_min, f1),
            forcing: Indexed::new(k_min, vec![ComplexScalar::new(0.0, 0.0); n]),
        })
    }

    /// Builds `[k_min, k_max]` from a closure returning `(f0, f1)`.
    pub fn from_fn(
        k_min: i64,
        k_max: i64,
        mut f: impl FnMut(i64) -> (ComplexScalar, ComplexScalar),
    ) -> Result<Self> {
        if k_max < k_min {
            return Err(Error::BadWindow(format!("[{k_min}, {k_max}] is empty")));
        }
        let (f0, f1) = (k_min..=k_max).map(&mut f).unzip();
        Self::new(k_min, f0, f1)
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(k_min: i64, f0: &[f64], f1: &[f64]) -> Result<Self> {
        Self::new(
            k_min,
            f0.iter().map(|&v| ComplexScalar::new(v, 0.0)).collect(),
            f1.iter().map(|&v| ComplexScalar::new(v, 0.0)).collect(),
        )
    }

    pub fn with_forcing(mut self, forcing: Vec<ComplexScalar>) -> Result<Self> {
        if forcing.len() != self.len() {
            return Err(Error::WindowMismatch(format!(
                "forcing has {} entries, coefficients {}",
                forcing.len(),
                self.len()
            )));
        }
        self.forcing = Indexed::new(self.k_min(), forcing);
        Ok(self)
    }

    pub fn k_min(&self) -> i64 {
        self.f0.start()
    }

    pub fn k_max(&self) -> i64 {
        self.f0.end()
    }

    pub fn len(&self) -> usize {
        self.f0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f0.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.f0.contains(k)
    }

    pub fn f0(&self, k: i64) -> ComplexScalar {
        self.f0[k]
    }

    pub fn f1(&self, k: i64) -> ComplexScalar {
        self.f1[k]
    }

    pub fn forcing(&self, k: i64) -> ComplexScalar {
        self.forcing[k]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.forcing.values().iter().all(|f| f.norm() == 0.0)
    }

    /// The sub-window `[from, to]`.
    pub fn restrict(&self, from: i64, to: i64) -> Result<Self> {
        if to < from {
            return Err(Error::BadWindow(format!("[{from}, {to}] is empty")));
        }
        Ok(CoefficientSequence {
            f0: self.f0.slice(from, to)?,
            f1: self.f1.slice(from, to)?,
            forcing: self.forcing.slice(from, to)?,
        })
    }

    /// Iterates the recurrence forward from `y[k_min]`, `y[k_min+1]`,
    /// producing the profile over `[k_min, k_max + 2]`.
    pub fn iterate(&self, y_first: ComplexScalar, y_second: ComplexScalar) -> SolutionProfile {
        let mut y = Vec::with_capacity(self.len() + 2);
        y.push(y_first);
        y.push(y_second);
        for (i, k) in (self.k_min()..=self.k_max()).enumerate() {
            let next = -(self.f1(k) * y[i + 1] + self.f0(k) * y[i] + self.forcing(k));
            y.push(next);
        }
        Indexed::new(self.k_min(), y)
    }
}

/// Relative residual `max|y[k+2] + f1 y[k+1] + f0 y[k] + f| / max|y|`.
///
/// The profile must cover `[k_min, k_max + 2]`. An all-zero profile of a
/// homogeneous equation gives 0.
pub fn recurrence_residual(seq: &CoefficientSequence, profile: &SolutionProfile) -> Result<f64> {
    profile.require(seq.k_min(), seq.k_max() + 2, "profile")?;
    let mut worst = 0.0f64;
    for k in seq.k_min()..=seq.k_max() {
        let r =
            profile[k + 2] + seq.f1(k) * profile[k + 1] + seq.f0(k) * profile[k] + seq.forcing(k);
        worst = worst.max(r.norm());
    }
    let scale = (seq.k_min()..=seq.k_max() + 2)
        .map(|k| profile[k].norm())
        .fold(0.0f64, f64::max);
    Ok(if scale > 0.0 { worst / scale } else { worst })
}
