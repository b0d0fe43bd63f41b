use super::CoefficientSequence;
use crate::{ComplexScalar, Error, Indexed, Result};

/// Which of the two characteristic-root branches a quantity follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Seeded with `Im(rho) >= 0`; the forward wave in a passband.
    First,
    Second,
}

impl Branch {
    /// `-1` for the first branch and `+1` for the second: the sign of the
    /// root-difference correction in the WKB factors.
    pub fn correction_sign(self) -> f64 {
        match self {
            Branch::First => -1.0,
            Branch::Second => 1.0,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::First => Branch::Second,
            Branch::Second => Branch::First,
        }
    }
}

/// True when the discriminant is too small to separate the roots.
pub fn degenerate(discriminant: ComplexScalar, f1: ComplexScalar) -> bool {
    discriminant.norm() < 1e-14 * f1.norm_sqr().max(1.0)
}

/// Roots of `rho^2 + f1 rho + f0 = 0`, plus the discriminant.
pub(crate) fn quadratic_roots(
    f0: ComplexScalar,
    f1: ComplexScalar,
    k: i64,
) -> Result<(ComplexScalar, ComplexScalar, ComplexScalar)> {
    let disc = f1 * f1 - 4.0 * f0;
    if degenerate(disc, f1) {
        return Err(Error::DegenerateRoots { k });
    }
    let sq = disc.sqrt();
    // Pick the sign that avoids cancellation, then use the product for the other root.
    let s = if (f1.conj() * sq).re >= 0.0 { sq } else { -sq };
    let q = -0.5 * (f1 + s);
    let (a, b) = if q.norm() == 0.0 {
        (0.5 * sq, -0.5 * sq)
    } else {
        (q, f0 / q)
    };
    Ok((a, b, disc))
}

/// The two roots of the characteristic equation at cell `k`, without branch
/// assignment.
pub fn characteristic_roots(
    seq: &CoefficientSequence,
    k: i64,
) -> Result<(ComplexScalar, ComplexScalar)> {
    if !seq.contains(k) {
        return Err(Error::WindowMismatch(format!(
            "cell {k} outside [{}, {}]",
            seq.k_min(),
            seq.k_max()
        )));
    }
    let (a, b, _) = quadratic_roots(seq.f0(k), seq.f1(k), k)?;
    Ok((a, b))
}

/// Branch-assigned characteristic roots over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct RootPairSequence {
    rho1: Indexed<ComplexScalar>,
    rho2: Indexed<ComplexScalar>,
    discriminant: Indexed<ComplexScalar>,
}

impl RootPairSequence {
    /// Builds a sequence from explicit root pairs. The discriminant is
    /// `(rho1 - rho2)^2`.
    pub fn from_pairs(k_min: i64, pairs: &[(ComplexScalar, ComplexScalar)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::WindowTooSmall { len: 0 });
        }
        for (i, (a, b)) in pairs.iter().enumerate() {
            let k = k_min + i as i64;
            if degenerate((a - b).powi(2), -(a + b)) {
                return Err(Error::DegenerateRoots { k });
            }
        }
        Ok(RootPairSequence {
            rho1: Indexed::new(k_min, pairs.iter().map(|p| p.0).collect()),
            rho2: Indexed::new(k_min, pairs.iter().map(|p| p.1).collect()),
            discriminant: Indexed::new(k_min, pairs.iter().map(|p| (p.0 - p.1).powi(2)).collect()),
        })
    }

    pub fn k_min(&self) -> i64 {
        self.rho1.start()
    }

    pub fn k_max(&self) -> i64 {
        self.rho1.end()
    }

    pub fn len(&self) -> usize {
        self.rho1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho1.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.rho1.contains(k)
    }

    pub fn rho1(&self, k: i64) -> ComplexScalar {
        self.rho1[k]
    }

    pub fn rho2(&self, k: i64) -> ComplexScalar {
        self.rho2[k]
    }

    pub fn rho(&self, branch: Branch, k: i64) -> ComplexScalar {
        match branch {
            Branch::First => self.rho1[k],
            Branch::Second => self.rho2[k],
        }
    }

    /// `f1^2 - 4 f0` at cell `k`.
    pub fn discriminant(&self, k: i64) -> ComplexScalar {
        self.discriminant[k]
    }

    /// `rho1 - rho2`: the square root of the discriminant on the branch
    /// fixed by the root assignment.
    pub fn split(&self, k: i64) -> ComplexScalar {
        self.rho1[k] - self.rho2[k]
    }

    /// `+-(rho1 - rho2)/2`, the half-discriminant root of the given branch.
    pub fn half_split(&self, branch: Branch, k: i64) -> ComplexScalar {
        -branch.correction_sign() * 0.5 * self.split(k)
    }

    pub fn rho1_seq(&self) -> &Indexed<ComplexScalar> {
        &self.rho1
    }

    pub fn rho2_seq(&self) -> &Indexed<ComplexScalar> {
        &self.rho2
    }

    pub fn restrict(&self, from: i64, to: i64) -> Result<Self> {
        Ok(RootPairSequence {
            rho1: self.rho1.slice(from, to)?,
            rho2: self.rho2.slice(from, to)?,
            discriminant: self.discriminant.slice(from, to)?,
        })
    }

    pub(crate) fn require(&self, from: i64, to: i64) -> Result<()> {
        self.rho1.require(from, to, "roots")
    }
}

/// Characteristic roots along the window with continuous branch labels.
///
/// Branch 1 at `k_min` has `Im(rho) >= 0` (ties broken by larger real part);
/// afterwards each cell takes the pairing closest to the previous cell.
pub fn assign_branches(seq: &CoefficientSequence) -> Result<RootPairSequence> {
    let n = seq.len();
    let mut rho1: Vec<ComplexScalar> = Vec::with_capacity(n);
    let mut rho2: Vec<ComplexScalar> = Vec::with_capacity(n);
    let mut disc = Vec::with_capacity(n);
    for k in seq.k_min()..=seq.k_max() {
        let (a, b, d) = quadratic_roots(seq.f0(k), seq.f1(k), k)?;
        let (first, second) = match (rho1.last(), rho2.last()) {
            (Some(&p1), Some(&p2)) => {
                let keep = (a - p1).norm() + (b - p2).norm();
                let swap = (b - p1).norm() + (a - p2).norm();
                if swap < keep {
                    (b, a)
                } else {
                    (a, b)
                }
            }
            _ => {
                if a.im > b.im || (a.im == b.im && a.re >= b.re) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
        };
        rho1.push(first);
        rho2.push(second);
        disc.push(d);
    }
    Ok(RootPairSequence {
        rho1: Indexed::new(seq.k_min(), rho1),
        rho2: Indexed::new(seq.k_min(), rho2),
        discriminant: Indexed::new(seq.k_min(), disc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn single(f0: ComplexScalar, f1: ComplexScalar) -> CoefficientSequence {
        CoefficientSequence::new(0, vec![f0], vec![f1]).unwrap()
    }

    #[test]
    fn passband_roots_are_unit_phasors() {
        let (a, b) = characteristic_roots(&single(c(1.0, 0.0), c(-1.0, 0.0)), 0).unwrap();
        let (up, down) = if a.im > 0.0 { (a, b) } else { (b, a) };
        assert!((up - ComplexScalar::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        assert!((down - ComplexScalar::from_polar(1.0, -PI / 3.0)).norm() < 1e-15);
        assert!((up - c(0.5, 0.866025)).norm() < 1e-6);
    }

    #[test]
    fn quarter_turn_roots() {
        let (a, b) = characteristic_roots(&single(c(1.0, 0.0), c(0.0, 0.0)), 0).unwrap();
        let mut ims = [a.im, b.im];
        ims.sort_by(f64::total_cmp);
        assert_eq!(ims, [-1.0, 1.0]);
        assert_eq!(a.re, 0.0);
    }

    #[test]
    fn band_edge_is_degenerate() {
        let err = characteristic_roots(&single(c(1.0, 0.0), c(-2.0, 0.0)), 0).unwrap_err();
        assert_eq!(err, Error::DegenerateRoots { k: 0 });
        let seq = CoefficientSequence::from_real(5, &[1.0, 1.0], &[-1.0, 2.0]).unwrap();
        assert_eq!(
            assign_branches(&seq).unwrap_err(),
            Error::DegenerateRoots { k: 6 }
        );
    }

    #[test]
    fn vieta_closure_on_awkward_coefficients() {
        for &(f0, f1) in &[
            (c(1e-8, 0.0), c(1e4, 0.0)),
            (c(3.0, -2.0), c(-0.1, 7.0)),
            (c(-1.0, 0.0), c(1e-12, 0.0)),
        ] {
            let (a, b) = characteristic_roots(&single(f0, f1), 0).unwrap();
            let scale = 1.0 + f0.norm() + f1.norm();
            assert!((a * b - f0).norm() < 1e-12 * scale);
            assert!((a + b + f1).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn constant_window_keeps_upper_root_first() {
        let seq = CoefficientSequence::from_real(0, &[1.0; 6], &[-1.0; 6]).unwrap();
        let roots = assign_branches(&seq).unwrap();
        for k in 0..6 {
            assert!((roots.rho1(k) - ComplexScalar::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        }
        assert!((roots.discriminant(0) - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((roots.half_split(Branch::First, 0) - c(0.0, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn branches_follow_through_a_principal_sqrt_flip() {
        // f1 = 0, f0 = e^{i theta}: the discriminant -4 e^{i theta} crosses the
        // negative real axis at theta = 0, where the principal root jumps sign.
        let n = 41;
        let seq = CoefficientSequence::from_fn(0, n - 1, |k| {
            let theta = -0.6 + 1.2 * k as f64 / (n - 1) as f64;
            (ComplexScalar::from_polar(1.0, theta), c(0.0, 0.0))
        })
        .unwrap();
        let raw: Vec<ComplexScalar> = (0..n).map(|k| 0.5 * (-4.0 * seq.f0(k)).sqrt()).collect();
        let raw_jump = raw
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .fold(0.0, f64::max);
        assert!(
            raw_jump > 1.5,
            "test window must exercise the principal-branch flip"
        );

        let roots = assign_branches(&seq).unwrap();
        let mut max_adjacent = 0.0f64;
        let mut max_step = 0.0f64;
        for k in 1..n {
            // Brute force: every pairing of the two root sets at k-1 and k.
            let prev = [roots.rho1(k - 1), roots.rho2(k - 1)];
            let cur = [roots.rho1(k), roots.rho2(k)];
            let mut best = f64::INFINITY;
            for &(i, j) in &[(0, 0), (1, 1), (0, 1), (1, 0)] {
                best = best.min((cur[i] - prev[j]).norm());
            }
            max_adjacent = max_adjacent.max(best);
            for j in 0..2 {
                let step = (cur[j] - prev[j]).norm();
                let cross = (cur[j] - prev[1 - j]).norm();
                assert!(step <= cross, "pairing at {k} is not the closest");
                max_step = max_step.max(step);
            }
        }
        assert!(max_step < 2.0 * max_adjacent);
    }

    #[test]
    fn from_pairs_rejects_coincident_roots() {
        let p = c(0.3, 0.4);
        assert_eq!(
            RootPairSequence::from_pairs(2, &[(p, -p), (p, p)]).unwrap_err(),
            Error::DegenerateRoots { k: 3 }
        );
    }
}
