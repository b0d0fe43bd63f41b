use super::{u_bar, ModelConstants, PhaseProfile};
use crate::recurrence::CoefficientSequence;
use crate::{ComplexScalar, Error, Indexed, Result};

/// Quadratic fits of the field-shape factors at an iris of radius `a` (cm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PFit {
    pub p_s: f64,
    pub p_c: f64,
    /// The fits were made for `a` in `(0, 2]` cm; outside that range the values
    /// are extrapolated and should be treated with suspicion.
    pub in_fit_range: bool,
}

pub fn p_polynomials(a: f64) -> PFit {
    PFit {
        p_s: 0.0142 * a * a - 0.1329 * a + 0.9133,
        p_c: -0.0928 * a * a + 0.4491 * a - 0.0444,
        in_fit_range: a > 0.0 && a <= 2.0,
    }
}

/// Physical cell dimensions in cm, cells `1..=N`. `a[k]` is the iris between
/// cells `k - 1` and `k`. Lookups outside the window are clamped, matching the
/// lead continuation of [`PhaseProfile`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveguideGeometry {
    a: Indexed<f64>,
    b: Indexed<f64>,
    d: Indexed<f64>,
    t: Indexed<f64>,
    b_star: f64,
    d_star: f64,
    use_p_polynomials: bool,
}

fn bad(k: i64, reason: impl Into<String>) -> Error {
    Error::BadGeometry {
        k,
        reason: reason.into(),
    }
}

impl WaveguideGeometry {
    /// Validates sizes: radii and lengths positive, `0 <= a < b`. A zero iris
    /// is accepted here (it is a closed cavity) but cannot produce a recurrence.
    pub fn new(
        a: Vec<f64>,
        b: Vec<f64>,
        d: Vec<f64>,
        t: Vec<f64>,
        b_star: f64,
        d_star: f64,
        use_p_polynomials: bool,
    ) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::BadWindow("geometry has no cells".into()));
        }
        if b.len() != n || d.len() != n || t.len() != n {
            return Err(bad(1, "a, b, d, t must have the same length"));
        }
        if !(b_star.is_finite() && b_star > 0.0 && d_star.is_finite() && d_star > 0.0) {
            return Err(bad(1, "reference sizes b_star, d_star must be positive"));
        }
        for i in 0..n {
            let k = i as i64 + 1;
            let finite = [a[i], b[i], d[i], t[i]].iter().all(|v| v.is_finite());
            if !finite {
                return Err(bad(k, "non-finite size"));
            }
            if b[i] <= 0.0 || d[i] <= 0.0 || t[i] < 0.0 || a[i] < 0.0 {
                return Err(bad(k, "sizes must be positive"));
            }
            if a[i] >= b[i] {
                return Err(bad(k, "iris radius must be smaller than cell radius"));
            }
        }
        Ok(WaveguideGeometry {
            a: Indexed::new(1, a),
            b: Indexed::new(1, b),
            d: Indexed::new(1, d),
            t: Indexed::new(1, t),
            b_star,
            d_star,
            use_p_polynomials,
        })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    fn clamp(&self, k: i64) -> i64 {
        k.clamp(1, self.n() as i64)
    }

    pub fn a(&self, k: i64) -> f64 {
        self.a[self.clamp(k)]
    }

    pub fn b(&self, k: i64) -> f64 {
        self.b[self.clamp(k)]
    }

    pub fn d(&self, k: i64) -> f64 {
        self.d[self.clamp(k)]
    }

    pub fn t(&self, k: i64) -> f64 {
        self.t[self.clamp(k)]
    }

    pub fn b_star(&self) -> f64 {
        self.b_star
    }

    pub fn d_star(&self) -> f64 {
        self.d_star
    }

    pub fn use_p_polynomials(&self) -> bool {
        self.use_p_polynomials
    }

    /// `(u[k], p_bar[k])` for the iris at `k`.
    fn iris(&self, consts: &ModelConstants, k: i64) -> Result<(f64, f64)> {
        let a = self.a(k);
        let (p_c, p_bar) = if self.use_p_polynomials {
            let fit = p_polynomials(a);
            if fit.p_c <= 0.0 {
                return Err(bad(k, format!("p_c = {} not positive at a = {a}", fit.p_c)));
            }
            (fit.p_c, fit.p_s / fit.p_c)
        } else {
            (1.0, 1.0)
        };
        let u = consts.alpha * a.powi(3) * p_c / (self.b_star * self.b_star * self.d_star);
        Ok((u, p_bar))
    }
}

/// Coupling coefficients of cell `k` to itself and its neighbours, plus the
/// detuning term `Z` (lossless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub alpha_kk: f64,
    pub alpha_km1: f64,
    pub alpha_kp1: f64,
    pub z: f64,
}

pub fn coupling_coeffs(
    geom: &WaveguideGeometry,
    consts: &ModelConstants,
    k: i64,
) -> Result<Coupling> {
    let (u0, p0) = geom.iris(consts, k)?;
    let (u1, p1) = geom.iris(consts, k + 1)?;
    let bt = geom.b(k) / geom.b_star;
    let dt = geom.d(k) / geom.d_star;
    let norm = bt * bt * dt;
    let alpha_kk = -(u0 * p0 + u1 * p1) / norm;
    Ok(Coupling {
        alpha_kk,
        alpha_km1: u0 / norm,
        alpha_kp1: u1 / norm,
        z: 1.0 - bt * bt - alpha_kk,
    })
}

/// Canonical coefficients over `[1, N]`; index `k` holds the field equation of
/// cell `k + 1`, solved for the field in cell `k + 2`.
pub fn coeffs_from_geometry(
    geom: &WaveguideGeometry,
    consts: &ModelConstants,
) -> Result<CoefficientSequence> {
    let n = geom.n() as i64;
    let mut f0 = Vec::with_capacity(geom.n());
    let mut f1 = Vec::with_capacity(geom.n());
    for k in 1..=n {
        let c = coupling_coeffs(geom, consts, k + 1)?;
        if c.alpha_kp1 == 0.0 || c.alpha_km1 == 0.0 {
            return Err(bad(k + 1, "closed iris decouples the chain"));
        }
        f0.push(ComplexScalar::new(c.alpha_km1 / c.alpha_kp1, 0.0));
        f1.push(ComplexScalar::new(-c.z / c.alpha_kp1, 0.0));
    }
    CoefficientSequence::new(1, f0, f1)
}

/// A geometry whose coefficients reproduce `coeffs_from_phase(profile)`.
///
/// Iris radii follow `a[k] = a_lead * u_bar[k]^(1/3)` so that the coupling
/// scales like the normalised coupling of the profile. All cells share one
/// radius, detuned from `b_star` so that the input lead's dispersion places
/// `phi_I` at the working frequency. Cell lengths equal `d_star`; the field
/// shape factors are taken as 1.
pub fn realize_phase_profile(
    profile: &PhaseProfile,
    consts: &ModelConstants,
    a_lead: f64,
    b_star: f64,
    d_star: f64,
    thickness: f64,
) -> Result<WaveguideGeometry> {
    if !(a_lead > 0.0 && a_lead.is_finite()) {
        return Err(bad(1, "lead iris radius must be positive"));
    }
    let u_lead = consts.alpha * a_lead.powi(3) / (b_star * b_star * d_star);
    let gap = 1.0 - profile.phi_in().cos();
    let bt2 = 0.5 * (1.0 + (1.0 + 8.0 * u_lead * gap).sqrt());
    let b = b_star * bt2.sqrt();
    let n = profile.n();
    let a = (1..=n as i64)
        .map(|k| a_lead * u_bar(profile, k).cbrt())
        .collect();
    WaveguideGeometry::new(
        a,
        vec![b; n],
        vec![d_star; n],
        vec![thickness; n],
        b_star,
        d_star,
        false,
    )
}
