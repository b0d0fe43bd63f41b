use super::{ExperimentConfig, ExperimentError, Method};
use crate::closed_form::{delta_p_estimate, wkb_expsum_direct, wkb_expsum_riccati};
use crate::dlw::{coeffs_from_phase, linear_ramp_profile, u_bar_weights, PhaseProfile};
use crate::recurrence::{
    assign_branches, direct_scatter_solve, flux_series, Branch, CoefficientSequence,
    RootPairSequence, ScatterBoundary,
};
use crate::scattering::scatter;
use crate::wave_split::{transfer_exact, transfer_wkb_direct, transfer_wkb_riccati};
use crate::{ComplexScalar, Error, Indexed, Result};
use std::f64::consts::PI;

/// One method's answer: reflection, transmission and the total field over
/// `[1, N + 1]` (the extra cell carries the last phase increment).
#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    pub method: Method,
    pub r: ComplexScalar,
    pub t: ComplexScalar,
    pub y: Indexed<ComplexScalar>,
    /// `|y[k]|` over `[1, N]`.
    pub abs_y: Indexed<f64>,
    /// Continuously unwrapped phase over `[1, N]`, zero at cell 1.
    pub arg_y: Indexed<f64>,
    /// `arg y[k+1] - arg y[k]` in `(-pi, pi]` over `[1, N]`.
    pub phase_shift: Indexed<f64>,
}

/// Deviation of a method from the exact baseline over `[1, N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodDeviation {
    pub method: Method,
    /// `|y[k]| - |y_exact[k]|`.
    pub d_abs: Indexed<f64>,
    /// Phase-shift difference, wrapped to `(-pi, pi]`.
    pub d_phase: Indexed<f64>,
}

/// Phase of the Riccati-gauge WKB field relative to the direct WKB field.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGap {
    /// `arg(y_riccati[k] / y_direct[k])` over `[1, N]`.
    pub series: Indexed<f64>,
    /// The gap at the last cell.
    pub at_end: f64,
    /// Continuum prediction `-(phi_II - phi_I) / 2`.
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub config: ExperimentConfig,
    /// Results in [`Method`] order.
    pub methods: Vec<MethodResult>,
    /// Deviations of every non-baseline method; empty without the exact method.
    pub deviations: Vec<MethodDeviation>,
    pub phase_gap: Option<PhaseGap>,
    /// Weighted flux `u_bar[k+1] Im(conj(y[k]) y[k+1])` of the exact field.
    pub flux: Option<Indexed<f64>>,
    /// `max |P[k] - P[1]| / |P[1]|`.
    pub flux_defect: Option<f64>,
}

impl ComparisonReport {
    pub fn method(&self, m: Method) -> Option<&MethodResult> {
        self.methods.iter().find(|r| r.method == m)
    }
}

/// Wraps to `(-pi, pi]`.
fn wrap(x: f64) -> f64 {
    let w = x.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Phase of `a / b` in `(-pi, pi]`.
fn relative_phase(a: ComplexScalar, b: ComplexScalar) -> f64 {
    let p = (a * b.conj()).arg();
    if p == -PI {
        PI
    } else {
        p
    }
}

/// Per-cell phase increment `arg y[k+1] - arg y[k]`, over `[start, end - 1]`.
pub fn phase_shift_series(values: &Indexed<ComplexScalar>) -> Result<Indexed<f64>> {
    if values.len() < 2 {
        return Err(Error::WindowTooSmall { len: values.len() });
    }
    if let Some((k, _)) = values.iter().find(|(_, v)| v.norm() == 0.0) {
        return Err(Error::ZeroAmplitude { k });
    }
    Ok(Indexed::from_fn(values.start(), values.end() - 1, |k| {
        relative_phase(values[k + 1], values[k])
    }))
}

fn method_result(
    method: Method,
    r: ComplexScalar,
    t: ComplexScalar,
    y: Indexed<ComplexScalar>,
    n: i64,
) -> Result<MethodResult> {
    let phase_shift = phase_shift_series(&y)?;
    let abs_y = Indexed::from_fn(1, n, |k| y[k].norm());
    let mut acc = 0.0;
    let arg_y = Indexed::from_fn(1, n, |k| {
        let v = acc;
        acc += phase_shift[k];
        v
    });
    Ok(MethodResult {
        method,
        r,
        t,
        y,
        abs_y,
        arg_y,
        phase_shift,
    })
}

struct Chain {
    profile: PhaseProfile,
    seq: CoefficientSequence,
    roots: RootPairSequence,
}

fn solve_method(method: Method, chain: &Chain) -> Result<MethodResult> {
    let n = chain.seq.k_max();
    let roots = &chain.roots;
    let one = ComplexScalar::new(1.0, 0.0);
    let (r, t, y) = match method {
        Method::Exact | Method::WkbRiccati | Method::WkbDirect => {
            let transfers = match method {
                Method::Exact => transfer_exact(roots)?,
                Method::WkbRiccati => transfer_wkb_riccati(roots)?,
                _ => transfer_wkb_direct(roots)?,
            };
            let sol = scatter(&transfers)?;
            // The split at the last cell fixes the field one cell further.
            let next = roots.rho1(n) * sol.y1[n] + roots.rho2(n) * sol.y2[n];
            let mut y = sol.y.into_values();
            y.push(next);
            (sol.r, sol.t, Indexed::new(1, y))
        }
        Method::ClosedRiccati | Method::ClosedDirect => {
            // Unit incidence and no reflection: the forward wave starts at 1.
            let cf = if method == Method::ClosedRiccati {
                wkb_expsum_riccati(&chain.seq, roots, Branch::First, 1, n, one)?
            } else {
                wkb_expsum_direct(&chain.seq, roots, Branch::First, 1, n, one)?
            };
            let last = cf.values[n];
            let mut y = cf.values.into_values();
            y.push(roots.rho1(n) * last);
            (ComplexScalar::new(0.0, 0.0), last, Indexed::new(1, y))
        }
        Method::Oracle => {
            let boundary = ScatterBoundary::new(chain.profile.phi_in(), chain.profile.phi_out());
            let sol = direct_scatter_solve(&chain.seq, &boundary)?;
            (sol.r, sol.t, sol.y)
        }
    };
    method_result(method, r, t, y, n)
}

/// Builds the ramp chain and runs every selected method.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ComparisonReport, ExperimentError> {
    config.validate()?;
    let profile = linear_ramp_profile(config.phi_i, config.phi_ii, config.n_h, config.n)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let seq = coeffs_from_phase(&profile).map_err(ExperimentError::numerical("coefficients"))?;
    let roots =
        assign_branches(&seq).map_err(ExperimentError::numerical("characteristic roots"))?;
    let chain = Chain {
        profile,
        seq,
        roots,
    };

    // Methods are independent; each runs on its own thread.
    let outcomes: Vec<(Method, Result<MethodResult>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .methods
            .iter()
            .map(|&m| {
                (m, {
                    let chain = &chain;
                    scope.spawn(move || solve_method(m, chain))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|(m, h)| (m, h.join().expect("method thread panicked")))
            .collect()
    });
    let mut methods = Vec::with_capacity(outcomes.len());
    for (m, outcome) in outcomes {
        methods.push(outcome.map_err(ExperimentError::numerical(m.name()))?);
    }
    compare_methods(config, &chain.profile, methods)
}

/// Assembles deviations, the WKB phase gap and the flux check.
///
/// Deviations need the exact method; asking for them without it is
/// [`Error::MissingBaseline`]. An empty method list yields an empty report.
pub fn compare_methods(
    config: &ExperimentConfig,
    profile: &PhaseProfile,
    methods: Vec<MethodResult>,
) -> Result<ComparisonReport, ExperimentError> {
    let n = config.n as i64;
    let exact = methods.iter().find(|m| m.method == Method::Exact);
    if exact.is_none() && methods.len() > 1 {
        return Err(ExperimentError::numerical("comparison")(
            Error::MissingBaseline,
        ));
    }
    let deviations = match exact {
        Some(base) => methods
            .iter()
            .filter(|m| m.method != Method::Exact)
            .map(|m| MethodDeviation {
                method: m.method,
                d_abs: Indexed::from_fn(1, n, |k| m.abs_y[k] - base.abs_y[k]),
                d_phase: Indexed::from_fn(1, n, |k| wrap(m.phase_shift[k] - base.phase_shift[k])),
            })
            .collect(),
        None => Vec::new(),
    };

    let find = |m: Method| methods.iter().find(|r| r.method == m);
    let phase_gap = match (find(Method::WkbRiccati), find(Method::WkbDirect)) {
        (Some(a), Some(b)) => {
            let series = Indexed::from_fn(1, n, |k| relative_phase(a.y[k], b.y[k]));
            Some(PhaseGap {
                at_end: series[n],
                series,
                predicted: delta_p_estimate(config.phi_i, config.phi_ii).im,
            })
        }
        _ => None,
    };

    let (flux, flux_defect) = match exact.or_else(|| find(Method::Oracle)) {
        Some(base) => {
            let weights = u_bar_weights(profile, 2, n + 1);
            let p = flux_series(&base.y, &weights).map_err(ExperimentError::numerical("flux"))?;
            let p0 = p[1];
            let defect = p
                .values()
                .iter()
                .map(|v| (v - p0).abs())
                .fold(0.0, f64::max)
                / p0.abs();
            (Some(p), Some(defect))
        }
        None => (None, None),
    };

    Ok(ComparisonReport {
        config: config.clone(),
        methods,
        deviations,
        phase_gap,
        flux,
        flux_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(methods: &[Method]) -> ExperimentConfig {
        ExperimentConfig {
            phi_i: PI / 3.0,
            phi_ii: 2.0 * PI / 3.0,
            n: 60,
            n_h: 20,
            methods: methods.iter().copied().collect(),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn phase_shift_of_plane_wave_is_constant() {
        let phi = 0.7;
        let y = Indexed::from_fn(1, 10, |k| ComplexScalar::from_polar(2.0, phi * k as f64));
        let s = phase_shift_series(&y).unwrap();
        assert_eq!((s.start(), s.end()), (1, 9));
        assert!(s.values().iter().all(|v| (v - phi).abs() < 1e-14));
        let conj = y.map(|v| v.conj());
        let sc = phase_shift_series(&conj).unwrap();
        for k in 1..=9 {
            assert!((sc[k] + s[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn phase_shift_rejects_zeros_and_short_windows() {
        let y = Indexed::new(
            3,
            vec![ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.0, 0.0)],
        );
        assert!(matches!(
            phase_shift_series(&y),
            Err(Error::ZeroAmplitude { k: 4 })
        ));
        let y = Indexed::new(1, vec![ComplexScalar::new(1.0, 0.0)]);
        assert!(matches!(
            phase_shift_series(&y),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn phase_shift_is_wrapped() {
        let y = Indexed::new(
            0,
            vec![ComplexScalar::new(1.0, 0.0), ComplexScalar::new(-1.0, 0.0)],
        );
        assert_eq!(phase_shift_series(&y).unwrap()[0], PI);
        assert_eq!(wrap(-PI), PI);
        assert!((wrap(3.0 * PI + 0.1) - (-PI + 0.1)).abs() < 1e-12);
    }

    #[test]
    fn exact_against_itself_has_zero_deviation() {
        let cfg = small_config(&[Method::Exact]);
        let report = run_experiment(&cfg).unwrap();
        let exact = report.method(Method::Exact).unwrap().clone();
        let mut twin = exact.clone();
        twin.method = Method::Oracle;
        let profile = linear_ramp_profile(cfg.phi_i, cfg.phi_ii, cfg.n_h, cfg.n).unwrap();
        let r = compare_methods(&cfg, &profile, vec![exact, twin]).unwrap();
        assert_eq!(r.deviations.len(), 1);
        assert!(r.deviations[0].d_abs.values().iter().all(|&v| v == 0.0));
        assert!(r.deviations[0].d_phase.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn missing_baseline_is_an_error() {
        let cfg = small_config(&[Method::WkbRiccati, Method::WkbDirect]);
        let err = run_experiment(&cfg).unwrap_err();
        assert!(matches!(
            err,
            ExperimentError::Numerical {
                source: Error::MissingBaseline,
                ..
            }
        ));
    }

    #[test]
    fn all_methods_share_the_window_and_anchor() {
        let report = run_experiment(&small_config(&Method::ALL)).unwrap();
        assert_eq!(report.methods.len(), 6);
        for m in &report.methods {
            assert_eq!((m.y.start(), m.y.end()), (1, 61), "{}", m.method);
            assert_eq!((m.abs_y.start(), m.abs_y.end()), (1, 60));
            assert_eq!((m.phase_shift.start(), m.phase_shift.end()), (1, 60));
            assert_eq!(m.arg_y[1], 0.0);
        }
        assert_eq!(report.deviations.len(), 5);
        assert!(report.phase_gap.is_some());
        assert!(report.flux_defect.unwrap() < 1e-9);
    }

    #[test]
    fn wkb_matrix_methods_do_not_reflect() {
        let report = run_experiment(&small_config(&[
            Method::Exact,
            Method::WkbRiccati,
            Method::WkbDirect,
        ]))
        .unwrap();
        assert_eq!(
            report.method(Method::WkbRiccati).unwrap().r,
            ComplexScalar::new(0.0, 0.0)
        );
        assert_eq!(
            report.method(Method::WkbDirect).unwrap().r,
            ComplexScalar::new(0.0, 0.0)
        );
    }

    #[test]
    fn band_edge_config_fails_validation() {
        let mut cfg = small_config(&[Method::Exact]);
        cfg.phi_i = 0.0;
        assert_eq!(run_experiment(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn empty_method_set_gives_empty_report() {
        let report = run_experiment(&small_config(&[])).unwrap();
        assert!(report.methods.is_empty() && report.deviations.is_empty());
        assert!(report.phase_gap.is_none() && report.flux.is_none());
    }
}
