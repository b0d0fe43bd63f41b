//! Property tests for the algebraic invariants of the solvers.

use proptest::prelude::*;
use wkbchain::closed_form::wkb_product;
use wkbchain::dlw::{
    coeffs_from_phase, coeffs_from_phase_cosine_form, linear_ramp_profile, u_bar_weights,
    PhaseProfile,
};
use wkbchain::experiment::phase_shift_series;
use wkbchain::recurrence::{
    assign_branches, direct_scatter_solve, flux_series, Branch, CoefficientSequence,
    ScatterBoundary,
};
use wkbchain::scattering::{cascade, cell_smatrix, cumulative_scatter, scatter};
use wkbchain::wave_split::{
    build_transfer_general, propagate, split_from_solution, transfer_exact, transfer_wkb_riccati,
    GaugeSequences, SplitState, TransferSequence, TransferVariant, TwoByTwoComplex,
};
use wkbchain::{ComplexScalar, Indexed};

fn complex(bound: f64) -> impl Strategy<Value = ComplexScalar> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| ComplexScalar::new(re, im))
}

fn matrix() -> impl Strategy<Value = TwoByTwoComplex> {
    (complex(2.0), complex(2.0), complex(2.0), complex(2.0))
        .prop_filter("T22 bounded away from zero", |(_, _, _, d)| d.norm() > 0.2)
        .prop_map(|(a, b, c, d)| TwoByTwoComplex::new(a, b, c, d))
}

/// Passband ramp: (phi_I, phi_II, N_h, ramp length).
fn ramp() -> impl Strategy<Value = (f64, f64, usize, usize)> {
    (0.3f64..2.8, 0.3f64..2.8, 3usize..15, 5usize..60)
}

fn max_norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_satisfy_vieta(f0 in complex(3.0), f1 in complex(3.0)) {
        prop_assume!(f0.norm() > 1e-3);
        prop_assume!((f1 * f1 - 4.0 * f0).norm() > 1e-6);
        let seq = CoefficientSequence::new(0, vec![f0], vec![f1]).unwrap();
        let roots = assign_branches(&seq).unwrap();
        let (a, b) = (roots.rho1(0), roots.rho2(0));
        let scale = 1.0 + f0.norm() + f1.norm();
        prop_assert!((a + b + f1).norm() < 1e-12 * scale);
        prop_assert!((a * b - f0).norm() < 1e-12 * scale);
    }

    #[test]
    fn star_product_is_associative(a in matrix(), b in matrix(), c in matrix()) {
        let s = |m: &TwoByTwoComplex| cell_smatrix(m, ComplexScalar::new(0.0, 0.0), 0).unwrap().s;
        let (sa, sb, sc) = (s(&a), s(&b), s(&c));
        let left = cascade(&sa, &sb, 1).and_then(|ab| cascade(&ab, &sc, 2));
        let right = cascade(&sb, &sc, 2).and_then(|bc| cascade(&sa, &bc, 1));
        if let (Ok(l), Ok(r)) = (left, right) {
            let scale = [l.m11, l.m12, l.m21, l.m22].iter().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(l.max_abs_diff(&r) < 1e-9 * scale);
        }
    }

    #[test]
    fn diagonal_chains_never_reflect(d in prop::collection::vec((complex(2.0), complex(2.0)), 1..40)) {
        let mats: Vec<_> = d
            .iter()
            .map(|&(a, b)| TwoByTwoComplex::diagonal(a, if b.norm() < 0.1 { b + 1.0 } else { b }))
            .collect();
        let t = TransferSequence::from_matrices(TransferVariant::WkbRiccati, 1, mats).unwrap();
        let cums = cumulative_scatter(&t).unwrap();
        for (_, s) in cums.per_cell.iter() {
            prop_assert_eq!(s.m11, ComplexScalar::new(0.0, 0.0));
        }
    }

    #[test]
    fn any_gauge_reproduces_the_recurrence(
        f in prop::collection::vec((complex(1.5), complex(1.5), complex(0.5)), 20),
        g in prop::collection::vec((complex(1.5), complex(1.5)), 21),
        y0 in complex(1.0),
        y1 in complex(1.0),
    ) {
        let f0: Vec<_> = f.iter().map(|t| if t.0.norm() < 0.2 { t.0 + 1.0 } else { t.0 }).collect();
        let f1: Vec<_> = f.iter().map(|t| t.1).collect();
        let forcing: Vec<_> = f.iter().map(|t| t.2).collect();
        let seq = CoefficientSequence::new(0, f0, f1).unwrap().with_forcing(forcing).unwrap();
        let g2: Vec<_> = g.iter().map(|&(a, b)| if (a - b).norm() < 0.3 { b + 1.0 } else { b }).collect();
        let gauge = GaugeSequences::new(0, g.iter().map(|t| t.0).collect(), g2).unwrap();
        let transfers = build_transfer_general(&seq, &gauge).unwrap();
        let start = split_from_solution(y0, y1, &gauge, 0).unwrap();
        let states = propagate(&transfers, start, 0).unwrap();
        let reference = seq.iterate(y0, y1);
        let scale = max_norm(reference.values()).max(1.0);
        for (k, s) in states.iter() {
            prop_assert!((s.total() - reference[k]).norm() < 1e-10 * scale, "cell {}", k);
        }
    }

    #[test]
    fn coefficient_forms_agree(phi in prop::collection::vec(0.05f64..3.09, 3..50)) {
        let p = PhaseProfile::new(phi).unwrap();
        let (a, b) = (coeffs_from_phase(&p).unwrap(), coeffs_from_phase_cosine_form(&p).unwrap());
        for k in a.k_min()..=a.k_max() {
            prop_assert!((a.f0(k) - b.f0(k)).norm() <= 1e-14 * a.f0(k).norm().max(1.0));
            prop_assert!((a.f1(k) - b.f1(k)).norm() <= 1e-14 * a.f1(k).norm().max(1.0));
        }
    }

    #[test]
    fn passband_roots_are_conjugate_with_modulus_sqrt_f0((pi, pii, nh, len) in ramp()) {
        let p = linear_ramp_profile(pi, pii, nh, 2 * nh + len).unwrap();
        let seq = coeffs_from_phase(&p).unwrap();
        let roots = assign_branches(&seq).unwrap();
        for k in seq.k_min()..=seq.k_max() {
            let (a, b) = (roots.rho1(k), roots.rho2(k));
            prop_assert!((a - b.conj()).norm() < 1e-12);
            prop_assert!((a.norm_sqr() - seq.f0(k).re).abs() < 1e-12 * seq.f0(k).re);
        }
    }

    #[test]
    fn exact_solution_conserves_flux((pi, pii, nh, len) in ramp()) {
        let n = 2 * nh + len;
        let p = linear_ramp_profile(pi, pii, nh, n).unwrap();
        let seq = coeffs_from_phase(&p).unwrap();
        let sol = direct_scatter_solve(&seq, &ScatterBoundary::new(pi, pii)).unwrap();
        let flux = flux_series(&sol.y, &u_bar_weights(&p, 2, n as i64 + 1)).unwrap();
        let p0 = flux[1];
        for (_, v) in flux.iter() {
            prop_assert!((v - p0).abs() < 1e-9 * p0.abs());
        }
        // Incident minus reflected flux leaves as transmitted flux.
        let ubar_out = u_bar_weights(&p, n as i64, n as i64)[n as i64];
        let lhs = (1.0 - sol.r.norm_sqr()) * pi.sin();
        let rhs = sol.t.norm_sqr() * ubar_out * pii.sin();
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(rhs.abs()));
    }

    #[test]
    fn smatrix_pipeline_matches_direct_solve((pi, pii, nh, len) in ramp()) {
        let p = linear_ramp_profile(pi, pii, nh, 2 * nh + len).unwrap();
        let seq = coeffs_from_phase(&p).unwrap();
        let roots = assign_branches(&seq).unwrap();
        let sol = scatter(&transfer_exact(&roots).unwrap()).unwrap();
        let oracle = direct_scatter_solve(&seq, &ScatterBoundary::new(pi, pii)).unwrap();
        let scale = max_norm(oracle.y.values());
        prop_assert!((sol.r - oracle.r).norm() < 1e-9 * scale);
        prop_assert!((sol.t - oracle.t).norm() < 1e-9 * scale);
        for (k, y) in sol.y.iter() {
            prop_assert!((y - oracle.y[k]).norm() < 1e-9 * scale, "cell {}", k);
        }
    }

    #[test]
    fn product_form_is_diagonal_propagation((pi, pii, nh, len) in ramp()) {
        let p = linear_ramp_profile(pi, pii, nh, 2 * nh + len).unwrap();
        let seq = coeffs_from_phase(&p).unwrap();
        let roots = assign_branches(&seq).unwrap();
        let t = transfer_wkb_riccati(&roots).unwrap();
        let one = ComplexScalar::new(1.0, 0.0);
        let states = propagate(&t, SplitState::new(one, one), seq.k_min()).unwrap();
        let f = wkb_product(&roots, Branch::First, seq.k_min(), seq.k_max(), one).unwrap();
        let b = wkb_product(&roots, Branch::Second, seq.k_min(), seq.k_max(), one).unwrap();
        for (k, s) in states.iter() {
            prop_assert!((s.y1 - f.values[k]).norm() < 1e-12 * s.y1.norm().max(1.0));
            prop_assert!((s.y2 - b.values[k]).norm() < 1e-12 * s.y2.norm().max(1.0));
        }
    }

    #[test]
    fn phase_shift_is_odd_under_conjugation(v in prop::collection::vec(complex(2.0), 2..30)) {
        prop_assume!(v.iter().all(|z| z.norm() > 1e-3));
        let y = Indexed::new(1, v);
        let s = phase_shift_series(&y).unwrap();
        let c = phase_shift_series(&y.map(|z| z.conj())).unwrap();
        for (k, x) in s.iter() {
            // The wrap to (-pi, pi] maps -pi to pi, so compare modulo 2 pi.
            let d = (x + c[k]).rem_euclid(2.0 * std::f64::consts::PI);
            prop_assert!(d < 1e-12 || (2.0 * std::f64::consts::PI - d) < 1e-12);
        }
    }
}
