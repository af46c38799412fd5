use hshift_core::hyperfine::{
    breit_rabi_closed_form, cd_crossing_field, eigensystem, mixing_angle, transition_frequency,
};
use hshift_core::kinetics::{integrate_kinetics, relaxation_time, steady_state_numeric, steady_state_sigma_as};
use hshift_core::pair::{
    collective_operator, commutator_norm, expectation_value, forbiddenness_check, pair_basis_state, pair_hamiltonian,
    symmetrized_pair_state,
};
use hshift_core::shift::{
    ab_shift, contact_shift_bc, interaction_energy, wall_offset_from_a, wall_shift_relative_change,
};
use hshift_core::{
    default_constants, Drive, HyperfineState, KineticsParams, OperatorKind, ShiftParams, SurfaceDensities,
};
use proptest::prelude::*;

use HyperfineState::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

#[test]
fn numeric_levels_match_breit_rabi_on_log_grid() {
    let c = default_constants();
    for b in log_grid(1e-6, 30.0, 100) {
        let spec = eigensystem(&c, b).unwrap();
        let closed = breit_rabi_closed_form(&c, b).unwrap();
        let scale = closed.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        for state in HyperfineState::ALL {
            let diff = (spec.energy(state) - closed[state.index()]).abs() / scale;
            assert!(diff <= 1e-9, "B={b} state {state}: {diff}");
        }
        assert!(spec.unitarity_residual() <= 1e-12, "B={b}");
        assert!((spec.theta_from_eigenvectors() - spec.theta).abs() <= 1e-10, "B={b}");
    }
}

#[test]
fn energy_order_holds_below_crossing() {
    let c = default_constants();
    let bx = cd_crossing_field(&c);
    for b in log_grid(1e-6, 0.99 * bx, 60) {
        let e = eigensystem(&c, b).unwrap().energies;
        assert!(e.windows(2).all(|w| w[0] < w[1]), "B={b}: {e:?}");
    }
}

#[test]
fn mixing_angle_decreases_with_field() {
    let c = default_constants();
    let grid: Vec<f64> = std::iter::once(0.0).chain(log_grid(1e-6, 100.0, 200)).collect();
    let thetas: Vec<f64> = grid.iter().map(|&b| mixing_angle(&c, b).unwrap()).collect();
    assert_eq!(thetas[0], std::f64::consts::FRAC_PI_4);
    assert!(thetas.windows(2).all(|w| w[1] < w[0]));
    assert!(thetas.iter().all(|&t| t > 0.0 && t <= std::f64::consts::FRAC_PI_4));
}

#[test]
fn unmixed_levels_are_linear_in_field() {
    let c = default_constants();
    // Step ≥ 10 T: rounding of ~1e11 Hz energies is ~1e-5 Hz.
    for state in [B, D] {
        let e: Vec<f64> = [0.0, 10.0, 20.0, 30.0].iter().map(|&b| eigensystem(&c, b).unwrap().energy(state)).collect();
        for w in e.windows(3) {
            let second = (w[2] - 2.0 * w[1] + w[0]) / 100.0;
            assert!(second.abs() <= 1e-6, "{state}: {second}");
        }
    }
}

#[test]
fn working_transition_window() {
    let c = default_constants();
    let nu = transition_frequency(&eigensystem(&c, 4.6).unwrap(), A, B).unwrap();
    assert!((0.90e9..=0.92e9).contains(&nu));
}

#[test]
fn selection_rule_across_fields() {
    let s2 = collective_operator(OperatorKind::ElectronSpinSquared);
    let i2 = collective_operator(OperatorKind::NuclearSpinSquared);
    let swap = collective_operator(OperatorKind::Swap).matrix;
    let c = default_constants();
    for b in [0.0, 0.1, 1.0, 4.6, 10.0] {
        let spec = eigensystem(&c, b).unwrap();
        for drive in [Drive::Electron, Drive::Nuclear] {
            let r = forbiddenness_check(&spec, drive);
            assert!(r.singlet_projection_norm <= 1e-13, "B={b} {drive:?}");
            assert!(r.antisymmetric_projection_norm <= 1e-13, "B={b} {drive:?}");
            let op = collective_operator(drive.operator_kind()).matrix;
            assert!(commutator_norm(&op, &swap) <= 1e-13);
        }
        let h = pair_hamiltonian(&spec);
        let scale = h.map(|z| z.norm()).max();
        assert!(commutator_norm(&h, &swap) / scale <= 1e-13);

        let states =
            [pair_basis_state(&spec, B, B), symmetrized_pair_state(&spec, B, C), symmetrized_pair_state(&spec, A, B)];
        for st in &states {
            assert!((expectation_value(st, &s2) - 2.0).abs() <= 1e-10, "B={b} {}", st.label);
            assert!((expectation_value(st, &i2) - 2.0).abs() <= 1e-10, "B={b} {}", st.label);
        }
    }
}

proptest! {
    #[test]
    fn expectation_ignores_global_phase(phase in -10.0f64..10.0, field in 0.0f64..20.0, kind in 0usize..8) {
        let spec = eigensystem(&default_constants(), field).unwrap();
        let state = symmetrized_pair_state(&spec, B, C);
        let op = collective_operator(OperatorKind::ALL[kind]);
        let a = expectation_value(&state, &op);
        let b = expectation_value(&state.with_phase(phase), &op);
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn numeric_steady_state_is_monotone_in_sources(
        which in 0usize..4,
        bump in 1.01f64..10.0,
        sigma_bs in 1e10f64..1e14,
    ) {
        let base = KineticsParams { phi_a: 1e6, ..KineticsParams::default() };
        let mut more = base;
        match which {
            0 => more.g1 *= bump,
            1 => more.g1s *= bump,
            2 => more.g2s *= bump,
            _ => more.phi_a *= bump,
        }
        let lo = steady_state_numeric(&base, sigma_bs).unwrap();
        let hi = steady_state_numeric(&more, sigma_bs).unwrap();
        prop_assert!(lo >= 0.0);
        prop_assert!(hi >= lo * (1.0 - 1e-9));
    }

    #[test]
    fn shifts_scale_linearly_with_g2(g2 in 0.0f64..=2.0, sigma in 1e10f64..1e14) {
        let p = ShiftParams::default();
        let scaled = ShiftParams { g2, ..p };
        let unit = ShiftParams { g2: 1.0, ..p };
        let e = interaction_energy(&scaled, sigma).unwrap();
        let e1 = interaction_energy(&unit, sigma).unwrap();
        prop_assert!((e - g2 * e1).abs() <= 1e-12 * e1.abs());
        let w = ab_shift(&scaled, &KineticsParams::default()).unwrap().wall_term_slope;
        let w1 = ab_shift(&unit, &KineticsParams::default()).unwrap().wall_term_slope;
        prop_assert!((w - g2 * w1).abs() <= 1e-12 * w1.abs());
    }
}

#[test]
fn steady_state_is_affine_in_spot_density() {
    let p = KineticsParams::default();
    let xs = log_grid(1e11, 1e13, 50);
    let ys: Vec<f64> = xs.iter().map(|&x| steady_state_sigma_as(&p, x).unwrap()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    for (x, y) in xs.iter().zip(&ys) {
        assert!(((intercept + slope * x - y) / y).abs() <= 1e-12);
    }
}

#[test]
fn intercept_window_over_alpha_range() {
    for alpha in [0.008, 0.01, 0.05, 0.1] {
        let p = KineticsParams::default();
        let ratio = p.isotherm_ratio().unwrap();
        let p = KineticsParams { wall_area: alpha * p.spot_area * ratio, ..p };
        let intercept = p.steady_state_intercept().unwrap();
        assert!((1.9e9..=2.3e9).contains(&intercept), "alpha={alpha}: {intercept}");
    }
}

#[test]
fn integrator_converges_within_ten_tolerances() {
    let p = KineticsParams::default();
    for (sigma_bs, tol) in [(1e11, 1e-5), (1e12, 1e-4), (1e13, 1e-5)] {
        let target = steady_state_numeric(&p, sigma_bs).unwrap();
        let tau = relaxation_time(&p, sigma_bs).unwrap();
        let start = SurfaceDensities::from_isotherm(&p, sigma_bs, 0.0).unwrap();
        let end = integrate_kinetics(&p, &start, 10.0 * tau, tol).unwrap();
        let last = end.last().unwrap().densities.sigma_as;
        assert!(((last - target) / target).abs() <= 10.0 * tol, "σ_bs={sigma_bs}: {last} vs {target}");
    }
}

#[test]
fn shift_operations_are_linear_in_density() {
    let p = ShiftParams::default();
    for sigma in [1e11, 1e12, 1e13] {
        let one = contact_shift_bc(&p, sigma).unwrap();
        let ten = contact_shift_bc(&p, 10.0 * sigma).unwrap();
        assert!(((ten - 10.0 * one) / ten).abs() <= 1e-12);
        let one = wall_shift_relative_change(&p, sigma).unwrap();
        let ten = wall_shift_relative_change(&p, 10.0 * sigma).unwrap();
        assert!(((ten - 10.0 * one) / ten).abs() <= 1e-12);
    }
}

#[test]
fn sign_structure_with_defaults() {
    let p = ShiftParams::default();
    let k = KineticsParams::default();
    assert!(contact_shift_bc(&p, 1e12).unwrap() < 0.0);
    assert!(wall_offset_from_a(&p, &k).unwrap() < 0.0);
    let b = ab_shift(&p, &k).unwrap();
    assert!(b.pressure_term_slope > 0.0 && b.wall_term_slope > 0.0);
    assert!(p.c1 > 0.0);
    assert!((0.20..=0.35).contains(&b.ratio_to_experiment));
}

#[test]
fn swapping_scattering_lengths_flips_sign() {
    let p = ShiftParams::default();
    let k = KineticsParams::default();
    let swapped = ShiftParams { a_t: p.a_s, a_s: p.a_t, ..p };
    assert_eq!(contact_shift_bc(&swapped, 1e12).unwrap(), -contact_shift_bc(&p, 1e12).unwrap());
    assert_eq!(wall_offset_from_a(&swapped, &k).unwrap(), -wall_offset_from_a(&p, &k).unwrap());
}
