//! The six subcommands, each producing one or more tables.

use hshift_core::constants::PICOMETER;
use hshift_core::hyperfine::{breit_rabi_closed_form, transition_frequency};
use hshift_core::kinetics::{
    integrate_kinetics, relaxation_time, steady_state_numeric, steady_state_sigma_as, Trajectory,
    G2S_EXPERIMENTAL_BOUND, TRAJECTORY_COLUMNS,
};
use hshift_core::pair::forbiddenness_check;
use hshift_core::pair::{drive_coupling, symmetrized_pair_state};
use hshift_core::shift::{
    ab_frequency_shift, ab_shift, bc_frequency_shift, bc_shift_slope, corrected_scattering_difference,
    experiment_reference, triplet_vertex, triplet_vertex_formula, wall_offset_from_a, wall_shift_coefficient,
    wall_shift_from_intercept, ScatteringConvention, BREAKDOWN_FIELDS, CORRECTED_DIFFERENCE,
};
use hshift_core::{eigensystem, Drive, Error, HyperfineState, KineticsParams, SurfaceDensities};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::table::{Cell, Table};
use crate::CliError;

/// A0 offset quoted for the residual a atoms, Hz.
pub const QUOTED_WALL_OFFSET_HZ: f64 = -420.0;

/// Runs the configured command.
pub fn run_command(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    Ok(match cfg.command {
        Command::Levels => vec![levels(cfg)?],
        Command::PairCheck => vec![pair_check(cfg)?],
        Command::Kinetics => kinetics(cfg)?,
        Command::Shift => vec![shift(cfg)?],
        Command::Sweep => vec![sweep(cfg)?],
        Command::Compare => vec![compare(cfg)?],
    })
}

fn levels(cfg: &RunConfig) -> Result<Table, Error> {
    use HyperfineState::*;
    let mut t = Table::new([
        "B_T",
        "theta_rad",
        "E_a_hz",
        "E_b_hz",
        "E_c_hz",
        "E_d_hz",
        "nu_ab_hz",
        "nu_bc_hz",
        "closed_form_rel_dev",
    ]);
    for b in cfg.level_fields() {
        let spec = eigensystem(&cfg.constants, b)?;
        let closed = breit_rabi_closed_form(&cfg.constants, b)?;
        let scale = closed.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let dev =
            HyperfineState::ALL.iter().map(|&s| (spec.energy(s) - closed[s.index()]).abs() / scale).fold(0.0, f64::max);
        let mut row: Vec<Cell> = vec![b.into(), spec.theta.into()];
        row.extend(HyperfineState::ALL.iter().map(|&s| Cell::from(spec.energy(s))));
        row.push(transition_frequency(&spec, A, B)?.into());
        row.push(transition_frequency(&spec, B, C)?.into());
        row.push(dev.into());
        t.push(row);
    }
    Ok(t)
}

fn pair_check(cfg: &RunConfig) -> Result<Table, Error> {
    use HyperfineState::*;
    let spec = eigensystem(&cfg.constants, cfg.field_b)?;
    let bb = symmetrized_pair_state(&spec, B, B);
    let bc = symmetrized_pair_state(&spec, B, C);
    let ab = symmetrized_pair_state(&spec, A, B);
    let mut t = Table::new([
        "B_T",
        "drive",
        "driven_norm",
        "singlet_projection_norm",
        "odd_F_projection_norm",
        "antisymmetric_projection_norm",
        "coupling_bb_to_bc",
        "coupling_bb_to_ab",
    ]);
    for drive in [Drive::Electron, Drive::Nuclear] {
        let r = forbiddenness_check(&spec, drive);
        t.push(vec![
            r.field.into(),
            drive.name().into(),
            r.driven_norm.into(),
            r.singlet_projection_norm.into(),
            r.odd_f_projection_norm.into(),
            r.antisymmetric_projection_norm.into(),
            drive_coupling(&bb, &bc, drive).norm().into(),
            drive_coupling(&bb, &ab, drive).norm().into(),
        ]);
    }
    Ok(t)
}

fn trajectory_table(tr: &Trajectory) -> Table {
    let mut t = Table::new(TRAJECTORY_COLUMNS);
    for pt in &tr.points {
        let d = pt.densities;
        t.push(vec![pt.time.into(), d.sigma_a.into(), d.sigma_b.into(), d.sigma_as.into(), d.sigma_bs.into()]);
    }
    t
}

fn kinetics(cfg: &RunConfig) -> Result<Vec<Table>, Error> {
    let p = &cfg.kinetics;
    let sigma_bs = cfg.run.sigma_bs;
    let analytic = steady_state_sigma_as(p, sigma_bs)?;
    let numeric = steady_state_numeric(p, sigma_bs)?;
    let tau = relaxation_time(p, sigma_bs)?;
    let t_end = cfg.run.t_end.unwrap_or(10.0 * tau);
    let start = SurfaceDensities::from_isotherm(p, sigma_bs, 0.0)?;
    let trajectory = integrate_kinetics(p, &start, t_end, cfg.run.tol)?;
    let integrated = trajectory.last().map(|pt| pt.densities.sigma_as).unwrap_or(0.0);
    let summary = Table::record([
        ("sigma_bs_cm-2", sigma_bs.into()),
        ("isotherm_ratio", p.isotherm_ratio()?.into()),
        ("alpha", p.isotherm_alpha()?.into()),
        ("kab_walls_cm2_s", p.kab_walls().into()),
        ("kabs_cm2_s", p.kabs().into()),
        ("slope", p.steady_state_slope()?.into()),
        ("intercept_cm-2", p.steady_state_intercept()?.into()),
        ("sigma_as_analytic_cm-2", analytic.into()),
        ("sigma_as_numeric_cm-2", numeric.into()),
        ("numeric_rel_deviation", ((numeric - analytic) / analytic).into()),
        ("relaxation_time_s", tau.into()),
        ("t_end_s", t_end.into()),
        ("sigma_as_integrated_cm-2", integrated.into()),
        ("integrated_rel_deviation", ((integrated - numeric) / numeric).into()),
    ]);
    let mut out = vec![summary];
    if cfg.run.trajectory {
        out.push(trajectory_table(&trajectory));
    }
    Ok(out)
}

fn shift(cfg: &RunConfig) -> Result<Table, Error> {
    let b = ab_shift(&cfg.shift_params(), &cfg.kinetics)?;
    Ok(Table::record(b.record().map(|(k, v)| (k, Cell::Num(v)))))
}

/// Columns every sweep row carries after the swept variable.
pub const SWEEP_COLUMNS: [&str; 5] =
    ["sigma_bs_cm-2", "sigma_as_analytic_cm-2", "sigma_as_numeric_cm-2", "delta_nu_bc_hz", "delta_nu_ab_hz"];

fn sweep_row(cfg: &RunConfig) -> Result<Vec<f64>, Error> {
    let k = &cfg.kinetics;
    let p = cfg.shift_params();
    let s = cfg.run.sigma_bs;
    let mut row = vec![
        s,
        steady_state_sigma_as(k, s)?,
        steady_state_numeric(k, s)?,
        bc_frequency_shift(&p, k, s)?,
        ab_frequency_shift(&p, k, s)?,
    ];
    row.extend(ab_shift(&p, k)?.values());
    Ok(row)
}

fn sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = cfg.sweep.as_ref().expect("sweep spec is checked at parse time");
    let grid = spec.scale.grid(spec.min, spec.max, spec.points);
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&x| {
            let mut point = cfg.clone();
            point.set_number(spec.var, x)?;
            let mut row = vec![x];
            row.extend(sweep_row(&point)?);
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new(std::iter::once(spec.var).chain(SWEEP_COLUMNS).chain(BREAKDOWN_FIELDS));
    for r in rows {
        t.push(r.into_iter().map(Cell::Num).collect());
    }
    Ok(t)
}

fn compare(cfg: &RunConfig) -> Result<Table, Error> {
    let reference = experiment_reference();
    let p = cfg.shift_params();
    let k = &cfg.kinetics;
    let b = ab_shift(&p, k)?;
    let r = cfg.constants.gyromagnetic_ratio();
    let a0 = wall_shift_from_intercept(&cfg.constants, reference.c0.value);
    let a0_sigma = 2.0 * reference.c0.sigma / (1.0 + r);
    let a0_gap = (a0 - reference.wall_shift_4he.value).abs();
    let a0_band = 2.0 * (reference.wall_shift_4he.sigma.powi(2) + a0_sigma.powi(2)).sqrt();
    let corrected = corrected_scattering_difference(
        reference.reported_scattering_difference,
        ScatteringConvention::DistinguishableG2One,
    )?;
    let at_30 = wall_offset_from_a(&p.with_scattering_difference(CORRECTED_DIFFERENCE), k)?;
    let at_60 = wall_offset_from_a(&p.with_scattering_difference(reference.reported_scattering_difference.value), k)?;
    let bound = KineticsParams { g2s: G2S_EXPERIMENTAL_BOUND, ..*k };
    let b_bound = ab_shift(&p, &bound)?;

    let mut rows: Vec<(&str, Cell)> = vec![
        ("C0_hz", reference.c0.value.into()),
        ("C1_hz_cm2", p.c1.into()),
        ("C1_sigma_hz_cm2", reference.c1.sigma.into()),
    ];
    rows.extend(b.record().map(|(name, v)| (name, Cell::Num(v))));
    rows.extend([
        ("ratio_to_C1_sigma", (b.ratio_to_experiment * reference.c1.sigma / reference.c1.value).into()),
        ("total_slope_G2s_bound_hz_cm2", b_bound.total_slope.into()),
        ("ratio_to_C1_G2s_bound", b_bound.ratio_to_experiment.into()),
        ("bc_slope_hz_cm2", bc_shift_slope(&p, k)?.into()),
        ("wall_shift_coefficient_cm2", wall_shift_coefficient(&p).into()),
        ("vertex_used_K_cm2", triplet_vertex(&p).into()),
        ("vertex_formula_K_cm2", triplet_vertex_formula(&p).into()),
        ("wall_offset_30pm_hz", at_30.into()),
        ("wall_offset_60pm_hz", at_60.into()),
        ("wall_offset_quoted_hz", QUOTED_WALL_OFFSET_HZ.into()),
        ("scattering_difference_corrected_pm", (corrected.value / PICOMETER).into()),
        ("scattering_difference_corrected_sigma_pm", (corrected.sigma / PICOMETER).into()),
        ("A0_from_C0_hz", a0.into()),
        ("A0_from_C0_sigma_hz", a0_sigma.into()),
        ("A0_4He_hz", reference.wall_shift_4he.value.into()),
        ("A0_4He_sigma_hz", reference.wall_shift_4he.sigma.into()),
        ("A0_consistent_2sigma", if a0_gap <= a0_band { "true" } else { "false" }.into()),
        ("isotherm_ratio", k.isotherm_ratio()?.into()),
        ("alpha", k.isotherm_alpha()?.into()),
        ("kab_walls_cm2_s", k.kab_walls().into()),
        ("kabs_cm2_s", k.kabs().into()),
        ("kabs_law_cm2_s", (k.kab_prefactor * k.t_spot.powf(1.5)).into()),
        ("sigma_as_slope", k.steady_state_slope()?.into()),
        ("sigma_as_intercept_cm-2", k.steady_state_intercept()?.into()),
    ]);
    Ok(Table::record(rows))
}
