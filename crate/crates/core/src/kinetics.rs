//! Population of impurity a-state atoms on the cold spot.
//!
//! Densities are in cm⁻², areas in cm², one-body rates in s⁻¹ and two-body
//! rate constants in cm²/s.

use std::fmt::Write as _;

use crate::error::KineticsError;
use crate::format::sig9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticsParams {
    /// Cell wall area, cm².
    pub wall_area: f64,
    /// Cold spot area, cm².
    pub spot_area: f64,
    /// One-body nuclear relaxation on the walls, s⁻¹.
    pub g1: f64,
    /// One-body nuclear relaxation on the spot, s⁻¹.
    pub g1s: f64,
    /// Two-body nuclear relaxation on the walls, cm²/s.
    pub g2: f64,
    /// Two-body nuclear relaxation on the spot, cm²/s.
    pub g2s: f64,
    /// Prefactor of K_ab = k·T^{3/2}, cm²·K^{-3/2}/s.
    pub kab_prefactor: f64,
    /// Fixed spot recombination constant, cm²/s. `None` evaluates the
    /// prefactor law at `t_spot`.
    pub kabs: Option<f64>,
    /// Adsorption energy, K.
    pub e_a: f64,
    pub t_spot: f64,
    pub t_walls: f64,
    /// Incoming a-atom flux, s⁻¹.
    pub phi_a: f64,
}

/// Theoretical orientation-averaged G2s at 4.6 T.
pub const G2S_THEORY: f64 = 1.4e-13;
/// Upper bound on G2s from decay-curve fits.
pub const G2S_EXPERIMENTAL_BOUND: f64 = 4e-13;
/// Quoted K_ab at 70 mK.
pub const KABS_QUOTED: f64 = 5e-11;

impl Default for KineticsParams {
    fn default() -> Self {
        Self {
            wall_area: 100.0,
            spot_area: 0.32,
            g1: 0.1,
            g1s: 0.1,
            g2: 0.0,
            g2s: G2S_THEORY,
            kab_prefactor: 2.8e-9,
            kabs: Some(KABS_QUOTED),
            e_a: 1.14,
            t_spot: 0.07,
            t_walls: 0.2,
            phi_a: 0.0,
        }
    }
}

impl KineticsParams {
    /// Defaults with the experimental upper bound for G2s.
    pub fn experimental_g2s() -> Self {
        Self { g2s: G2S_EXPERIMENTAL_BOUND, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), KineticsError> {
        let nonneg = [
            ("wall_area", self.wall_area),
            ("spot_area", self.spot_area),
            ("G1", self.g1),
            ("G1s", self.g1s),
            ("G2", self.g2),
            ("G2s", self.g2s),
            ("Kab_prefactor", self.kab_prefactor),
            ("Phi_a", self.phi_a),
        ];
        for (name, value) in nonneg {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(KineticsError::Negative { name, value });
            }
        }
        if let Some(k) = self.kabs {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(KineticsError::Negative { name: "Kabs", value: k });
            }
        }
        if !(self.e_a > 0.0) {
            return Err(KineticsError::NonPositive { name: "E_a", value: self.e_a });
        }
        check_temperatures(self.t_spot, self.t_walls)
    }

    /// K_ab on the cell walls, cm²/s.
    pub fn kab_walls(&self) -> f64 {
        self.kab_prefactor * self.t_walls.powf(1.5)
    }

    /// K_abs on the cold spot, cm²/s.
    pub fn kabs(&self) -> f64 {
        self.kabs.unwrap_or_else(|| self.kab_prefactor * self.t_spot.powf(1.5))
    }

    /// σ_bs / σ_b for these temperatures.
    pub fn isotherm_ratio(&self) -> Result<f64, KineticsError> {
        adsorption_ratio(self.e_a, self.t_spot, self.t_walls)
    }

    /// α for densities on the isotherm: A / (A_s · ratio).
    pub fn isotherm_alpha(&self) -> Result<f64, KineticsError> {
        Ok(self.wall_area / (self.spot_area * self.isotherm_ratio()?))
    }

    fn kabs_nonzero(&self) -> Result<f64, KineticsError> {
        let k = self.kabs();
        if k > 0.0 {
            Ok(k)
        } else {
            Err(KineticsError::ZeroRecombination)
        }
    }

    /// dσ_as/dσ_bs of the analytic steady state: G2s / K_abs.
    pub fn steady_state_slope(&self) -> Result<f64, KineticsError> {
        Ok(self.g2s / self.kabs_nonzero()?)
    }

    /// σ_bs-independent part of the analytic steady state: (G1s + α·G1) / K_abs.
    pub fn steady_state_intercept(&self) -> Result<f64, KineticsError> {
        Ok((self.g1s + self.isotherm_alpha()? * self.g1) / self.kabs_nonzero()?)
    }
}

fn check_temperatures(t_spot: f64, t_walls: f64) -> Result<(), KineticsError> {
    for t in [t_spot, t_walls] {
        if !(t > 0.0 && t.is_finite()) {
            return Err(KineticsError::NonPositiveTemperature(t));
        }
    }
    if t_spot > t_walls {
        return Err(KineticsError::SpotWarmerThanWalls { spot: t_spot, walls: t_walls });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SurfaceDensities {
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub sigma_as: f64,
    pub sigma_bs: f64,
}

impl SurfaceDensities {
    /// Spot densities given; wall densities follow from the isotherm.
    pub fn from_isotherm(p: &KineticsParams, sigma_bs: f64, sigma_as: f64) -> Result<Self, KineticsError> {
        let ratio = p.isotherm_ratio()?;
        Ok(Self { sigma_a: sigma_as / ratio, sigma_b: sigma_bs / ratio, sigma_as, sigma_bs })
    }
}

/// exp(E_a·(1/T_spot − 1/T_walls)).
pub fn adsorption_ratio(e_a: f64, t_spot: f64, t_walls: f64) -> Result<f64, KineticsError> {
    check_temperatures(t_spot, t_walls)?;
    Ok((e_a * (1.0 / t_spot - 1.0 / t_walls)).exp())
}

/// prefactor·T^{3/2}.
pub fn kab_rate(prefactor: f64, t: f64) -> Result<f64, KineticsError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(KineticsError::NonPositiveTemperature(t));
    }
    Ok(prefactor * t.powf(1.5))
}

/// A·σ_b / (A_s·σ_bs).
pub fn alpha_ratio(p: &KineticsParams, d: &SurfaceDensities) -> Result<f64, KineticsError> {
    if !(d.sigma_bs > 0.0) {
        return Err(KineticsError::NonPositive { name: "sigma_bs", value: d.sigma_bs });
    }
    Ok(p.wall_area * d.sigma_b / (p.spot_area * d.sigma_bs))
}

/// dN_a/dt, s⁻¹: flux plus relaxation minus exchange recombination on both surfaces.
pub fn na_rate(p: &KineticsParams, d: &SurfaceDensities) -> f64 {
    let walls = p.g1 * d.sigma_b + p.g2 * d.sigma_b * d.sigma_b - p.kab_walls() * d.sigma_a * d.sigma_b;
    let spot = p.g1s * d.sigma_bs + p.g2s * d.sigma_bs * d.sigma_bs - p.kabs() * d.sigma_as * d.sigma_bs;
    p.phi_a + p.wall_area * walls + p.spot_area * spot
}

/// Analytic steady state (G1s + α·G1)/K_abs + (G2s/K_abs)·σ_bs.
///
/// Drops Φ_a, the wall two-body term and wall recombination.
pub fn steady_state_sigma_as(p: &KineticsParams, sigma_bs: f64) -> Result<f64, KineticsError> {
    if !(sigma_bs > 0.0) {
        return Err(KineticsError::NonPositive { name: "sigma_bs", value: sigma_bs });
    }
    Ok(p.steady_state_intercept()? + p.steady_state_slope()? * sigma_bs)
}

/// Root of [`na_rate`] in σ_as, keeping every term, with wall densities tied
/// to the spot through the isotherm.
pub fn steady_state_numeric(p: &KineticsParams, sigma_bs: f64) -> Result<f64, KineticsError> {
    if !(sigma_bs > 0.0) {
        return Err(KineticsError::NonPositive { name: "sigma_bs", value: sigma_bs });
    }
    let ratio = p.isotherm_ratio()?;
    let rate = |sigma_as: f64| {
        na_rate(p, &SurfaceDensities { sigma_a: sigma_as / ratio, sigma_b: sigma_bs / ratio, sigma_as, sigma_bs })
    };
    let lo = 0.0;
    let f_lo = rate(lo);
    if f_lo == 0.0 {
        return Ok(0.0);
    }
    let mut hi = match steady_state_sigma_as(p, sigma_bs) {
        Ok(guess) if guess > 0.0 => 2.0 * guess,
        _ => 1.0,
    };
    let mut f_hi = rate(hi);
    for _ in 0..200 {
        if f_lo.signum() != f_hi.signum() {
            break;
        }
        hi *= 4.0;
        f_hi = rate(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(KineticsError::NoSignChange { lo, hi });
    }
    Ok(brent(rate, lo, hi, f_lo, f_hi, 1e-10))
}

/// Brent's method on a bracket with `f(a)·f(b) < 0`, relative x-tolerance `rtol`.
fn brent(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, rtol: f64) -> f64 {
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..200 {
        if fb == 0.0 || (b - a).abs() <= rtol * b.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let tol = rtol * b.abs();
        let between = {
            let lo = (3.0 * a + b) / 4.0;
            (s - lo) * (s - b) < 0.0
        };
        let slow = if bisected { (s - b).abs() >= (b - c).abs() / 2.0 } else { (s - b).abs() >= (c - d).abs() / 2.0 };
        let tiny = if bisected { (b - c).abs() < tol } else { (c - d).abs() < tol };
        if !between || slow || tiny {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    b
}

/// 1/(linearized decay rate) of σ_as around the steady state, s.
pub fn relaxation_time(p: &KineticsParams, sigma_bs: f64) -> Result<f64, KineticsError> {
    let ratio = p.isotherm_ratio()?;
    let wall_loss = p.wall_area * p.kab_walls() * (sigma_bs / ratio) / ratio;
    let spot_loss = p.spot_area * p.kabs_nonzero()? * sigma_bs;
    Ok(p.spot_area / (wall_loss + spot_loss))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub time: f64,
    pub densities: SurfaceDensities,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
}

pub const TRAJECTORY_COLUMNS: [&str; 5] = ["time_s", "sigma_a", "sigma_b", "sigma_as", "sigma_bs"];

impl Trajectory {
    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }

    /// CSV with header, 9 significant digits, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = TRAJECTORY_COLUMNS.join(",");
        out.push('\n');
        for pt in &self.points {
            let d = pt.densities;
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                sig9(pt.time),
                sig9(d.sigma_a),
                sig9(d.sigma_b),
                sig9(d.sigma_as),
                sig9(d.sigma_bs)
            );
        }
        out
    }
}

/// Integrates dσ_as/dt = Ṅ_a / A_s with σ_bs and σ_b held fixed.
///
/// The wall a-atom density follows the spot through the isotherm. Classic
/// RK4 with step-doubling error control: each step is taken once with `h`
/// and twice with `h/2`, the difference estimates the local error, and the
/// Richardson-extrapolated value is kept.
pub fn integrate_kinetics(
    p: &KineticsParams,
    initial: &SurfaceDensities,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory, KineticsError> {
    if !(t_end > 0.0) {
        return Err(KineticsError::NonPositive { name: "t_end", value: t_end });
    }
    if !(tol > 0.0) {
        return Err(KineticsError::NonPositive { name: "tol", value: tol });
    }
    let ratio = p.isotherm_ratio()?;
    let sigma_b = initial.sigma_b;
    let sigma_bs = initial.sigma_bs;
    let densities = |sigma_as: f64| SurfaceDensities { sigma_a: sigma_as / ratio, sigma_b, sigma_as, sigma_bs };
    let rhs = |y: f64| na_rate(p, &densities(y)) / p.spot_area;
    let rk4 = |y: f64, h: f64| {
        let k1 = rhs(y);
        let k2 = rhs(y + 0.5 * h * k1);
        let k3 = rhs(y + 0.5 * h * k2);
        let k4 = rhs(y + h * k3);
        y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    };

    // Magnitude floor for the error test when σ_as starts at zero.
    let floor =
        steady_state_numeric(p, sigma_bs.max(f64::MIN_POSITIVE)).unwrap_or(0.0).abs().max(initial.sigma_as.abs());
    let rate_scale = relaxation_time(p, sigma_bs).unwrap_or(t_end);
    let mut h = (0.01 * rate_scale).min(t_end);
    let mut t = 0.0;
    let mut y = initial.sigma_as;
    let mut points = vec![TrajectoryPoint { time: 0.0, densities: densities(y) }];

    while t < t_end {
        if h < 1e-18 {
            return Err(KineticsError::StepUnderflow { t, step: h });
        }
        let step = h.min(t_end - t);
        let full = rk4(y, step);
        let half = rk4(rk4(y, 0.5 * step), 0.5 * step);
        let err = (half - full).abs() / 15.0;
        let scale = tol * half.abs().max(floor).max(f64::MIN_POSITIVE);
        if err <= scale {
            t = if step == t_end - t { t_end } else { t + step };
            y = half + (half - full) / 15.0;
            points.push(TrajectoryPoint { time: t, densities: densities(y) });
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0) };
        h = step * factor;
    }
    Ok(Trajectory { points })
}
