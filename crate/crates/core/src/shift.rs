//! Frequency-shift model for the b→a and b→c resonances of adsorbed hydrogen.
//!
//! Two mechanisms contribute a density-linear shift to the apparent b→a
//! frequency:
//!
//! * residual a-state atoms on the cold spot shift the b→c line (contact
//!   shift ∝ a_s − a_t), which enters the b→a difference through the
//!   γ_p/γ_e lever;
//! * mutual interaction of adsorbed b atoms lowers the binding energy and
//!   with it the wall shift of the hyperfine constant.
//!
//! Lengths are in metres, densities in cm⁻², vertices in K·cm².

use std::str::FromStr;

use crate::constants::{default_constants, PhysicalConstants, ANGSTROM, CM2_PER_M2, PICOMETER};
use crate::error::{Error, ShiftError};
use crate::kinetics::{steady_state_sigma_as, KineticsParams};

/// A value with a symmetric one-sigma uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub value: f64,
    pub sigma: f64,
}

impl Measured {
    pub const fn new(value: f64, sigma: f64) -> Self {
        Self { value, sigma }
    }

    pub const fn exact(value: f64) -> Self {
        Self { value, sigma: 0.0 }
    }

    /// Linear propagation through multiplication by an exact factor.
    pub fn scale(self, factor: f64) -> Self {
        Self { value: self.value * factor, sigma: self.sigma * factor.abs() }
    }

    /// Whether `x` lies within `k` sigma.
    pub fn contains(&self, x: f64, k: f64) -> bool {
        (x - self.value).abs() <= k * self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParams {
    pub constants: PhysicalConstants,
    /// Triplet scattering length, m.
    pub a_t: f64,
    /// Singlet scattering length, m.
    pub a_s: f64,
    /// Surface-normal delocalization length, m.
    pub l: f64,
    /// Effective 2D triplet vertex, K·cm². `None` uses 4πħ²a_t/(m·l).
    pub vertex_ut: Option<f64>,
    /// Adsorption energy, K.
    pub e_a: f64,
    /// Zero-density wall shift ΔA_w/h, Hz.
    pub wall_shift_a0_over_h: f64,
    /// Pair correlation g⁽²⁾ of the adsorbed b atoms.
    pub g2: f64,
    /// Experimental intercept of Δν_ab(σ), Hz.
    pub c0: f64,
    /// Experimental slope of Δν_ab(σ), Hz·cm².
    pub c1: f64,
}

pub const TRIPLET_LENGTH: f64 = 0.72 * ANGSTROM;
pub const SINGLET_LENGTH_LITERATURE: f64 = 0.17 * ANGSTROM;
/// a_t − a_s after the identical-particle correction.
pub const CORRECTED_DIFFERENCE: f64 = 30.0 * PICOMETER;
pub const QUOTED_VERTEX: f64 = 5e-15;

impl Default for ShiftParams {
    fn default() -> Self {
        let constants = default_constants();
        let experiment = experiment_reference();
        Self {
            constants,
            a_t: TRIPLET_LENGTH,
            a_s: TRIPLET_LENGTH - CORRECTED_DIFFERENCE,
            l: 5.0 * ANGSTROM,
            vertex_ut: Some(QUOTED_VERTEX),
            e_a: experiment.e_a_4he,
            wall_shift_a0_over_h: wall_shift_from_intercept(&constants, experiment.c0.value),
            g2: 2.0,
            c0: experiment.c0.value,
            c1: experiment.c1.value,
        }
    }
}

impl ShiftParams {
    /// Uncorrected literature scattering lengths (a_t − a_s = 55 pm).
    pub fn literature_scattering_lengths() -> Self {
        Self { a_s: SINGLET_LENGTH_LITERATURE, ..Self::default() }
    }

    /// Keeps a_t and sets a_s = a_t − `difference`.
    pub fn with_scattering_difference(self, difference: f64) -> Self {
        Self { a_s: self.a_t - difference, ..self }
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.constants.validate()?;
        let positive = [("a_t", self.a_t), ("a_s", self.a_s), ("l", self.l), ("E_a", self.e_a), ("C1", self.c1)];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ShiftError::NonPositive { name, value }.into());
            }
        }
        if self.a_t <= self.a_s {
            return Err(ShiftError::ScatteringOrder { a_t: self.a_t, a_s: self.a_s }.into());
        }
        if !(0.0..=2.0).contains(&self.g2) {
            return Err(ShiftError::G2OutOfRange(self.g2).into());
        }
        if let Some(u) = self.vertex_ut {
            if !(u >= 0.0) {
                return Err(ShiftError::Negative { name: "Ut", value: u }.into());
            }
        }
        Ok(())
    }

    /// ħ/(m·l), m/s.
    fn hbar_over_ml(&self) -> f64 {
        self.constants.hbar / (self.constants.mass_h * self.l)
    }

    /// dΔν_bc/dσ_a, Hz·cm².
    pub fn contact_coefficient(&self) -> f64 {
        self.hbar_over_ml() * (self.a_s - self.a_t) * CM2_PER_M2
    }
}

/// ΔA_w/h that reproduces the intercept C0 through the b→a difference formula.
pub fn wall_shift_from_intercept(c: &PhysicalConstants, c0: f64) -> f64 {
    2.0 * c0 / (1.0 + c.gyromagnetic_ratio())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Distinguishable,
    Condensate,
    ThermalBosons,
    Fermions,
}

impl FromStr for Statistics {
    type Err = ShiftError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "distinguishable" => Ok(Self::Distinguishable),
            "condensate" => Ok(Self::Condensate),
            "thermal_bosons" => Ok(Self::ThermalBosons),
            "fermions" => Ok(Self::Fermions),
            other => Err(ShiftError::UnknownStatistics(other.to_string())),
        }
    }
}

/// Zero-separation pair correlation g⁽²⁾.
pub fn g2_factor(statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Distinguishable | Statistics::Condensate => 1.0,
        Statistics::ThermalBosons => 2.0,
        Statistics::Fermions => 0.0,
    }
}

/// How a quoted a_t − a_s was extracted from an interaction energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatteringConvention {
    /// Atoms treated as distinguishable (g⁽²⁾ = 1) while the pair states were
    /// written as singlet/triplet combinations, which counts exchange twice.
    DistinguishableG2One,
    /// Identical particles throughout.
    IdenticalG2Two,
}

/// Removes the double counting of exchange from a reported a_t − a_s.
pub fn corrected_scattering_difference(
    reported: Measured,
    convention: ScatteringConvention,
) -> Result<Measured, ShiftError> {
    if !(reported.value > 0.0) {
        return Err(ShiftError::NonPositive { name: "reported a_t - a_s", value: reported.value });
    }
    Ok(match convention {
        ScatteringConvention::DistinguishableG2One => reported.scale(0.5),
        ScatteringConvention::IdenticalG2Two => reported,
    })
}

/// Shift of the b→c line from residual a atoms at density `sigma_a`, Hz.
pub fn contact_shift_bc(p: &ShiftParams, sigma_a: f64) -> Result<f64, ShiftError> {
    if !(sigma_a >= 0.0) {
        return Err(ShiftError::Negative { name: "sigma_a", value: sigma_a });
    }
    Ok(p.contact_coefficient() * sigma_a)
}

/// dΔν_bc/dσ_bs through the steady-state a-atom population, Hz·cm².
pub fn bc_shift_slope(p: &ShiftParams, k: &KineticsParams) -> Result<f64, Error> {
    Ok(p.contact_coefficient() * k.steady_state_slope()?)
}

/// Contribution of the σ_bs-independent a atoms to the extrapolated
/// zero-density wall shift, δA_w/h in Hz.
pub fn wall_offset_from_a(p: &ShiftParams, k: &KineticsParams) -> Result<f64, Error> {
    let kabs = k.kabs();
    if !(kabs > 0.0) {
        return Err(crate::error::KineticsError::ZeroRecombination.into());
    }
    Ok(p.constants.gyromagnetic_ratio() * 2.0 * p.contact_coefficient() * (k.g1s / kabs))
}

/// 4πħ²a_t/(m·l) expressed in K·cm².
pub fn triplet_vertex_formula(p: &ShiftParams) -> f64 {
    let c = &p.constants;
    let joule_m2 = 4.0 * std::f64::consts::PI * c.hbar * c.hbar * p.a_t / (c.mass_h * p.l);
    c.joule_to_kelvin(joule_m2) * CM2_PER_M2
}

/// Effective vertex: the configured override if set, otherwise the formula.
pub fn triplet_vertex(p: &ShiftParams) -> f64 {
    p.vertex_ut.unwrap_or_else(|| triplet_vertex_formula(p))
}

/// δE_a = −g⁽²⁾·σ_b·Ũ_t, K.
pub fn interaction_energy(p: &ShiftParams, sigma_b: f64) -> Result<f64, ShiftError> {
    if !(sigma_b >= 0.0) {
        return Err(ShiftError::Negative { name: "sigma_b", value: sigma_b });
    }
    Ok(-p.g2 * sigma_b * triplet_vertex(p))
}

/// d[δ(ΔA_w)/ΔA_w]/dσ_b = −g⁽²⁾·Ũ_t/E_a, cm².
pub fn wall_shift_coefficient(p: &ShiftParams) -> f64 {
    -p.g2 * triplet_vertex(p) / p.e_a
}

/// δ(ΔA_w)/ΔA_w ≈ δE_a/E_a at density `sigma_b`.
pub fn wall_shift_relative_change(p: &ShiftParams, sigma_b: f64) -> Result<f64, ShiftError> {
    Ok(interaction_energy(p, sigma_b)? / p.e_a)
}

/// Per-mechanism density slopes of Δν_ab.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftBreakdown {
    /// From residual a atoms via the b→c shift, Hz·cm².
    pub pressure_term_slope: f64,
    /// From the density-dependent wall shift, Hz·cm².
    pub wall_term_slope: f64,
    pub total_slope: f64,
    /// δA_w/h from the σ-independent a atoms, Hz.
    pub wall_offset_from_a: f64,
    /// total_slope / C1.
    pub ratio_to_experiment: f64,
}

pub const BREAKDOWN_FIELDS: [&str; 5] =
    ["pressure_slope_hz_cm2", "wall_slope_hz_cm2", "total_slope_hz_cm2", "wall_offset_hz", "ratio_to_C1"];

impl ShiftBreakdown {
    /// Values in [`BREAKDOWN_FIELDS`] order.
    pub fn values(&self) -> [f64; 5] {
        [
            self.pressure_term_slope,
            self.wall_term_slope,
            self.total_slope,
            self.wall_offset_from_a,
            self.ratio_to_experiment,
        ]
    }

    pub fn record(&self) -> [(&'static str, f64); 5] {
        let v = self.values();
        std::array::from_fn(|i| (BREAKDOWN_FIELDS[i], v[i]))
    }
}

/// Density slopes of the apparent b→a shift and their ratio to C1.
pub fn ab_shift(p: &ShiftParams, k: &KineticsParams) -> Result<ShiftBreakdown, Error> {
    let r = p.constants.gyromagnetic_ratio();
    let pressure = -r * bc_shift_slope(p, k)?;
    let wall = 0.5 * p.wall_shift_a0_over_h * (1.0 + r) * wall_shift_coefficient(p);
    let total = pressure + wall;
    Ok(ShiftBreakdown {
        pressure_term_slope: pressure,
        wall_term_slope: wall,
        total_slope: total,
        wall_offset_from_a: wall_offset_from_a(p, k)?,
        ratio_to_experiment: total / p.c1,
    })
}

/// Δν_bc at spot density `sigma_bs` with the steady-state a atoms, Hz.
pub fn bc_frequency_shift(p: &ShiftParams, k: &KineticsParams, sigma_bs: f64) -> Result<f64, Error> {
    Ok(contact_shift_bc(p, steady_state_sigma_as(k, sigma_bs)?)?)
}

/// Δν_ab = (ΔA_w(σ)/2h)(1 + γ_p/γ_e) − (γ_p/γ_e)·Δν_bc(σ), Hz.
pub fn ab_frequency_shift(p: &ShiftParams, k: &KineticsParams, sigma_b: f64) -> Result<f64, Error> {
    let r = p.constants.gyromagnetic_ratio();
    let wall = p.wall_shift_a0_over_h * (1.0 + wall_shift_relative_change(p, sigma_b)?);
    Ok(0.5 * wall * (1.0 + r) - r * bc_frequency_shift(p, k, sigma_b)?)
}

/// Experimental anchors the model is compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentReference {
    /// Intercept of Δν_ab(σ), Hz.
    pub c0: Measured,
    /// Slope of Δν_ab(σ), Hz·cm².
    pub c1: Measured,
    /// Field of the 2D experiment, T.
    pub field_b: f64,
    /// Zero-field wall shift on ⁴He, Hz.
    pub wall_shift_4he: Measured,
    /// Zero-field wall shift on ³He, Hz.
    pub wall_shift_3he: Measured,
    pub e_a_4he: f64,
    pub e_a_3he: f64,
    /// Reported a_t − a_s before the identical-particle correction, m.
    pub reported_scattering_difference: Measured,
}

pub fn experiment_reference() -> ExperimentReference {
    ExperimentReference {
        c0: Measured::new(-24.79e3, 0.02e3),
        c1: Measured::new(1.52e-9, 0.15e-9),
        field_b: 4.6,
        wall_shift_4he: Measured::new(-49e3, 2e3),
        wall_shift_3he: Measured::new(-23e3, 2e3),
        e_a_4he: 1.14,
        e_a_3he: 0.40,
        reported_scattering_difference: Measured::new(60.0 * PICOMETER, 10.0 * PICOMETER),
    }
}
