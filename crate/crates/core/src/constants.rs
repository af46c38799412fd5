//! Physical constants and the unit conversions shared by every module.
//!
//! Internally everything is SI. Surface densities and rate constants are
//! kept in the cm-based units used by the experimental literature
//! (cm⁻², cm²/s), and the conversion factors below are the only place
//! where the two systems meet.

use crate::error::ConstantsError;

/// Metres per ångström.
pub const ANGSTROM: f64 = 1e-10;
/// Metres per picometre.
pub const PICOMETER: f64 = 1e-12;
/// cm² per m².
pub const CM2_PER_M2: f64 = 1e4;

/// Fundamental constants plus the hydrogen-specific parameters.
///
/// Gyromagnetic ratios are stored as frequency per field (Hz/T), so that
/// `gamma_e * B` is directly a Zeeman frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Planck constant, J·s.
    pub planck_h: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub boltzmann_kb: f64,
    /// Hydrogen atom mass, kg.
    pub mass_h: f64,
    /// Electron gyromagnetic ratio / 2π, Hz/T.
    pub gamma_e: f64,
    /// Proton gyromagnetic ratio / 2π, Hz/T.
    pub gamma_p: f64,
    /// Zero-field hyperfine splitting A/h, Hz.
    pub hyperfine_a_over_h: f64,
}

// CODATA 2018.
const PLANCK_H: f64 = 6.626_070_15e-34;
const BOLTZMANN: f64 = 1.380_649e-23;
const PROTON_MASS: f64 = 1.672_621_923_69e-27;
const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
const GAMMA_E_RAD: f64 = 1.760_859_630_23e11;
const GAMMA_P_RAD: f64 = 2.675_221_874_4e8;

/// Hydrogen maser frequency.
pub const HYDROGEN_HYPERFINE_HZ: f64 = 1.420_405_751_768e9;
/// The rounded hyperfine constant, for reproducing hand estimates.
pub const HYDROGEN_HYPERFINE_ROUNDED_HZ: f64 = 1.420e9;

/// The canonical constant set used by every default in the crate.
pub fn default_constants() -> PhysicalConstants {
    let two_pi = 2.0 * std::f64::consts::PI;
    PhysicalConstants {
        planck_h: PLANCK_H,
        hbar: PLANCK_H / two_pi,
        boltzmann_kb: BOLTZMANN,
        mass_h: PROTON_MASS + ELECTRON_MASS,
        gamma_e: GAMMA_E_RAD / two_pi,
        gamma_p: GAMMA_P_RAD / two_pi,
        hyperfine_a_over_h: HYDROGEN_HYPERFINE_HZ,
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        default_constants()
    }
}

impl PhysicalConstants {
    /// γ_p / γ_e.
    pub fn gyromagnetic_ratio(&self) -> f64 {
        self.gamma_p / self.gamma_e
    }

    /// Same constants with a different hyperfine constant, e.g. the rounded 1420 MHz.
    pub fn with_hyperfine(mut self, a_over_h: f64) -> Self {
        self.hyperfine_a_over_h = a_over_h;
        self
    }

    /// Converts an energy in joules to kelvin.
    pub fn joule_to_kelvin(&self, energy: f64) -> f64 {
        energy / self.boltzmann_kb
    }

    /// Checks positivity of every field and the plausibility windows on γ_p/γ_e and A/h.
    ///
    /// The A/h window is 1 MHz wide so that the rounded value passes as an override.
    pub fn validate(&self) -> Result<(), ConstantsError> {
        let fields = [
            ("planck_h", self.planck_h),
            ("hbar", self.hbar),
            ("boltzmann_kb", self.boltzmann_kb),
            ("mass_h", self.mass_h),
            ("gamma_e", self.gamma_e),
            ("gamma_p", self.gamma_p),
            ("hyperfine_a_over_h", self.hyperfine_a_over_h),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConstantsError::NonPositive { name, value });
            }
        }
        let ratio = self.gyromagnetic_ratio();
        if !(1.4e-3..=1.6e-3).contains(&ratio) {
            return Err(ConstantsError::GyromagneticRatio(ratio));
        }
        if (self.hyperfine_a_over_h - HYDROGEN_HYPERFINE_HZ).abs() > 1e6 {
            return Err(ConstantsError::Hyperfine(self.hyperfine_a_over_h));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = default_constants();
        c.validate().unwrap();
        assert_eq!(c.hyperfine_a_over_h, 1.420405751768e9);
        assert!((c.gyromagnetic_ratio() - 1.519e-3).abs() < 1e-6);
        assert!((c.mass_h - 1.6735e-27).abs() < 1e-31);
        assert!((c.hbar * 2.0 * std::f64::consts::PI - c.planck_h).abs() < 1e-48);
    }

    #[test]
    fn rounded_hyperfine_override_is_accepted() {
        let c = default_constants().with_hyperfine(HYDROGEN_HYPERFINE_ROUNDED_HZ);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_and_out_of_window() {
        let mut c = default_constants();
        c.mass_h = 0.0;
        assert!(matches!(c.validate(), Err(ConstantsError::NonPositive { name: "mass_h", .. })));

        let mut c = default_constants();
        c.gamma_p *= 2.0;
        assert!(matches!(c.validate(), Err(ConstantsError::GyromagneticRatio(_))));

        let c = default_constants().with_hyperfine(1.5e9);
        assert!(matches!(c.validate(), Err(ConstantsError::Hyperfine(_))));
    }
}
