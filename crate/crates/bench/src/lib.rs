//! Shared inputs for the benchmarks.

use hshift_core::{KineticsParams, ShiftParams};

/// Fields spanning the low-field, working and high-field regimes, T.
pub const FIELDS: [f64; 4] = [1e-3, 0.1, 4.6, 30.0];

/// Spot densities covering the experimental range, cm⁻².
pub const SPOT_DENSITIES: [f64; 3] = [1e11, 1e12, 1e13];

/// Default kinetics and shift parameters.
pub fn reference_params() -> (KineticsParams, ShiftParams) {
    (KineticsParams::default(), ShiftParams::default())
}
