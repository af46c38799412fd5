use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstantsError {
    #[error("constant {name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("gamma_p/gamma_e = {0} outside [1.4e-3, 1.6e-3]")]
    GyromagneticRatio(f64),
    #[error("hyperfine constant {0} Hz is not within 1 MHz of the hydrogen value")]
    Hyperfine(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperfineError {
    #[error("magnetic field must be finite and non-negative, got {0} T")]
    NegativeField(f64),
    #[error("transition needs two distinct states, got {0} twice")]
    SameState(char),
    #[error("unknown hyperfine state label {0:?} (expected a, b, c or d)")]
    UnknownLabel(String),
    #[error("state labeling disagrees at B = {field} T: {detail}")]
    LabelMismatch { field: f64, detail: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairError {
    #[error("unknown collective operator kind {0:?}")]
    UnknownKind(String),
    #[error("unknown drive {0:?} (expected electron or nuclear)")]
    UnknownDrive(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KineticsError {
    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
    #[error("spot temperature {spot} K exceeds wall temperature {walls} K")]
    SpotWarmerThanWalls { spot: f64, walls: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("spot recombination constant K_abs is zero")]
    ZeroRecombination,
    #[error("no sign change of the a-atom rate in [{lo:e}, {hi:e}] cm^-2")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("integration step underflow at t = {t} s (step {step:e} s)")]
    StepUnderflow { t: f64, step: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("unknown particle statistics {0:?}")]
    UnknownStatistics(String),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("g2 = {0} outside [0, 2]")]
    G2OutOfRange(f64),
    #[error("triplet scattering length {a_t} m must exceed singlet {a_s} m")]
    ScatteringOrder { a_t: f64, a_s: f64 },
}

/// Any domain error, tagged with the module that raised it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constants: {0}")]
    Constants(#[from] ConstantsError),
    #[error("hyperfine_levels: {0}")]
    Hyperfine(#[from] HyperfineError),
    #[error("pair_spin_algebra: {0}")]
    Pair(#[from] PairError),
    #[error("surface_kinetics: {0}")]
    Kinetics(#[from] KineticsError),
    #[error("shift_model: {0}")]
    Shift(#[from] ShiftError),
}
