//! Hyperfine frequency shift of two-dimensional atomic hydrogen on helium.
//!
//! * [`hyperfine`]: single-atom Breit-Rabi levels, mixing angle, transitions.
//! * [`pair`]: 16-state two-atom spin algebra and the pair selection rule.
//! * [`kinetics`]: a-state impurity population on the cold spot.
//! * [`shift`]: contact, wall and composed b→a shift model.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod format;
pub mod hyperfine;
pub mod kinetics;
pub mod pair;
pub mod shift;

pub use constants::{default_constants, PhysicalConstants};
pub use error::Error;
pub use hyperfine::{eigensystem, HyperfineSpectrum, HyperfineState};
pub use kinetics::{KineticsParams, SurfaceDensities, Trajectory};
pub use pair::{CollectiveOperator, Drive, ForbiddennessReport, OperatorKind, PairState};
pub use shift::{ExperimentReference, Measured, ShiftBreakdown, ShiftParams, Statistics};
