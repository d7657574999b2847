//! Complex-valued integration of PII, P34 and derivative PII with residuals
//! recomputed by finite differences.

pub mod checks;
pub mod dp45;
pub mod fd;
pub mod problem;

pub use checks::{
    classify, dpii_first_integral_check, first_integral, p34_map_check, p34_residual, DriftReport, MapCheck, MapReport,
    PairingResult, Winner,
};
pub use dp45::Tolerances;
pub use problem::{integrate, Equation, OdeProblem, Pairing, PiiConvention, TolSpec, Trajectory, DEFAULT_GRID};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("step size collapsed at z = {z}: probable movable pole ahead")]
    StepUnderflow { z: f64 },
    #[error("|u| = {magnitude:e} exceeds the pole threshold at z = {z}")]
    Blowup { z: f64, magnitude: f64 },
    #[error("non-finite value at z = {z}")]
    NonFinite { z: f64 },
    #[error("solution too close to zero at z = {z}")]
    NearZero { z: f64 },
    #[error("declared pole at z = {pole} lies inside the span")]
    SpanContainsPole { pole: f64 },
    #[error(
        "neither P34 constant fits {variable}: residuals {minus_half:e} (alpha - 1/2), {plus_half:e} (alpha + 1/2)"
    )]
    BothPairingsFail {
        variable: &'static str,
        minus_half: f64,
        plus_half: f64,
    },
    #[error("base PII trajectory residual {residual:e} is above tolerance")]
    InaccurateBase { residual: f64 },
}
