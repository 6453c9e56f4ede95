//! Asymptotic verification on solver output: the `o(t^{aα})` upper
//! estimate, the sharpness lower bound, the proof-side diagnostics, and
//! the Mittag–Leffler oracle for the linear relaxation family.

mod diagnostics;
mod fit;
mod mittag_leffler;
mod sharpness;

pub use diagnostics::{theorem_diagnostics, TheoremDiagnostics};
pub use fit::{
    fit_growth_exponent, verify_upper_estimate, DecadeMax, ExponentFit, UpperEstimate,
};
pub use mittag_leffler::mittag_leffler;
pub use sharpness::{omega_gap_analysis, verify_sharpness, OmegaAnalysis, SharpnessReport};

use thiserror::Error;

use crate::bihari::BihariError;

#[derive(Debug, Error, PartialEq)]
pub enum AsymptoticsError {
    #[error("argument outside the validated range: {0}")]
    RangeExceeded(String),
    #[error("fit window too short: {0}")]
    WindowTooShort(String),
    #[error("non-positive value at t = {t}; log-log fit undefined")]
    NonpositiveValues { t: f64 },
    #[error("horizon too short: {0}")]
    HorizonTooShort(String),
    #[error("plan does not match the path: {0}")]
    PlanMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error(transparent)]
    Bihari(#[from] BihariError),
}
