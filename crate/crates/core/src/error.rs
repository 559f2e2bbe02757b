use thiserror::Error;

use crate::series::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator factor (1 - {0}) has non-positive grade and cannot be expanded")]
    DenominatorNotExpandable(Monomial),
    #[error("exponent vector {0:?} has no integral image in the {1} frame")]
    NonLatticeImage([i32; 4], &'static str),
    #[error("denominator factor (1 - {0}) becomes (1 - 1) under the specialisation")]
    PoleAtSpecialization(Monomial),
    #[error("specialisation does not preserve the truncation grading; expand afterwards instead")]
    GradingNotPreserved,
    #[error("limit diverges: {0} keeps a negative exponent of a limited variable")]
    DivergentLimit(Monomial),
    #[error("invalid limit: {0}")]
    InvalidLimit(String),
    #[error("plethystic exponential needs strictly positive grade, found term {0}")]
    ConstantTermError(Monomial),
    #[error("plethystic logarithm needs constant term exactly 1")]
    UnitConstantTermError,
    #[error("invalid weight k = {0}; must be >= -1")]
    InvalidWeight(i64),
    #[error("series use different gradings")]
    GradingMismatch,
    #[error("operation needs a truncated series")]
    Untruncated,
    #[error("jet convention has not been calibrated")]
    UncalibratedConvention,
    #[error("convention calibration failed: {0} matching conventions ({1})")]
    CalibrationFailed(usize, String),
    #[error("coefficient is not a combination of sl(3) characters (residual {0})")]
    NotCharacterCombination(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
