// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Variants are grouped by the layer that produces them; the CLI maps each
/// group onto an exit code through [`Error::kind`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has {rows} rows but row {row} has {len} entries")]
    RaggedMatrix { rows: usize, row: usize, len: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },
    #[error("matrix is not positive definite: smallest eigenvalue {eig_min:e}, floor {floor:e}")]
    NotPositiveDefinite { eig_min: f64, floor: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("matrix is singular or numerically singular")]
    SingularTransform,
    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("point set is empty")]
    EmptySet,
    #[error("iterate left the ball GL_{c}: spectrum [{eig_min:e}, {eig_max:e}]")]
    NumericalEscape { c: f64, eig_min: f64, eig_max: f64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid unit measure: {0}")]
    InvalidMeasure(String),
    #[error("restriction to an empty unit set")]
    EmptyRestriction,
    #[error("restriction to a unit set of measure zero")]
    ZeroMassRestriction,
    #[error("unknown unit {0}")]
    UnknownUnit(String),
    #[error("unit {0} has measure zero")]
    NullUnit(String),

    #[error("no matrix for arrow {0}")]
    MissingArrow(String),
    #[error("representation violates functoriality: {0}")]
    InvalidRepresentation(String),
    #[error("representation is not uniformly bounded")]
    NotUniformlyBounded,
    #[error("invalid base representation: {0}")]
    InvalidBaseRep(String),
    #[error("circumcenter solve did not certify within eps at units: {}", .units.join(", "))]
    SolverFailure { units: Vec<String> },

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numerical,
    Parse,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NonConvergence { .. } | Error::NumericalEscape { .. } | Error::SolverFailure { .. } => {
                ErrorKind::Numerical
            }
            Error::Parse(_) | Error::RaggedMatrix { .. } | Error::NonFinite { .. } => ErrorKind::Parse,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
