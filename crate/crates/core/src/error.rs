use thiserror::Error;

use crate::m1hahn::PositivityViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameters violate positivity: {0}")]
    Positivity(PositivityViolation),

    #[error("degenerate spectrum: points {first} and {second} coincide")]
    DegenerateSpectrum { first: usize, second: usize },

    #[error("non-positive coupling: u_{index} <= 0")]
    NonPositiveCoupling { index: usize },

    #[error("removal of interior level {index} is unsupported; only the smallest or largest level can be removed")]
    UnsupportedRemoval { index: usize },

    #[error("singular Christoffel transform: P_{degree} vanishes at the removed level")]
    SingularTransform { degree: usize },

    #[error("ill-conditioned measure: squared norm of P_{degree} lost positivity")]
    IllConditionedMeasure { degree: usize },

    #[error("eigensolver did not converge for eigenvalue {index} within {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("spacing violation: ratio of spacing {index} to spacing 0 is {ratio}, which is not a ratio of odd integers")]
    SpacingViolation { index: usize, ratio: String },

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("design cross-check failed: {0}")]
    DesignMismatch(String),
}
