use thiserror::Error;

/// Errors produced by the numerical layer.
///
/// Domain violations (poles, nonpositive denominators, points outside the
/// unit disk) are reported eagerly so callers never consume silent NaNs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    /// Gamma evaluated at a nonpositive integer.
    #[error("gamma pole at x = {x}")]
    GammaPole { x: f64 },

    /// Shifted order k = v + (b+1)/2 is a nonpositive integer, so the
    /// rising factorial (k)_m vanishes for some m.
    #[error("shifted order k = {k} is a nonpositive integer; (k)_m has a zero")]
    PochhammerZero { k: f64 },

    /// Series coefficients violate the class-A normalization.
    #[error("invalid normalized series: {reason}")]
    InvalidSeries { reason: &'static str },

    /// Operator parameters outside their admissible set.
    #[error("invalid operator parameters: {reason}")]
    InvalidOperator { reason: &'static str },

    /// The coefficient multiplier overflowed f64 range.
    #[error("operator multiplier overflows f64 at index m = {index}")]
    MultiplierOverflow { index: usize },

    /// Evaluation point lies outside the open unit disk.
    #[error("|z| = {modulus} is outside the open unit disk")]
    OutsideUnitDisk { modulus: f64 },

    /// The requested (family, order) pair has no implemented closed form.
    #[error("no closed form for family {family} with order {order}")]
    UnsupportedClosedForm { family: char, order: f64 },

    /// A bound formula's denominator factor is not positive.
    #[error("nonpositive denominator factor {factor} = {value}")]
    NonpositiveDenominator { factor: &'static str, value: f64 },

    /// A positivity side condition of a bound fails.
    #[error("positivity condition {condition} fails: value = {value}")]
    PositivityViolated { condition: &'static str, value: f64 },

    /// Criterion parameters outside their admissible set.
    #[error("invalid criterion parameters: {reason}")]
    InvalidCriterion { reason: &'static str },

    /// Parameters fail the admissibility hypothesis of the bound theorems.
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: last change {last_change} after {panels} panels")]
    QuadratureNotConverged { last_change: f64, panels: usize },
}

pub type Result<T> = std::result::Result<T, MathError>;
