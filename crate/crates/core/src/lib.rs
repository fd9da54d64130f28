//! Numerical layer for univalence analysis of a linear fractional
//! differential operator composed with generalized Bessel normalizations on
//! the unit disk.
//!
//! The crate provides:
//!
//! - [`special`]: gamma, rising factorials, the normalized Bessel power
//!   series and their half-integer-order closed forms;
//! - [`operator`]: the coefficient-multiplier operator in both its
//!   gamma-ratio and rising-factorial representations, Hadamard products,
//!   and series evaluation with derivatives and tail bounds;
//! - [`bounds`]: the closed-form two-sided and one-sided bounds on the
//!   transformed series and its derivatives, with exact rational evaluation
//!   of the n = 0 specializations;
//! - [`criteria`]: univalence criterion checkers, both formula-level and
//!   grid-sampled;
//! - [`integral`]: the product-, power- and exponential-type integral
//!   operators by complex Gauss-Legendre quadrature, plus an empirical
//!   injectivity oracle;
//! - [`grid`], [`quadrature`]: the polar sampling grid and the quadrature
//!   engine.
//!
//! Everything is a pure function of its inputs over immutable values, so
//! all APIs are safe for unrestricted concurrent use.

pub mod bounds;
pub mod criteria;
pub mod error;
pub mod grid;
pub mod integral;
pub mod operator;
pub mod quadrature;
pub mod special;

pub use error::{MathError, Result};

pub use bounds::{
    check_admissible, compute_quantities, deriv_bounds, deriv_lower_bound, deriv_upper_bound,
    diff_bound, logderiv_bound, ratio_bounds, ratio_lower_bound, ratio_upper_bound,
    second_deriv_bound, AdmissibleParams, BoundQuantities, Rejection, DEFAULT_M_INDEX,
};
pub use criteria::{
    criterion_f, criterion_g, criterion_h, direct_criteria_check, g_threshold,
    lemma_becker_check, lemma_pascu_check, lemma_pescar_check, sampled_extrema, CriterionReport,
    FParams, GParams, HParams, PescarVariant, SampledExtrema,
};
pub use grid::DiskGrid;
pub use integral::{
    empirical_injectivity, FOperator, GOperator, HOperator, InjectivityReport, IntegralEval,
    COLLISION_THRESHOLD,
};
pub use operator::{
    apply_operator, evaluate, g_lambda_series, hadamard, multiplier, multiplier_pochhammer,
    EvaluationResult, OperatorParams,
};
pub use quadrature::{GaussLegendre, QuadratureSpec};
pub use special::{
    closed_form_value, gamma, phi_series, pochhammer, BesselFamily, BesselParams,
    NormalizedSeries,
};
