//! Closed-form coefficient bounds for the operator applied to the Bessel
//! normalization, parameterized by the notation-block quantities
//!
//! ```text
//! delta(k+w) = (k+w) (1/lambda + w)^n (2 - g + w)^n      w in {0, 1, 2}
//! beta(d)    = |d| (1/lambda + m)^n (m + 1)^n
//! M          = (2 - g)^n (1/lambda + m)^n (m + 1)^n
//! N          = 2^n (lambda + 1)^n
//! alpha((w +- 1)k + w) = w N delta(k+1) +- M k
//! ```
//!
//! Every bound below is a ratio in which a common rescaling of
//! (delta, beta, M) cancels, so at lambda = 0 (where 1/lambda diverges)
//! the quantities are stored in the rescaled limit form obtained by
//! multiplying each by lambda^n: (1/lambda + w)^n becomes (1 + lambda w)^n,
//! which is 1 at lambda = 0. The bound values are then the lambda -> 0
//! limits, consistent with the coefficient multiplier at lambda = 0.
//!
//! The free index `m` inside beta and M is never fixed by the theorem
//! statements; it is exposed as `m_index` (default 1, which is the value
//! the closed forms implicitly use when the tail sum is collapsed as a
//! geometric series).

use num_rational::Ratio;
use thiserror::Error;

use crate::error::{MathError, Result};
use crate::operator::OperatorParams;
use crate::special::BesselParams;

/// Default value of the free index m in beta(d) and M.
pub const DEFAULT_M_INDEX: u32 = 1;

/// The notation-block quantities evaluated for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuantities {
    k: f64,
    delta: [f64; 3],
    beta_d: f64,
    big_m: f64,
    big_n: f64,
    m_index: u32,
}

impl BoundQuantities {
    /// k = v + (b+1)/2.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// delta(k + w) for w in {0, 1, 2}.
    pub fn delta(&self, w: usize) -> f64 {
        self.delta[w]
    }

    pub fn delta_k(&self) -> f64 {
        self.delta[0]
    }

    pub fn delta_k1(&self) -> f64 {
        self.delta[1]
    }

    pub fn delta_k2(&self) -> f64 {
        self.delta[2]
    }

    /// beta(d) - nonnegative, zero iff d = 0.
    pub fn beta_d(&self) -> f64 {
        self.beta_d
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    pub fn big_n(&self) -> f64 {
        self.big_n
    }

    pub fn m_index(&self) -> u32 {
        self.m_index
    }

    /// alpha(2k+1) = N delta(k+1) + M k.
    pub fn alpha_2k_plus_1(&self) -> f64 {
        self.big_n * self.delta[1] + self.big_m * self.k
    }

    /// alpha(3k+2) = 2 N delta(k+1) + M k.
    pub fn alpha_3k_plus_2(&self) -> f64 {
        2.0 * self.big_n * self.delta[1] + self.big_m * self.k
    }

    /// alpha(k+2) = 2 N delta(k+1) - M k.
    pub fn alpha_k_plus_2(&self) -> f64 {
        2.0 * self.big_n * self.delta[1] - self.big_m * self.k
    }
}

/// Evaluates the notation-block quantities.
///
/// At lambda = 0 the rescaled limit forms are stored (see module docs);
/// for lambda > 0 the values are exactly the displayed definitions.
pub fn compute_quantities(
    bessel: &BesselParams,
    op: &OperatorParams,
    m_index: u32,
) -> BoundQuantities {
    let k = bessel.shifted_order();
    let n = op.n() as i32;
    let lam = op.lambda();
    let g = op.gamma_order();
    let m = m_index as f64;
    let d_abs = bessel.d().norm();

    // (1/lambda + w)^n for lambda > 0, or its lambda^n-rescaled limit.
    let lam_factor = |w: f64| -> f64 {
        if lam > 0.0 {
            (1.0 / lam + w).powi(n)
        } else {
            1.0
        }
    };

    let delta = [0.0, 1.0, 2.0].map(|w| (k + w) * lam_factor(w) * (2.0 - g + w).powi(n));
    let beta_d = d_abs * lam_factor(m) * (m + 1.0).powi(n);
    let big_m = (2.0 - g).powi(n) * lam_factor(m) * (m + 1.0).powi(n);
    let big_n = 2.0f64.powi(n) * (lam + 1.0).powi(n);

    BoundQuantities {
        k,
        delta,
        beta_d,
        big_m,
        big_n,
        m_index,
    }
}

/// Why a parameter set fails the admissibility hypothesis
/// `k > max{0, beta(d) / (4 (1 + 1/lambda)^n (3 - g)^n) - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Rejection {
    #[error("shifted order k = {k} fails k > 0")]
    ShiftedOrderNotPositive { k: f64 },
    #[error("shifted order k = {k} is not above the series threshold {threshold}")]
    BelowSeriesThreshold { k: f64, threshold: f64 },
}

/// A parameter bundle that satisfies the admissibility hypothesis, so every
/// bound denominator 4 delta(k+1) - beta(d) is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleParams {
    bessel: BesselParams,
    op: OperatorParams,
    bounds: BoundQuantities,
}

impl AdmissibleParams {
    pub fn bessel(&self) -> &BesselParams {
        &self.bessel
    }

    pub fn op(&self) -> &OperatorParams {
        &self.op
    }

    pub fn quantities(&self) -> &BoundQuantities {
        &self.bounds
    }
}

/// Checks the admissibility hypothesis; a rejection is an ordinary result
/// naming the violated condition, not an error.
pub fn check_admissible(
    bessel: &BesselParams,
    op: &OperatorParams,
    m_index: u32,
) -> std::result::Result<AdmissibleParams, Rejection> {
    let q = compute_quantities(bessel, op, m_index);
    let k = q.k();
    if k <= 0.0 {
        return Err(Rejection::ShiftedOrderNotPositive { k });
    }
    // k > beta (k+1) / (4 delta(k+1)) - 1, equivalently 4 delta(k+1) > beta
    if 4.0 * q.delta_k1() - q.beta_d() <= 0.0 {
        let threshold = q.beta_d() * (k + 1.0) / (4.0 * q.delta_k1()) - 1.0;
        return Err(Rejection::BelowSeriesThreshold { k, threshold });
    }
    Ok(AdmissibleParams {
        bessel: *bessel,
        op: *op,
        bounds: q,
    })
}

/// Lower bound on |D phi(z) / z|:
/// `(4 M k delta(k+1) - alpha(2k+1) beta + (N/8) beta^2) / (M k (4 delta(k+1) - beta))`.
///
/// Total for admissible bundles (the denominator is the admissibility
/// condition); the value can be negative, in which case the bound is
/// vacuous but still reported.
pub fn ratio_lower_bound(a: &AdmissibleParams) -> f64 {
    let q = a.quantities();
    let (k, d1, beta) = (q.k(), q.delta_k1(), q.beta_d());
    (4.0 * q.big_m() * k * d1 - q.alpha_2k_plus_1() * beta + q.big_n() / 8.0 * beta * beta)
        / (q.big_m() * k * (4.0 * d1 - beta))
}

/// Upper bound on |D phi(z) / z|:
/// `(32 delta(k)^2 - beta^2) / (8 delta(k) (4 delta(k) - beta))`,
/// defined only when 4 delta(k) - beta(d) > 0.
pub fn ratio_upper_bound(a: &AdmissibleParams) -> Result<f64> {
    let q = a.quantities();
    let (d0, beta) = (q.delta_k(), q.beta_d());
    let den_factor = 4.0 * d0 - beta;
    if den_factor <= 0.0 {
        return Err(MathError::NonpositiveDenominator {
            factor: "4*delta(k) - beta(d)",
            value: den_factor,
        });
    }
    Ok((32.0 * d0 * d0 - beta * beta) / (8.0 * d0 * den_factor))
}

/// Two-sided bound on |D phi(z) / z| over the unit disk; see
/// [`ratio_lower_bound`] and [`ratio_upper_bound`].
pub fn ratio_bounds(a: &AdmissibleParams) -> Result<(f64, f64)> {
    Ok((ratio_lower_bound(a), ratio_upper_bound(a)?))
}

/// Bound on |(D phi)'(z) - D phi(z)/z|:
/// `N delta(k+1) beta / (M k (4 delta(k+1) - beta))`.
///
/// The denominator is positive for any admissible bundle, so this is total.
pub fn diff_bound(a: &AdmissibleParams) -> f64 {
    let q = a.quantities();
    q.big_n() * q.delta_k1() * q.beta_d()
        / (q.big_m() * q.k() * (4.0 * q.delta_k1() - q.beta_d()))
}

/// Bound on |z (D phi)'(z) / D phi(z) - 1|:
/// `8 N delta(k+1) beta / (32 M k delta(k+1) - 8 alpha(2k+1) beta + N beta^2)`.
///
/// Requires the denominator (the positivity condition of the lower ratio
/// bound) to be positive.
pub fn logderiv_bound(a: &AdmissibleParams) -> Result<f64> {
    let q = a.quantities();
    let den = 32.0 * q.big_m() * q.k() * q.delta_k1() - 8.0 * q.alpha_2k_plus_1() * q.beta_d()
        + q.big_n() * q.beta_d() * q.beta_d();
    if den <= 0.0 {
        return Err(MathError::PositivityViolated {
            condition: "32*M*k*delta(k+1) - 8*alpha(2k+1)*beta + N*beta^2 > 0",
            value: den,
        });
    }
    Ok(8.0 * q.big_n() * q.delta_k1() * q.beta_d() / den)
}

/// Lower derivative bound `(4 M k delta(k+1) - alpha(3k+2) beta) / (M k (4 delta(k+1) - beta))`.
///
/// Requires its numerator to be positive, otherwise the stated bound is
/// vacuous and a domain error names the failing side.
pub fn deriv_lower_bound(a: &AdmissibleParams) -> Result<f64> {
    let q = a.quantities();
    let num = 4.0 * q.big_m() * q.k() * q.delta_k1() - q.alpha_3k_plus_2() * q.beta_d();
    if num <= 0.0 {
        return Err(MathError::PositivityViolated {
            condition: "lower: 4*M*k*delta(k+1) - alpha(3k+2)*beta > 0",
            value: num,
        });
    }
    Ok(num / (q.big_m() * q.k() * (4.0 * q.delta_k1() - q.beta_d())))
}

/// Upper derivative bound `(4 M k delta(k+1) + alpha(k+2) beta) / (M k (4 delta(k+1) - beta))`.
pub fn deriv_upper_bound(a: &AdmissibleParams) -> Result<f64> {
    let q = a.quantities();
    let num = 4.0 * q.big_m() * q.k() * q.delta_k1() + q.alpha_k_plus_2() * q.beta_d();
    if num <= 0.0 {
        return Err(MathError::PositivityViolated {
            condition: "upper: 4*M*k*delta(k+1) + alpha(k+2)*beta > 0",
            value: num,
        });
    }
    Ok(num / (q.big_m() * q.k() * (4.0 * q.delta_k1() - q.beta_d())))
}

/// Two-sided derivative bound; see [`deriv_lower_bound`] and
/// [`deriv_upper_bound`] for the per-side positivity conditions.
pub fn deriv_bounds(a: &AdmissibleParams) -> Result<(f64, f64)> {
    Ok((deriv_lower_bound(a)?, deriv_upper_bound(a)?))
}

/// Bound on |z^2 (D phi)''(z)|:
/// `(N beta / (2 M k)) (4 delta(k+1) + beta) / (4 delta(k+1) - beta)`.
pub fn second_deriv_bound(a: &AdmissibleParams) -> f64 {
    let q = a.quantities();
    (q.big_n() * q.beta_d() / (2.0 * q.big_m() * q.k())) * (4.0 * q.delta_k1() + q.beta_d())
        / (4.0 * q.delta_k1() - q.beta_d())
}

/// Exact rational evaluation of the n = 0 bound formulas, where
/// delta(k+w) = k+w, beta = |d|, and M = N = 1, so every quantity is a
/// rational function of k and |d|.
pub mod exact {
    use super::Ratio;

    pub type Rat = Ratio<i64>;

    /// n = 0 log-derivative bound `8 (k+1) d / (32 k (k+1) - 8 (2k+1) d + d^2)`.
    pub fn logderiv_bound(k: Rat, d_abs: Rat) -> Rat {
        let one = Rat::from_integer(1);
        let num = Rat::from_integer(8) * (k + one) * d_abs;
        let den = Rat::from_integer(32) * k * (k + one)
            - Rat::from_integer(8) * (Rat::from_integer(2) * k + one) * d_abs
            + d_abs * d_abs;
        num / den
    }

    /// n = 0 threshold factor in `|mu| <= factor * Re(mu)` for a single
    /// function: the reciprocal of [`logderiv_bound`].
    pub fn f_threshold_factor(k: Rat, d_abs: Rat) -> Rat {
        Rat::from_integer(1) / logderiv_bound(k, d_abs)
    }

    /// Rational coefficient r in the n = 0 exponential-operator threshold
    /// `|zeta| <= r * sqrt(3)`:
    /// `r = 3 k (4(k+1) - d) / (8 k (k+1) + 2 (k+2) d)`.
    pub fn g_threshold_coeff(k: Rat, d_abs: Rat) -> Rat {
        let one = Rat::from_integer(1);
        let num = Rat::from_integer(3) * k * (Rat::from_integer(4) * (k + one) - d_abs);
        let den = Rat::from_integer(8) * k * (k + one)
            + Rat::from_integer(2) * (k + Rat::from_integer(2)) * d_abs;
        num / den
    }
}
