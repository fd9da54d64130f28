//! Univalence criterion checkers.
//!
//! The formula-level criteria (for the product, power, and exponential
//! integral operators) compare closed-form thresholds against parameter
//! magnitudes; a pass certifies the corresponding integral operator is
//! univalent on the disk. The lemma-level checkers sample hypotheses on a
//! polar grid; a grid pass is evidence for the hypothesis, not a proof,
//! and the reports label the attained values as grid suprema.

use num_complex::Complex64;

use crate::bounds::{check_admissible, logderiv_bound, AdmissibleParams};
use crate::error::{MathError, Result};
use crate::grid::DiskGrid;
use crate::operator::{apply_operator, evaluate, OperatorParams};
use crate::special::{phi_series, BesselParams, NormalizedSeries};

/// Tolerance for formula-level pass/fail decisions.
pub const FORMULA_TOL: f64 = 1e-12;
/// Tolerance for grid-supremum pass/fail decisions.
pub const GRID_TOL: f64 = 1e-9;

/// 3 sqrt(3), the Becker-type constant.
pub fn three_sqrt_three() -> f64 {
    3.0 * 3.0f64.sqrt()
}

/// Outcome of one criterion check.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub criterion: String,
    pub threshold: f64,
    pub attained: f64,
    /// threshold - attained; nonnegative (within tolerance) iff passed.
    pub margin: f64,
    pub passed: bool,
    /// Human-readable echo of the inputs and any side conditions.
    pub inputs: String,
}

impl CriterionReport {
    fn new(criterion: &str, threshold: f64, attained: f64, tol: f64, inputs: String) -> Self {
        let margin = threshold - attained;
        Self {
            criterion: criterion.to_string(),
            threshold,
            attained,
            margin,
            passed: margin >= -tol,
            inputs,
        }
    }

    fn fail(criterion: &str, threshold: f64, inputs: String) -> Self {
        Self {
            criterion: criterion.to_string(),
            threshold,
            attained: f64::INFINITY,
            margin: f64::NEG_INFINITY,
            passed: false,
            inputs,
        }
    }
}

fn min_order_bundle(
    orders: &[f64],
    b: f64,
    d: Complex64,
    op: &OperatorParams,
    m_index: u32,
) -> Result<AdmissibleParams> {
    let k_min = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let bessel = BesselParams::new(k_min, b, d)?;
    check_admissible(&bessel, op, m_index).map_err(|r| MathError::Inadmissible(r.to_string()))
}

/// Parameters of the product-type integral operator
/// `[eta Int t^{eta-1} prod_j (D phi_j(t)/t)^{1/mu_j} dt]^{1/eta}`.
#[derive(Debug, Clone)]
pub struct HParams {
    orders: Vec<f64>,
    b: f64,
    d: Complex64,
    op: OperatorParams,
    mus: Vec<Complex64>,
    eta: Complex64,
    c: Complex64,
}

impl HParams {
    /// All component functions share (b, d); the orders v_j may differ.
    /// Requires Re(eta) > 0, every mu_j nonzero, |c| <= 1 and c != -1.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        orders: &[f64],
        b: f64,
        d: Complex64,
        op: OperatorParams,
        mus: Vec<Complex64>,
        eta: Complex64,
        c: Complex64,
    ) -> Result<Self> {
        if orders.is_empty() || orders.len() != mus.len() {
            return Err(MathError::InvalidCriterion {
                reason: "orders and mus must be nonempty lists of equal length",
            });
        }
        for &v in orders {
            BesselParams::new(v, b, d)?;
        }
        if eta.re <= 0.0 {
            return Err(MathError::InvalidCriterion {
                reason: "eta must have positive real part",
            });
        }
        if mus.iter().any(|m| m.norm() == 0.0) {
            return Err(MathError::InvalidCriterion {
                reason: "every mu_j must be nonzero",
            });
        }
        if c.norm() > 1.0 || c == Complex64::new(-1.0, 0.0) {
            return Err(MathError::InvalidCriterion {
                reason: "c must satisfy |c| <= 1 and c != -1",
            });
        }
        Ok(Self {
            orders: orders.to_vec(),
            b,
            d,
            op,
            mus,
            eta,
            c,
        })
    }

    pub fn component_params(&self) -> Result<Vec<BesselParams>> {
        self.orders
            .iter()
            .map(|&v| BesselParams::new(v, self.b, self.d))
            .collect()
    }

    pub fn op(&self) -> &OperatorParams {
        &self.op
    }

    pub fn mus(&self) -> &[Complex64] {
        &self.mus
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }
}

/// Pass iff `|c| + B(k_min) sum_j 1/|eta mu_j| <= 1`, where B is the
/// log-derivative bound at the smallest shifted order. A pass certifies the
/// product-type operator is univalent.
pub fn criterion_h(p: &HParams, m_index: u32) -> Result<CriterionReport> {
    let bundle = min_order_bundle(&p.orders, p.b, p.d, &p.op, m_index)?;
    let bound = logderiv_bound(&bundle)?;
    let sum: f64 = p.mus.iter().map(|mu| 1.0 / (p.eta * mu).norm()).sum();
    let attained = p.c.norm() + bound * sum;
    let inputs = format!(
        "m={}, k_min={}, |c|={}, bound={}, sum 1/|eta*mu_j|={}",
        p.orders.len(),
        bundle.quantities().k(),
        p.c.norm(),
        bound,
        sum
    );
    Ok(CriterionReport::new(
        "criterion_H",
        1.0,
        attained,
        FORMULA_TOL,
        inputs,
    ))
}

/// Parameters of the power-type integral operator
/// `[(m mu + 1) Int prod_j (D phi_j(t))^mu dt]^{1/(m mu + 1)}`.
#[derive(Debug, Clone)]
pub struct FParams {
    orders: Vec<f64>,
    b: f64,
    d: Complex64,
    op: OperatorParams,
    mu: Complex64,
}

impl FParams {
    /// Requires Re(mu) > 0.
    pub fn new(
        orders: &[f64],
        b: f64,
        d: Complex64,
        op: OperatorParams,
        mu: Complex64,
    ) -> Result<Self> {
        if orders.is_empty() {
            return Err(MathError::InvalidCriterion {
                reason: "orders must be nonempty",
            });
        }
        for &v in orders {
            BesselParams::new(v, b, d)?;
        }
        if mu.re <= 0.0 {
            return Err(MathError::InvalidCriterion {
                reason: "mu must have positive real part",
            });
        }
        Ok(Self {
            orders: orders.to_vec(),
            b,
            d,
            op,
            mu,
        })
    }

    pub fn component_params(&self) -> Result<Vec<BesselParams>> {
        self.orders
            .iter()
            .map(|&v| BesselParams::new(v, self.b, self.d))
            .collect()
    }

    pub fn op(&self) -> &OperatorParams {
        &self.op
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn m(&self) -> usize {
        self.orders.len()
    }
}

/// Pass iff `|mu| <= (1/m) Re(mu) / B(k_min)`. At d = 0 the bound term
/// vanishes and the threshold is infinite, so the check passes vacuously.
pub fn criterion_f(p: &FParams, m_index: u32) -> Result<CriterionReport> {
    let bundle = min_order_bundle(&p.orders, p.b, p.d, &p.op, m_index)?;
    let m = p.orders.len() as f64;
    let attained = p.mu.norm();
    let (threshold, bound) = if bundle.quantities().beta_d() == 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        let bound = logderiv_bound(&bundle)?;
        (p.mu.re / (m * bound), bound)
    };
    let inputs = format!(
        "m={}, k_min={}, Re(mu)={}, bound={}",
        p.orders.len(),
        bundle.quantities().k(),
        p.mu.re,
        bound
    );
    Ok(CriterionReport::new(
        "criterion_F",
        threshold,
        attained,
        FORMULA_TOL,
        inputs,
    ))
}

/// Parameters of the exponential-type integral operator
/// `[zeta Int t^{zeta-1} (e^{D phi(t)})^zeta dt]^{1/zeta}`.
#[derive(Debug, Clone)]
pub struct GParams {
    bessel: BesselParams,
    op: OperatorParams,
    zeta: Complex64,
}

impl GParams {
    /// Requires Re(zeta) >= 1.
    pub fn new(bessel: BesselParams, op: OperatorParams, zeta: Complex64) -> Result<Self> {
        if zeta.re < 1.0 {
            return Err(MathError::InvalidCriterion {
                reason: "zeta must have real part at least 1",
            });
        }
        Ok(Self { bessel, op, zeta })
    }

    pub fn bessel(&self) -> &BesselParams {
        &self.bessel
    }

    pub fn op(&self) -> &OperatorParams {
        &self.op
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }
}

/// Threshold for the exponential-type operator:
/// `|zeta| <= 3 sqrt(3) M k (4 delta(k+1) - beta) / (8 M k delta(k+1) + 2 alpha(k+2) beta)`.
///
/// The denominator equals `2 M k (4 delta(k+1) - beta) + 4 N delta(k+1) beta`,
/// which is positive for every admissible bundle.
pub fn g_threshold(a: &AdmissibleParams) -> f64 {
    let q = a.quantities();
    let (k, d1, beta) = (q.k(), q.delta_k1(), q.beta_d());
    three_sqrt_three() * q.big_m() * k * (4.0 * d1 - beta)
        / (8.0 * q.big_m() * k * d1 + 2.0 * q.alpha_k_plus_2() * beta)
}

/// Pass iff `|zeta|` is within [`g_threshold`] (Re(zeta) >= 1 is enforced by
/// [`GParams::new`]).
pub fn criterion_g(p: &GParams, m_index: u32) -> Result<CriterionReport> {
    let bundle = check_admissible(&p.bessel, &p.op, m_index)
        .map_err(|r| MathError::Inadmissible(r.to_string()))?;
    let threshold = g_threshold(&bundle);
    let attained = p.zeta.norm();
    let inputs = format!(
        "k={}, zeta={}, Re(zeta)={}",
        bundle.quantities().k(),
        p.zeta,
        p.zeta.re
    );
    Ok(CriterionReport::new(
        "criterion_G",
        threshold,
        attained,
        FORMULA_TOL,
        inputs,
    ))
}

/// Which sign the grid check of the eta-power hypothesis uses: the lemma
/// statement reads `1 + |z|^{2 eta}`, while the final chain of the proof
/// that applies it reads `1 - |z|^{2 eta}`. Both are available; the
/// statement form is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PescarVariant {
    #[default]
    OnePlus,
    OneMinus,
}

// |z|^{2 eta} as exp(2 eta ln |z|): the principal power of the positive
// real number |z|, a complex value when eta is complex.
fn abs_pow_two_eta(r: f64, eta: Complex64) -> Complex64 {
    (2.0 * eta * r.ln()).exp()
}

/// Grid check of the hypothesis
/// `|c |z|^{2 eta} + (1 +- |z|^{2 eta}) z f''(z) / (eta f'(z))| <= 1`;
/// a pass certifies `[eta Int t^{eta-1} f'(t) dt]^{1/eta}` is univalent.
pub fn lemma_pescar_check(
    f: &NormalizedSeries,
    eta: Complex64,
    c: Complex64,
    variant: PescarVariant,
    grid: &DiskGrid,
) -> Result<CriterionReport> {
    if eta.re <= 0.0 {
        return Err(MathError::InvalidCriterion {
            reason: "eta must have positive real part",
        });
    }
    if c.norm() > 1.0 || c == Complex64::new(-1.0, 0.0) {
        return Err(MathError::InvalidCriterion {
            reason: "c must satisfy |c| <= 1 and c != -1",
        });
    }
    let name = "lemma_pescar";
    let mut max = 0.0f64;
    for z in grid.points() {
        let ev = evaluate(f, z)?;
        if ev.first_derivative.norm() == 0.0 {
            return Ok(CriterionReport::fail(
                name,
                1.0,
                format!("f'(z) = 0 at grid point z = {z}; criterion cannot hold"),
            ));
        }
        let w = abs_pow_two_eta(z.norm(), eta);
        let sign = match variant {
            PescarVariant::OnePlus => 1.0,
            PescarVariant::OneMinus => -1.0,
        };
        let q = (c * w + (1.0 + sign * w) * z * ev.second_derivative / (eta * ev.first_derivative))
            .norm();
        max = max.max(q);
    }
    let inputs = format!(
        "eta={eta}, c={c}, variant={variant:?}, grid supremum over {} points",
        grid.len()
    );
    Ok(CriterionReport::new(name, 1.0, max, GRID_TOL, inputs))
}

/// Grid check of `(1 - |z|^{2 Re(mu)}) / Re(mu) |z f''(z)/f'(z)| <= 1`;
/// a pass certifies the eta-power construction for every Re(eta) >= Re(mu).
pub fn lemma_pascu_check(
    f: &NormalizedSeries,
    mu: Complex64,
    grid: &DiskGrid,
) -> Result<CriterionReport> {
    if mu.re <= 0.0 {
        return Err(MathError::InvalidCriterion {
            reason: "mu must have positive real part",
        });
    }
    let name = "lemma_pascu";
    let mut max = 0.0f64;
    for z in grid.points() {
        let ev = evaluate(f, z)?;
        if ev.first_derivative.norm() == 0.0 {
            return Ok(CriterionReport::fail(
                name,
                1.0,
                format!("f'(z) = 0 at grid point z = {z}; criterion cannot hold"),
            ));
        }
        let r = z.norm();
        let q = (1.0 - r.powf(2.0 * mu.re)) / mu.re
            * (z * ev.second_derivative / ev.first_derivative).norm();
        max = max.max(q);
    }
    let inputs = format!(
        "mu={mu}, grid supremum over {} points; certifies all Re(eta) >= {}",
        grid.len(),
        mu.re
    );
    Ok(CriterionReport::new(name, 1.0, max, GRID_TOL, inputs))
}

/// Grid check of the Becker-type hypothesis `|z q'(z)| <= theta` together
/// with the side conditions `theta > 1`, `2 theta |zeta| <= 3 sqrt(3)` and
/// `Re(zeta) >= 1`; a pass certifies the exponential-type operator built
/// from q. `q = None` stands for the zero function.
pub fn lemma_becker_check(
    q: Option<&NormalizedSeries>,
    zeta: Complex64,
    theta: f64,
    grid: &DiskGrid,
) -> Result<CriterionReport> {
    if theta <= 1.0 {
        return Err(MathError::InvalidCriterion {
            reason: "theta must exceed 1",
        });
    }
    let mut max = 0.0f64;
    if let Some(series) = q {
        for z in grid.points() {
            let ev = evaluate(series, z)?;
            max = max.max((z * ev.first_derivative).norm());
        }
    }
    let becker = 2.0 * theta * zeta.norm();
    let side_ok = becker <= three_sqrt_three() + FORMULA_TOL && zeta.re >= 1.0;
    let mut report = CriterionReport::new(
        "lemma_becker",
        theta,
        max,
        GRID_TOL,
        format!(
            "zeta={zeta}, theta={theta}, 2*theta*|zeta|={becker} (limit {}), Re(zeta)={}",
            three_sqrt_three(),
            zeta.re
        ),
    );
    report.passed = report.passed && side_ok;
    Ok(report)
}

/// Grid extrema of the bounded quantities of a transformed series, used by
/// the verifier to compare sampled behavior against the closed-form bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledExtrema {
    /// min / max over the grid of |f(z)/z|
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// max of |f'(z) - f(z)/z|
    pub diff_max: f64,
    /// max of |z f'(z)/f(z) - 1|
    pub logderiv_max: f64,
    /// max of |z f'(z)|
    pub zderiv_max: f64,
    /// min of |f'(z)| (the quantity the lower derivative bound controls;
    /// |z f'(z)| itself tends to 0 at the origin for every series)
    pub deriv_min: f64,
    /// max of |z^2 f''(z)|
    pub second_max: f64,
}

/// Samples the seven bound-related extrema of a series over a grid.
pub fn sampled_extrema(series: &NormalizedSeries, grid: &DiskGrid) -> Result<SampledExtrema> {
    let mut e = SampledExtrema {
        ratio_min: f64::INFINITY,
        ratio_max: 0.0,
        diff_max: 0.0,
        logderiv_max: 0.0,
        zderiv_max: 0.0,
        deriv_min: f64::INFINITY,
        second_max: 0.0,
    };
    for z in grid.points() {
        let ev = evaluate(series, z)?;
        let (f, f1, f2) = (ev.value, ev.first_derivative, ev.second_derivative);
        let ratio = (f / z).norm();
        e.ratio_min = e.ratio_min.min(ratio);
        e.ratio_max = e.ratio_max.max(ratio);
        e.diff_max = e.diff_max.max((f1 - f / z).norm());
        e.logderiv_max = e.logderiv_max.max((z * f1 / f - 1.0).norm());
        e.zderiv_max = e.zderiv_max.max((z * f1).norm());
        e.deriv_min = e.deriv_min.min(f1.norm());
        e.second_max = e.second_max.max((z * z * f2).norm());
    }
    Ok(e)
}

/// Grid check of the four direct univalence inequalities for F = D phi.
/// With P = z^2 F'/F^2 and T = (zF)''/F' - 2 z F'/F, the quantities are
///
/// ```text
/// |P T| < 1,  |T / P| < 1/4,  |T / (P - 1)| < 1/2,  Re(P T / (P - 1)) < 1
/// ```
///
/// and a pass of any single one certifies D phi univalent. Grid points
/// where a denominator vanishes exactly are reported as failures with the
/// location.
pub fn direct_criteria_check(
    bessel: &BesselParams,
    op: &OperatorParams,
    trunc: usize,
    grid: &DiskGrid,
) -> Result<[CriterionReport; 4]> {
    let series = apply_operator(&phi_series(bessel, trunc)?, op)?;
    let names = [
        "direct_PT",
        "direct_T_over_P",
        "direct_T_over_Pminus1",
        "direct_re_PT_over_Pminus1",
    ];
    let thresholds = [1.0, 0.25, 0.5, 1.0];
    let mut maxima = [f64::NEG_INFINITY; 4];
    let mut broken: [Option<Complex64>; 4] = [None; 4];

    for z in grid.points() {
        let ev = evaluate(&series, z)?;
        let (f, f1, f2) = (ev.value, ev.first_derivative, ev.second_derivative);
        if f.norm() == 0.0 || f1.norm() == 0.0 {
            for slot in &mut broken {
                slot.get_or_insert(z);
            }
            continue;
        }
        let t = (2.0 * f1 + z * f2) / f1 - 2.0 * z * f1 / f;
        let p = z * z * f1 / (f * f);
        maxima[0] = maxima[0].max((p * t).norm());
        maxima[1] = maxima[1].max((t / p).norm());
        let pm1 = p - 1.0;
        if pm1.norm() == 0.0 {
            broken[2].get_or_insert(z);
            broken[3].get_or_insert(z);
        } else {
            maxima[2] = maxima[2].max((t / pm1).norm());
            maxima[3] = maxima[3].max((p * t / pm1).re);
        }
    }

    let mut out = Vec::with_capacity(4);
    for i in 0..4 {
        let report = if let Some(z) = broken[i] {
            CriterionReport::fail(
                names[i],
                thresholds[i],
                format!("denominator vanished at grid point z = {z}"),
            )
        } else {
            CriterionReport::new(
                names[i],
                thresholds[i],
                maxima[i],
                GRID_TOL,
                format!("grid supremum over {} points", grid.len()),
            )
        };
        out.push(report);
    }
    Ok(out.try_into().expect("exactly four reports"))
}
