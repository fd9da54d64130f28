//! The three univalence-certified integral constructions and an empirical
//! injectivity oracle.
//!
//! Each operator is evaluated by composite Gauss-Legendre quadrature along
//! the straight segment [0, z]. All fractional powers are principal-branch
//! (`exp(w Ln(.))`); if a power base crosses the negative real axis between
//! consecutive quadrature nodes the evaluation is flagged rather than
//! silently jumping sheets.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criteria::{FParams, GParams, HParams};
use crate::error::Result;
use crate::grid::DiskGrid;
use crate::operator::{apply_operator, evaluate};
use crate::quadrature::{integrate_adaptive, QuadratureSpec};
use crate::special::{phi_series, NormalizedSeries};

/// Result of one quadrature-backed operator evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEval {
    pub value: Complex64,
    /// Panels of the accepted composite estimate.
    pub panels: usize,
    /// Set when a principal-branch power base crossed the negative real
    /// axis between consecutive integrand samples.
    pub branch_warning: bool,
}

fn principal_pow(base: Complex64, exponent: Complex64) -> Complex64 {
    (exponent * base.ln()).exp()
}

fn check_in_disk(z: Complex64) -> Result<()> {
    if z.norm() >= 1.0 {
        return Err(crate::error::MathError::OutsideUnitDisk { modulus: z.norm() });
    }
    Ok(())
}

// Flags a jump of more than pi in the argument of a power base between
// consecutive samples along the segment (samples restart when s decreases).
struct BranchWatch {
    last_s: f64,
    last_args: Vec<f64>,
    tripped: bool,
}

impl BranchWatch {
    fn new(factors: usize) -> Self {
        Self {
            last_s: f64::INFINITY,
            last_args: vec![f64::NAN; factors],
            tripped: false,
        }
    }

    fn observe(&mut self, s: f64, index: usize, arg: f64) {
        if index == 0 {
            if s < self.last_s {
                for a in &mut self.last_args {
                    *a = f64::NAN;
                }
            }
            self.last_s = s;
        }
        let prev = self.last_args[index];
        if prev.is_finite() && (arg - prev).abs() > std::f64::consts::PI {
            self.tripped = true;
        }
        self.last_args[index] = arg;
    }
}

/// Product-type operator
/// `H(z) = [eta Int_0^z t^{eta-1} prod_j (D phi_j(t)/t)^{1/mu_j} dt]^{1/eta}`.
#[derive(Debug, Clone)]
pub struct HOperator {
    factors: Vec<NormalizedSeries>,
    inv_mus: Vec<Complex64>,
    eta: Complex64,
}

impl HOperator {
    pub fn new(p: &HParams, trunc: usize) -> Result<Self> {
        let factors = p
            .component_params()?
            .iter()
            .map(|bp| apply_operator(&phi_series(bp, trunc)?, p.op()))
            .collect::<Result<Vec<_>>>()?;
        let inv_mus = p.mus().iter().map(|mu| 1.0 / mu).collect();
        Ok(Self {
            factors,
            inv_mus,
            eta: p.eta(),
        })
    }

    pub fn evaluate(&self, z: Complex64, spec: &QuadratureSpec) -> Result<IntegralEval> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(IntegralEval {
                value: z,
                panels: 0,
                branch_warning: false,
            });
        }
        check_in_disk(z)?;
        let z_norm = z.norm();
        let mut watch = BranchWatch::new(self.factors.len());
        let eta = self.eta;
        let mut integrand = |t: Complex64| -> Complex64 {
            let mut g = principal_pow(t, eta - 1.0);
            for (j, (series, inv_mu)) in self.factors.iter().zip(&self.inv_mus).enumerate() {
                // t is strictly inside the disk, so evaluate cannot fail
                let ratio = evaluate(series, t).expect("segment stays in the disk").value / t;
                watch.observe(t.norm() / z_norm, j, ratio.arg());
                g *= principal_pow(ratio, *inv_mu);
            }
            g
        };
        let (integral, panels) = integrate_adaptive(&mut integrand, z, spec)?;
        let scaled = eta * integral;
        let value = if scaled.norm() == 0.0 {
            scaled
        } else {
            principal_pow(scaled, 1.0 / eta)
        };
        Ok(IntegralEval {
            value,
            panels,
            branch_warning: watch.tripped,
        })
    }
}

/// Power-type operator, evaluated through the rewriting
/// `F(z) = [(m mu + 1) Int_0^z t^{m mu} prod_j (D phi_j(t)/t)^mu dt]^{1/(m mu + 1)}`
/// whose integrand is finite at t = 0.
#[derive(Debug, Clone)]
pub struct FOperator {
    factors: Vec<NormalizedSeries>,
    mu: Complex64,
}

impl FOperator {
    pub fn new(p: &FParams, trunc: usize) -> Result<Self> {
        let factors = p
            .component_params()?
            .iter()
            .map(|bp| apply_operator(&phi_series(bp, trunc)?, p.op()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            factors,
            mu: p.mu(),
        })
    }

    pub fn evaluate(&self, z: Complex64, spec: &QuadratureSpec) -> Result<IntegralEval> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(IntegralEval {
                value: z,
                panels: 0,
                branch_warning: false,
            });
        }
        check_in_disk(z)?;
        let z_norm = z.norm();
        let m = self.factors.len() as f64;
        let mu = self.mu;
        let mut watch = BranchWatch::new(self.factors.len());
        let mut integrand = |t: Complex64| -> Complex64 {
            let mut g = principal_pow(t, m * mu);
            for (j, series) in self.factors.iter().enumerate() {
                let ratio = evaluate(series, t).expect("segment stays in the disk").value / t;
                watch.observe(t.norm() / z_norm, j, ratio.arg());
                g *= principal_pow(ratio, mu);
            }
            g
        };
        let (integral, panels) = integrate_adaptive(&mut integrand, z, spec)?;
        let root = m * mu + 1.0;
        let scaled = root * integral;
        let value = if scaled.norm() == 0.0 {
            scaled
        } else {
            principal_pow(scaled, 1.0 / root)
        };
        Ok(IntegralEval {
            value,
            panels,
            branch_warning: watch.tripped,
        })
    }
}

/// Exponential-type operator
/// `G(z) = [zeta Int_0^z t^{zeta-1} (e^{D phi(t)})^zeta dt]^{1/zeta}`.
///
/// The power of the exponential is computed as `exp(zeta D phi(t))`, which
/// equals the principal power while |Im(D phi)| < pi; outside that strip
/// the branch flag is raised.
#[derive(Debug, Clone)]
pub struct GOperator {
    series: Option<NormalizedSeries>,
    zeta: Complex64,
}

impl GOperator {
    pub fn new(p: &GParams, trunc: usize) -> Result<Self> {
        let series = apply_operator(&phi_series(p.bessel(), trunc)?, p.op())?;
        Ok(Self {
            series: Some(series),
            zeta: p.zeta(),
        })
    }

    /// Builds the operator directly from a series exponent; `None` is the
    /// formal zero exponent, for which G is the identity map.
    pub fn from_series(series: Option<NormalizedSeries>, zeta: Complex64) -> Self {
        Self { series, zeta }
    }

    pub fn evaluate(&self, z: Complex64, spec: &QuadratureSpec) -> Result<IntegralEval> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(IntegralEval {
                value: z,
                panels: 0,
                branch_warning: false,
            });
        }
        check_in_disk(z)?;
        let zeta = self.zeta;
        let mut off_strip = false;
        let mut integrand = |t: Complex64| -> Complex64 {
            let q = match &self.series {
                Some(series) => {
                    evaluate(series, t)
                        .expect("segment stays in the disk")
                        .value
                }
                None => Complex64::new(0.0, 0.0),
            };
            if q.im.abs() >= std::f64::consts::PI {
                off_strip = true;
            }
            principal_pow(t, zeta - 1.0) * (zeta * q).exp()
        };
        let (integral, panels) = integrate_adaptive(&mut integrand, z, spec)?;
        let scaled = zeta * integral;
        let value = if scaled.norm() == 0.0 {
            scaled
        } else {
            principal_pow(scaled, 1.0 / zeta)
        };
        Ok(IntegralEval {
            value,
            panels,
            branch_warning: off_strip,
        })
    }
}

/// Threshold on the pairwise difference ratio below which two samples are
/// declared a collision.
pub const COLLISION_THRESHOLD: f64 = 1e-8;

/// Verdict of the empirical injectivity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InjectivityReport {
    pub points: usize,
    pub pairs_checked: usize,
    /// min over sampled pairs of |f(z1) - f(z2)| / |z1 - z2|.
    pub min_ratio: f64,
    pub worst_pair: Option<(Complex64, Complex64)>,
    /// True when `min_ratio <= COLLISION_THRESHOLD`.
    pub collision: bool,
}

/// Maximum point count for which every pair is checked; beyond it a
/// fixed-seed random subset of `pair_budget` pairs is sampled.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 4096;

/// Samples f on the grid and reports the minimum pairwise difference ratio.
///
/// Deterministic given the seed: all pairs are checked when the grid has at
/// most [`EXHAUSTIVE_PAIR_LIMIT`] points, otherwise a ChaCha8-seeded subset.
pub fn empirical_injectivity<F>(
    mut f: F,
    grid: &DiskGrid,
    pair_budget: usize,
    seed: u64,
) -> Result<InjectivityReport>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let points: Vec<Complex64> = grid.points().collect();
    let values: Vec<Complex64> = points
        .iter()
        .map(|&z| f(z))
        .collect::<Result<Vec<_>>>()?;

    let mut min_ratio = f64::INFINITY;
    let mut worst_pair = None;
    let mut pairs_checked = 0usize;
    let consider = |i: usize, j: usize, min_ratio: &mut f64, worst: &mut Option<_>| {
        let dz = (points[i] - points[j]).norm();
        if dz == 0.0 {
            return;
        }
        let ratio = (values[i] - values[j]).norm() / dz;
        if ratio < *min_ratio {
            *min_ratio = ratio;
            *worst = Some((points[i], points[j]));
        }
    };

    if points.len() <= EXHAUSTIVE_PAIR_LIMIT {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                consider(i, j, &mut min_ratio, &mut worst_pair);
                pairs_checked += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while pairs_checked < pair_budget {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            if i == j {
                continue;
            }
            consider(i, j, &mut min_ratio, &mut worst_pair);
            pairs_checked += 1;
        }
    }

    Ok(InjectivityReport {
        points: points.len(),
        pairs_checked,
        min_ratio,
        worst_pair,
        collision: min_ratio <= COLLISION_THRESHOLD,
    })
}
