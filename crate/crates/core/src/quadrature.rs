//! Composite Gauss-Legendre quadrature along a radial segment in the disk.

use num_complex::Complex64;

use crate::error::{MathError, Result};

/// Quadrature configuration: nodes per panel, relative tolerance for the
/// panel-doubling stop rule, and the refinement cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 16,
            rel_tol: 1e-10,
            max_panels: 4096,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the degree-`n` rule by Newton iteration on the Legendre
    /// polynomial from the Chebyshev initial guess. Nodes are returned in
    /// ascending order.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "a quadrature rule needs at least two nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        nodes.reverse();
        weights.reverse();
        Self { nodes, weights }
    }

    /// Integrates f over the straight segment [0, z] split into `panels`
    /// equal pieces.
    pub fn integrate_segment<F>(&self, f: &mut F, z: Complex64, panels: usize) -> Complex64
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let mut total = Complex64::new(0.0, 0.0);
        let width = 1.0 / panels as f64;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * width;
            let half = 0.5 * width;
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                let s = mid + half * x;
                total += w * f(s * z);
            }
        }
        total * z * (0.5 * width)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Panel-doubling integration of f over [0, z] until successive estimates
/// agree to the spec's relative tolerance. Returns the value and the number
/// of panels of the accepted estimate.
pub fn integrate_adaptive<F>(
    f: &mut F,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, usize)>
where
    F: FnMut(Complex64) -> Complex64,
{
    if z == Complex64::new(0.0, 0.0) {
        return Ok((z, 1));
    }
    let rule = GaussLegendre::new(spec.nodes);
    let mut panels = 1;
    let mut current = rule.integrate_segment(f, z, panels);
    loop {
        let next_panels = panels * 2;
        if next_panels > spec.max_panels {
            return Err(MathError::QuadratureNotConverged {
                last_change: f64::NAN,
                panels,
            });
        }
        let next = rule.integrate_segment(f, z, next_panels);
        let change = (next - current).norm();
        if change <= spec.rel_tol * next.norm().max(1e-30) {
            return Ok((next, next_panels));
        }
        panels = next_panels;
        current = next;
    }
}
