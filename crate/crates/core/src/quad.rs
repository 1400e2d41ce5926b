//! Adaptive Gauss-Legendre quadrature.
//!
//! All integrands in this crate are smooth on the open integration domain,
//! so plain interval bisection against an absolute tolerance is enough;
//! no singularity handling is provided.

use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("adaptive quadrature exhausted max depth {0}")]
    DepthExhausted(u32),
}

/// Tuning knobs for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            max_depth: 30,
        }
    }
}

const GL_ORDER: usize = 15;

/// Nodes and weights of the 15-point rule on [-1, 1], computed once by
/// Newton iteration on the Legendre recurrence.
fn gl_rule() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        for k in 0..n {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // p0, p1 walk the three-term recurrence up to P_n
                let (mut p0, mut p1) = (1.0, x);
                for j in 1..n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0, x);
            for j in 1..n {
                let jf = j as f64;
                let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            nodes[n - 1 - k] = x;
            weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

/// Fixed 15-point Gauss-Legendre estimate on [a, b].
pub fn fixed_gl<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gl_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..GL_ORDER {
        acc += weights[i] * f(mid + half * nodes[i]);
    }
    acc * half
}

/// Integrates `f` over [a, b] to absolute tolerance `abs_tol` by recursive
/// interval bisection, comparing the whole-interval estimate against the
/// sum over both halves.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: QuadConfig,
) -> Result<f64, QuadError> {
    if a == b {
        return Ok(0.0);
    }
    let whole = fixed_gl(f, a, b);
    // the per-level halved tolerance must not sink below what floating
    // point can resolve on the scale of the full integral, or integrands
    // that are noisy at roundoff level (e.g. iterated quadratures) would
    // recurse forever around their discontinuities
    let floor = 1e-15 * (1.0 + whole.abs());
    adapt(f, a, b, whole, cfg.abs_tol, floor, cfg.max_depth)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    floor: f64,
    depth: u32,
) -> Result<f64, QuadError> {
    let mid = 0.5 * (a + b);
    let left = fixed_gl(f, a, mid);
    let right = fixed_gl(f, mid, b);
    let refined = left + right;
    if (refined - whole).abs() <= tol.max(floor) {
        return Ok(refined);
    }
    if depth == 0 {
        return Err(QuadError::DepthExhausted(0));
    }
    let l = adapt(f, a, mid, left, 0.5 * tol, floor, depth - 1)?;
    let r = adapt(f, mid, b, right, 0.5 * tol, floor, depth - 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // degree 29 is the exactness limit of the 15-point rule
        let v = fixed_gl(&|x: f64| x.powi(8), 0.0, 1.0);
        assert!((v - 1.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let cfg = QuadConfig::default();
        let v = integrate(&|x: f64| x.exp(), 0.0, 1.0, cfg).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-12);

        let v = integrate(&|x: f64| (1.0 + 50.0 * x * x).recip(), -1.0, 1.0, cfg).unwrap();
        let exact = 2.0 / 50f64.sqrt() * (50f64.sqrt()).atan();
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn zero_width_interval() {
        let cfg = QuadConfig::default();
        assert_eq!(integrate(&|x: f64| x.sin(), 2.0, 2.0, cfg).unwrap(), 0.0);
    }
}
