//! Special functions backing the kernel and test-function machinery:
//! the Gauss hypergeometric series, the modified Bessel function of the
//! second kind via its integral representation, and the exponential
//! integral over the unit sphere.
//!
//! Everything here is evaluated from scratch in f64; no table lookups,
//! no external special-function crates.

use crate::quad::{self, QuadConfig, QuadError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("series did not converge within {max_terms} terms")]
    NonConvergent { max_terms: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Convergence controls shared by the series and quadrature evaluators.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub quad_abs_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_tol: 1e-12,
            max_terms: 10_000,
            quad_abs_tol: 1e-12,
        }
    }
}

impl Tolerance {
    fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.quad_abs_tol,
            max_depth: 40,
        }
    }
}

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && (c - c.round()).abs() < 1e-12
}

/// Gauss hypergeometric function F(a, b; c; z) for z in [0, 1).
///
/// For z > 1/2 the Euler transformation
/// F(a,b;c;z) = (1-z)^(c-a-b) F(c-a, c-b; c; z)
/// is applied first; with the parameter patterns arising from the kernel
/// evaluation (a = b, c = 1) the transformed series converges faster
/// near z = 1.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::InvalidParam(format!(
            "c = {c} is a nonpositive integer"
        )));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(SpecFunError::InvalidParam(format!("z = {z} not in [0,1)")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        // terminating series: exact, no transformation needed
        return series_2f1(a, b, c, z, tol);
    }
    if z > 0.5 {
        let factor = (1.0 - z).powf(c - a - b);
        return Ok(factor * series_2f1(c - a, c - b, c, z, tol)?);
    }
    series_2f1(a, b, c, z, tol)
}

fn series_2f1(a: f64, b: f64, c: f64, z: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for h in 0..tol.max_terms {
        let hf = h as f64;
        term *= (a + hf) * (b + hf) / ((c + hf) * (1.0 + hf)) * z;
        sum += term;
        if term == 0.0 || term.abs() <= 0.1 * tol.rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NonConvergent {
        max_terms: tol.max_terms,
    })
}

/// Derivative of the Gauss hypergeometric function,
/// F'(a,b;c;z) = (ab/c) F(a+1, b+1; c+1; z).
pub fn hyp2f1_deriv(a: f64, b: f64, c: f64, z: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if a == 0.0 || b == 0.0 {
        // shortcut also avoids pointless series work for the l = 0 kernels
        return Ok(0.0);
    }
    Ok(a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, tol)?)
}

/// Modified Bessel function of the second kind,
/// K_nu(x) = int_0^inf exp(-x cosh z) cosh(nu z) dz, for x > 0, nu >= 0.
pub fn bessel_k(nu: f64, x: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    Ok((-x).exp() * bessel_k_scaled(nu, x, tol)?)
}

/// exp(x) K_nu(x); keeps full relative accuracy where K_nu itself
/// underflows, which matters for the lambda ratio bounds at large times.
pub fn bessel_k_scaled(nu: f64, x: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if x <= 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "bessel_k requires x > 0, got {x}"
        )));
    }
    if nu < 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "bessel_k requires nu >= 0, got {nu}"
        )));
    }
    // Truncation point: the integrand decays double-exponentially, so pick Z
    // with x (cosh Z - 1) - nu Z >= -ln(tol) + 5.
    let target = -(tol.quad_abs_tol.ln()) + 5.0;
    let mut z_max = 1.0f64;
    while x * (z_max.cosh() - 1.0) - nu * z_max < target {
        z_max += 0.5;
    }
    let f = |z: f64| (-x * (z.cosh() - 1.0)).exp() * (nu * z).cosh();
    Ok(quad::integrate(&f, 0.0, z_max, tol.quad_config())?)
}

fn phi_of(tau: f64, ell: f64) -> f64 {
    tau.powf(ell + 1.0) / (ell + 1.0)
}

/// Time factor lambda(t) = C (1+t)^(1/2) K_nu(phi(1+t)) with nu = 1/(2(l+1))
/// and C normalised so that lambda(0) = 1. For l = 0 the exact closed form
/// e^(-t) is returned.
pub fn lambda_fn(t: f64, ell: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if t < 0.0 || ell < 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "lambda_fn requires t >= 0 and ell >= 0, got t={t}, ell={ell}"
        )));
    }
    if ell == 0.0 {
        return Ok((-t).exp());
    }
    let nu = 0.5 / (ell + 1.0);
    let x0 = phi_of(1.0, ell);
    let x = phi_of(1.0 + t, ell);
    let c_norm = 1.0 / bessel_k(nu, x0, tol)?;
    Ok(c_norm * (1.0 + t).sqrt() * bessel_k(nu, x, tol)?)
}

/// d(lambda)/dt, from differentiation under the integral sign; always
/// strictly negative. Uses K_nu'(x) = -(K_(nu-1)(x) + K_(nu+1)(x))/2
/// together with K_(-mu) = K_mu.
pub fn lambda_deriv(t: f64, ell: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if t < 0.0 || ell < 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "lambda_deriv requires t >= 0 and ell >= 0, got t={t}, ell={ell}"
        )));
    }
    if ell == 0.0 {
        return Ok(-(-t).exp());
    }
    let nu = 0.5 / (ell + 1.0);
    let x0 = phi_of(1.0, ell);
    let x = phi_of(1.0 + t, ell);
    let c_norm = 1.0 / bessel_k(nu, x0, tol)?;
    let k = bessel_k(nu, x, tol)?;
    // phi'(1+t) = (1+t)^ell
    let k_prime = -0.5 * (bessel_k(1.0 - nu, x, tol)? + bessel_k(nu + 1.0, x, tol)?);
    Ok(c_norm * (0.5 / (1.0 + t).sqrt() * k + (1.0 + t).powf(ell + 0.5) * k_prime))
}

/// lambda'(t)/lambda(t), computed from the exponentially scaled Bessel
/// values so that it stays finite long after lambda itself underflows.
pub fn lambda_log_deriv(t: f64, ell: f64, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if ell == 0.0 {
        return Ok(-1.0);
    }
    let nu = 0.5 / (ell + 1.0);
    let x = phi_of(1.0 + t, ell);
    let ks = bessel_k_scaled(nu, x, tol)?;
    let ks_prime = -0.5 * (bessel_k_scaled(1.0 - nu, x, tol)? + bessel_k_scaled(nu + 1.0, x, tol)?);
    Ok(0.5 / (1.0 + t) + (1.0 + t).powf(ell) * ks_prime / ks)
}

/// Surface measure of the m-sphere S^m embedded in R^(m+1).
/// surface_measure(0) = 2, surface_measure(1) = 2 pi, surface_measure(2) = 4 pi.
pub fn surface_measure(m: usize) -> f64 {
    match m {
        0 => 2.0,
        1 => 2.0 * std::f64::consts::PI,
        _ => 2.0 * std::f64::consts::PI / (m as f64 - 1.0) * surface_measure(m - 2),
    }
}

/// Integral of e^(x . omega) over the unit sphere S^(n-1), as a function of
/// r = |x|. Reduces to a 1D polar integral for n >= 2 and to 2 cosh r for
/// n = 1.
pub fn sphere_exp_integral(r: f64, n: usize, tol: &Tolerance) -> Result<f64, SpecFunError> {
    if n < 1 {
        return Err(SpecFunError::DomainError(format!(
            "sphere_exp_integral requires n >= 1, got {n}"
        )));
    }
    if r < 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "sphere_exp_integral requires r >= 0, got {r}"
        )));
    }
    if n == 1 {
        return Ok(2.0 * r.cosh());
    }
    // Factor out e^r so the adaptive tolerance acts on a bounded integrand.
    let m = n - 2;
    let f = |theta: f64| (r * (theta.cos() - 1.0)).exp() * theta.sin().powi(m as i32);
    let core = quad::integrate(&f, 0.0, std::f64::consts::PI, tol.quad_config())?;
    Ok(surface_measure(m) * r.exp() * core)
}
