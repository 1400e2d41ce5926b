//! The fundamental-solution kernel E of the 1D operator
//! d^2/dt^2 - (1+t)^(2 ell) d^2/dx^2, its closed-form partial derivatives,
//! the data kernels K0 and K1, and a randomized verification suite for the
//! algebraic identities those kernels satisfy.

use crate::exponents::TransformedModel;
use crate::specfun::{self, SpecFunError, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("point (t={t}, b={b}, y={y}) lies outside the propagation cone")]
    ConeViolation { t: f64, b: f64, y: f64 },
    #[error("invalid kernel parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Absolute slack on |y| - (A(t) - A(b)) before a point is rejected;
/// quadrature nodes routinely land exactly on the cone boundary.
pub const CONE_TOL: f64 = 1e-12;

/// Speed exponent plus derived kernel constants and evaluation tolerances.
#[derive(Debug, Clone, Copy)]
pub struct KernelParams {
    pub ell: f64,
    pub tol: Tolerance,
}

impl KernelParams {
    pub fn new(ell: f64) -> Result<Self, KernelError> {
        if ell < 0.0 {
            return Err(KernelError::InvalidParam(format!(
                "ell must be >= 0, got {ell}"
            )));
        }
        Ok(KernelParams {
            ell,
            tol: Tolerance::default(),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.ell / (2.0 * (self.ell + 1.0))
    }

    pub fn c_ell(&self) -> f64 {
        TransformedModel {
            n: 1,
            ell: self.ell,
            k: 0.0,
        }
        .c_ell()
    }
}

/// phi(tau) = tau^(ell+1) / (ell+1).
pub fn phi(tau: f64, ell: f64) -> f64 {
    tau.powf(ell + 1.0) / (ell + 1.0)
}

/// Integrated propagation speed A(t) = phi(1+t) - phi(1): the light-cone
/// radius reached from time 0 by time t.
pub fn cap_a(t: f64, ell: f64) -> f64 {
    phi(1.0 + t, ell) - phi(1.0, ell)
}

/// Inverse of A: A_inv(z) = ((ell+1) z + 1)^(1/(ell+1)) - 1.
pub fn cap_a_inv(z: f64, ell: f64) -> f64 {
    ((ell + 1.0) * z + 1.0).powf(1.0 / (ell + 1.0)) - 1.0
}

/// A point (t, b, y) of the closed forward cone |y| <= A(t) - A(b), 0 <= b <= t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    pub t: f64,
    pub b: f64,
    pub y: f64,
}

impl ConePoint {
    /// Validates cone membership; |y| marginally past the boundary (within
    /// `CONE_TOL`) is clamped onto it.
    pub fn new(t: f64, b: f64, y: f64, ell: f64) -> Result<Self, KernelError> {
        if t < 0.0 || b < 0.0 || b > t {
            return Err(KernelError::ConeViolation { t, b, y });
        }
        let radius = cap_a(t, ell) - cap_a(b, ell);
        if y.abs() > radius + CONE_TOL {
            return Err(KernelError::ConeViolation { t, b, y });
        }
        let y = y.clamp(-radius, radius);
        Ok(ConePoint { t, b, y })
    }
}

/// Argument of the Gauss hypergeometric factor,
/// ((phi(1+t) - phi(1+b))^2 - y^2) / ((phi(1+t) + phi(1+b))^2 - y^2),
/// always in [0, 1) on the cone.
pub fn hyp_argument(pt: &ConePoint, params: &KernelParams) -> f64 {
    let pt_t = phi(1.0 + pt.t, params.ell);
    let pt_b = phi(1.0 + pt.b, params.ell);
    hyp_argument_raw(pt_t, pt_b, pt.y)
}

fn hyp_argument_raw(phi_t: f64, phi_b: f64, y: f64) -> f64 {
    let num = ((phi_t - phi_b) * (phi_t - phi_b) - y * y).max(0.0);
    let den = (phi_t + phi_b) * (phi_t + phi_b) - y * y;
    (num / den).min(1.0 - f64::EPSILON)
}

/// Fundamental-solution kernel
/// E(t, y; b, 0) = ((phi(1+t) + phi(1+b))^2 - y^2)^(-gamma) F(gamma, gamma; 1; z)
/// with z = hyp_argument. Strictly positive on the cone; identically 1 when
/// ell = 0.
pub fn e_kernel(pt: &ConePoint, params: &KernelParams) -> Result<f64, KernelError> {
    e_raw(pt.t, pt.b, pt.y, params)
}

// Unchecked evaluator, symmetric in (t, b); shared with the verification
// suite, which exercises the symmetries with swapped time arguments.
fn e_raw(t: f64, b: f64, y: f64, params: &KernelParams) -> Result<f64, KernelError> {
    let gamma = params.gamma();
    if gamma == 0.0 {
        return Ok(1.0);
    }
    let phi_t = phi(1.0 + t, params.ell);
    let phi_b = phi(1.0 + b, params.ell);
    let p = (phi_t + phi_b) * (phi_t + phi_b) - y * y;
    let z = hyp_argument_raw(phi_t, phi_b, y);
    Ok(p.powf(-gamma) * specfun::hyp2f1(gamma, gamma, 1.0, z, &params.tol)?)
}

/// Closed-form partial derivative of E(t, y; b, 0) with respect to y.
pub fn de_dy(pt: &ConePoint, params: &KernelParams) -> Result<f64, KernelError> {
    let gamma = params.gamma();
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let phi_t = phi(1.0 + pt.t, params.ell);
    let phi_b = phi(1.0 + pt.b, params.ell);
    let y = pt.y;
    let p = (phi_t + phi_b) * (phi_t + phi_b) - y * y;
    let z = hyp_argument_raw(phi_t, phi_b, y);
    let f = specfun::hyp2f1(gamma, gamma, 1.0, z, &params.tol)?;
    let f_shift = specfun::hyp2f1(gamma + 1.0, gamma + 1.0, 2.0, z, &params.tol)?;
    let dz_dy = -8.0 * phi_t * phi_b * y / (p * p);
    Ok(2.0 * gamma * y * p.powf(-gamma - 1.0) * f
        + p.powf(-gamma) * gamma * gamma * f_shift * dz_dy)
}

/// Closed-form partial derivative of E(t, y; b, 0) with respect to b;
/// nonpositive on the cone.
pub fn de_db(pt: &ConePoint, params: &KernelParams) -> Result<f64, KernelError> {
    de_db_raw(pt.t, pt.b, pt.y, params)
}

fn de_db_raw(t: f64, b: f64, y: f64, params: &KernelParams) -> Result<f64, KernelError> {
    let gamma = params.gamma();
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let phi_t = phi(1.0 + t, params.ell);
    let phi_b = phi(1.0 + b, params.ell);
    let p = (phi_t + phi_b) * (phi_t + phi_b) - y * y;
    let z = hyp_argument_raw(phi_t, phi_b, y);
    let f = specfun::hyp2f1(gamma, gamma, 1.0, z, &params.tol)?;
    let f_shift = specfun::hyp2f1(gamma + 1.0, gamma + 1.0, 2.0, z, &params.tol)?;
    let speed_b = (1.0 + b).powf(params.ell);
    Ok(
        -2.0 * gamma * speed_b * (phi_b + phi_t) * p.powf(-gamma - 1.0) * f
            + 4.0 * gamma * gamma * p.powf(-gamma - 2.0) * f_shift * speed_b * phi_t
                * (phi_b * phi_b - phi_t * phi_t + y * y),
    )
}

/// Velocity-data kernel K1(t, y) = c_ell E(t, y; 0, 0); positive, and
/// identically 1/2 at ell = 0 (d'Alembert).
pub fn k1(t: f64, y: f64, params: &KernelParams) -> Result<f64, KernelError> {
    let pt = ConePoint::new(t, 0.0, y, params.ell)?;
    Ok(params.c_ell() * e_kernel(&pt, params)?)
}

/// Position-data kernel K0(t, y) = -c_ell dE/db(t, y; b, 0)|_{b=0};
/// nonnegative, and identically 0 at ell = 0.
pub fn k0(t: f64, y: f64, params: &KernelParams) -> Result<f64, KernelError> {
    let pt = ConePoint::new(t, 0.0, y, params.ell)?;
    Ok(-params.c_ell() * de_db(&pt, params)?)
}

/// Maximum relative deviations found for each kernel identity.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct IdentityReport {
    /// E(t,x;b,y) = E(b,x;t,y)
    pub time_symmetry: f64,
    /// E(t,x;b,y) = E(t,y;b,x)
    pub space_symmetry: f64,
    /// E(t,x;b,y) = E(b,x-y;t,0)
    pub translation: f64,
    /// E(t,-x;b,0) = E(b,x;t,0)
    pub evenness: f64,
    /// closed form of E at the cone boundary y = A(t)-A(b)
    pub boundary_value: f64,
    /// closed form of dE/dy at the cone boundary
    pub boundary_dy: f64,
    /// closed form of E at the swapped point b = A_inv(A(t)-y)
    pub swapped_value: f64,
    /// closed form of dE/db at b = A_inv(A(t)-y)
    pub swapped_db: f64,
}

impl IdentityReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.time_symmetry,
            self.space_symmetry,
            self.translation,
            self.evenness,
            self.boundary_value,
            self.boundary_dy,
            self.swapped_value,
            self.swapped_db,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel_dev(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale < 1e-300 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Checks all eight kernel identities at (t, b) with `samples` random
/// admissible offsets; both sides of the derivative identities are closed
/// forms, no finite differences are involved.
pub fn verify_lemma41(
    t: f64,
    b: f64,
    params: &KernelParams,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport, KernelError> {
    if !(0.0..t).contains(&b) {
        return Err(KernelError::InvalidParam(format!(
            "verify_lemma41 requires 0 <= b < t, got t={t}, b={b}"
        )));
    }
    let ell = params.ell;
    let gamma = params.gamma();
    let phi_t = phi(1.0 + t, ell);
    let phi_b = phi(1.0 + b, ell);
    let radius = phi_t - phi_b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport::default();

    // boundary closed forms are y-independent; evaluate them once
    let boundary_lhs = e_raw(t, b, radius, params)?;
    let boundary_rhs = 2f64.powf(-2.0 * gamma)
        * (ell + 1.0).powf(2.0 * gamma)
        * (1.0 + t).powf(-ell / 2.0)
        * (1.0 + b).powf(-ell / 2.0);
    report.boundary_value = rel_dev(boundary_lhs, boundary_rhs);

    let boundary_dy_lhs = de_dy(&ConePoint::new(t, b, radius, ell)?, params)?;
    let boundary_dy_rhs = 2f64.powf(-2.0 * gamma - 3.0)
        * ell
        * (ell + 2.0)
        * (ell + 1.0).powf(2.0 * gamma)
        * (1.0 + t).powf(-1.5 * ell - 1.0)
        * (1.0 + b).powf(-1.5 * ell - 1.0)
        * radius;
    report.boundary_dy = rel_dev(boundary_dy_lhs, boundary_dy_rhs);

    for _ in 0..samples {
        // random interior offsets: x and y with |x - y| inside the cone
        let y_off: f64 = rng.gen_range(-radius..radius);
        let x_off = {
            // keep x - y admissible as well
            let lo = (y_off - radius).max(-radius);
            let hi = (y_off + radius).min(radius);
            rng.gen_range(lo..hi)
        };

        let base = e_raw(t, b, x_off - y_off, params)?;
        report.time_symmetry = report
            .time_symmetry
            .max(rel_dev(base, e_raw(b, t, x_off - y_off, params)?));
        report.space_symmetry = report
            .space_symmetry
            .max(rel_dev(base, e_raw(t, b, y_off - x_off, params)?));
        report.translation = report
            .translation
            .max(rel_dev(base, e_raw(b, t, x_off - y_off, params)?));
        report.evenness = report
            .evenness
            .max(rel_dev(e_raw(t, b, -x_off, params)?, e_raw(b, t, x_off, params)?));

        // swapped-point closed forms, using y in (0, A(t)) so that the
        // swapped time A_inv(A(t) - y) stays nonnegative
        let y_pos: f64 = rng.gen_range(f64::EPSILON..cap_a(t, ell));
        let b_swap = cap_a_inv(cap_a(t, ell) - y_pos, ell);
        let swapped_lhs = e_raw(b_swap, t, y_pos, params)?;
        let swapped_rhs = 2f64.powf(-2.0 * gamma)
            * (ell + 1.0).powf(gamma)
            * (1.0 + t).powf(-ell / 2.0)
            * (phi_t - y_pos).powf(-gamma);
        report.swapped_value = report.swapped_value.max(rel_dev(swapped_lhs, swapped_rhs));

        let swapped_db_lhs = de_db_raw(t, b_swap, y_pos, params)?;
        let swapped_db_rhs = -2f64.powf(-2.0 * gamma - 1.0)
            * (ell + 1.0).powf(2.0 * gamma)
            * (phi_t - y_pos).powf(gamma - 1.0)
            * phi_t.powf(-gamma - 1.0)
            * (gamma * (2.0 * phi_t - y_pos) + gamma * gamma * y_pos);
        report.swapped_db = report.swapped_db.max(rel_dev(swapped_db_lhs, swapped_db_rhs));
    }
    Ok(report)
}
