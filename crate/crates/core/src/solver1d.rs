//! Exact solver for the linear 1D Cauchy problem
//! u_tt - (1+t)^(2 ell) u_xx = f via the kernel representation formula,
//! plus an explicit finite-difference reference solver used for
//! cross-validation.

use crate::kernels::{self, ConePoint, KernelError, KernelParams};
use crate::quad::{self, QuadConfig, QuadError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    QuadFailure(#[from] QuadError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("finite-difference solution exceeded the overflow guard at t = {t}")]
    StabilityFailure { t: f64 },
    #[error("invalid solver parameter: {0}")]
    InvalidParam(String),
}

/// Initial data and source for the 1D problem, supplied as function handles
/// with a declared support radius R (data supported in |x| <= R at t = 0,
/// f(t, .) in |x| <= R + A(t)).
pub struct CauchyData1D {
    pub u0: Box<dyn Fn(f64) -> f64>,
    pub u1: Box<dyn Fn(f64) -> f64>,
    pub f: Box<dyn Fn(f64, f64) -> f64>,
    pub r: f64,
}

impl CauchyData1D {
    pub fn new(
        u0: impl Fn(f64) -> f64 + 'static,
        u1: impl Fn(f64) -> f64 + 'static,
        f: impl Fn(f64, f64) -> f64 + 'static,
        r: f64,
    ) -> Result<Self, SolverError> {
        if r <= 0.0 {
            return Err(SolverError::InvalidParam(format!(
                "support radius must be positive, got {r}"
            )));
        }
        Ok(CauchyData1D {
            u0: Box::new(u0),
            u1: Box::new(u1),
            f: Box::new(f),
            r,
        })
    }

    /// Homogeneous problem: zero source.
    pub fn homogeneous(
        u0: impl Fn(f64) -> f64 + 'static,
        u1: impl Fn(f64) -> f64 + 'static,
        r: f64,
    ) -> Result<Self, SolverError> {
        Self::new(u0, u1, |_, _| 0.0, r)
    }
}

/// Evaluates the representation formula at a single point (t, x): the
/// transported-data term, the K0 and K1 integrals over [0, A(t)], and the
/// iterated source integral over the backward cone.
pub fn solve_exact(
    t: f64,
    x: f64,
    data: &CauchyData1D,
    params: &KernelParams,
    q: QuadConfig,
) -> Result<f64, SolverError> {
    if t < 0.0 {
        return Err(SolverError::InvalidParam(format!(
            "solve_exact requires t >= 0, got {t}"
        )));
    }
    let ell = params.ell;
    let a_t = kernels::cap_a(t, ell);

    let mut u = 0.5
        * (1.0 + t).powf(-ell / 2.0)
        * ((data.u0)(x + a_t) + (data.u0)(x - a_t));

    if ell > 0.0 {
        let g0 = |y: f64| {
            let k = kernels::k0(t, y, params).expect("cone point by construction");
            ((data.u0)(x - y) + (data.u0)(x + y)) * k
        };
        u += quad::integrate(&g0, 0.0, a_t, q)?;
    }

    let g1 = |y: f64| {
        let k = kernels::k1(t, y, params).expect("cone point by construction");
        ((data.u1)(x - y) + (data.u1)(x + y)) * k
    };
    u += quad::integrate(&g1, 0.0, a_t, q)?;

    // iterated source integral: outer in the emission time b, inner in y;
    // the inner tolerance is tightened so the outer estimate stays reliable
    if t > 0.0 {
        let inner_cfg = QuadConfig {
            abs_tol: 0.1 * q.abs_tol / t.max(1.0),
            ..q
        };
        let phi_t = kernels::phi(1.0 + t, ell);
        let outer = |b: f64| {
            let radius = phi_t - kernels::phi(1.0 + b, ell);
            if radius <= 0.0 {
                return 0.0;
            }
            let inner = |y: f64| {
                let pt = ConePoint::new(t, b, y.min(radius), ell)
                    .expect("cone point by construction");
                let e = kernels::e_kernel(&pt, params).expect("kernel on cone");
                ((data.f)(b, x - y) + (data.f)(b, x + y)) * e
            };
            quad::integrate(&inner, 0.0, radius, inner_cfg).unwrap_or(f64::NAN)
        };
        let source = quad::integrate(&outer, 0.0, t, q)?;
        if !source.is_finite() {
            return Err(SolverError::QuadFailure(QuadError::DepthExhausted(0)));
        }
        u += params.c_ell() * source;
    }
    Ok(u)
}

/// Backward characteristic cone of an observation point (t0, x0): data
/// outside it cannot influence the solution there.
#[derive(Debug, Clone, Copy)]
pub struct DependenceRegion {
    pub t0: f64,
    pub x0: f64,
    pub ell: f64,
}

/// Describes the domain of dependence of the point (t0, x0).
pub fn domain_of_dependence(t0: f64, x0: f64, params: &KernelParams) -> DependenceRegion {
    DependenceRegion {
        t0,
        x0,
        ell: params.ell,
    }
}

impl DependenceRegion {
    /// Interval of initial data that can influence the observation point.
    pub fn base_interval(&self) -> (f64, f64) {
        let a = kernels::cap_a(self.t0, self.ell);
        (self.x0 - a, self.x0 + a)
    }

    /// Half-width of the cone cross-section at time t < t0.
    pub fn radius_at(&self, t: f64) -> f64 {
        kernels::phi(1.0 + self.t0, self.ell) - kernels::phi(1.0 + t, self.ell)
    }
}

/// Space-time grid produced by the finite-difference solver. Snapshots are
/// kept at a bounded number of times; the final time level is always last.
pub struct FdGrid {
    pub xs: Vec<f64>,
    pub times: Vec<f64>,
    pub snapshots: Vec<Vec<f64>>,
    pub dx: f64,
}

impl FdGrid {
    /// Linear interpolation on the final time level.
    pub fn value_at(&self, x: f64) -> f64 {
        let u = self.snapshots.last().expect("at least one snapshot");
        let x0 = self.xs[0];
        let s = (x - x0) / self.dx;
        if s < 0.0 || s >= (self.xs.len() - 1) as f64 {
            return 0.0;
        }
        let i = s.floor() as usize;
        let w = s - i as f64;
        u[i] * (1.0 - w) + u[i + 1] * w
    }
}

const OVERFLOW_GUARD: f64 = 1e12;
const MAX_SNAPSHOTS: usize = 256;

/// Explicit second-order scheme for u_tt = (1+t)^(2 ell) u_xx + f with the
/// time step dt = cfl dx / (1+t)^ell; exists as a reference oracle for
/// `solve_exact`.
pub fn solve_fd(
    data: &CauchyData1D,
    params: &KernelParams,
    t_horizon: f64,
    dx: f64,
    cfl: f64,
) -> Result<FdGrid, SolverError> {
    if dx <= 0.0 || !(0.0..1.0).contains(&cfl) || cfl == 0.0 || t_horizon <= 0.0 {
        return Err(SolverError::InvalidParam(format!(
            "require dx > 0, cfl in (0,1), T > 0; got dx={dx}, cfl={cfl}, T={t_horizon}"
        )));
    }
    let ell = params.ell;
    let half_width = data.r + kernels::cap_a(t_horizon, ell) + 2.0 * dx;
    let m = (2.0 * half_width / dx).ceil() as usize + 1;
    let xs: Vec<f64> = (0..m).map(|i| -half_width + i as f64 * dx).collect();

    let mut u: Vec<f64> = xs.iter().map(|&x| (data.u0)(x)).collect();
    let mut v: Vec<f64> = xs.iter().map(|&x| (data.u1)(x)).collect();

    let accel = |t: f64, u: &[f64]| -> Vec<f64> {
        let c2 = (1.0 + t).powf(2.0 * ell);
        let mut a = vec![0.0; m];
        for i in 1..m - 1 {
            let lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (dx * dx);
            a[i] = c2 * lap + (data.f)(t, xs[i]);
        }
        a
    };

    let snap_every = (t_horizon / (MAX_SNAPSHOTS as f64 - 1.0)).max(f64::MIN_POSITIVE);
    let mut times = vec![0.0];
    let mut snapshots = vec![u.clone()];
    let mut next_snap = snap_every;

    let mut t = 0.0;
    let mut a = accel(0.0, &u);
    while t < t_horizon {
        let dt = (cfl * dx / (1.0 + t).powf(ell)).min(t_horizon - t);
        // velocity-Verlet step: second order also under a varying step
        for i in 0..m {
            v[i] += 0.5 * dt * a[i];
            u[i] += dt * v[i];
        }
        t += dt;
        a = accel(t, &u);
        let mut sup = 0.0f64;
        for i in 0..m {
            v[i] += 0.5 * dt * a[i];
            sup = sup.max(u[i].abs());
        }
        if !sup.is_finite() || sup > OVERFLOW_GUARD {
            return Err(SolverError::StabilityFailure { t });
        }
        if t >= next_snap || t >= t_horizon {
            times.push(t);
            snapshots.push(u.clone());
            next_snap = t + snap_every;
        }
    }
    Ok(FdGrid {
        xs,
        times,
        snapshots,
        dx,
    })
}

/// One refinement level of the FD-versus-exact comparison.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub dx: f64,
    pub error: f64,
    /// Richardson order estimate against the previous level, if any.
    pub order: Option<f64>,
}

/// Max-norm error of the FD solver against `solve_exact` at a fixed set of
/// probe points, over `levels` successive halvings of dx.
pub fn convergence_study(
    data: &CauchyData1D,
    params: &KernelParams,
    t_horizon: f64,
    dx0: f64,
    levels: usize,
    q: QuadConfig,
) -> Result<Vec<ConvergenceRow>, SolverError> {
    if levels < 2 {
        return Err(SolverError::InvalidParam(
            "convergence_study requires at least 2 levels".into(),
        ));
    }
    let span = data.r + kernels::cap_a(t_horizon, params.ell);
    let probes: Vec<f64> = (0..9).map(|i| -span + 2.0 * span * i as f64 / 8.0).collect();
    let exact: Vec<f64> = probes
        .iter()
        .map(|&x| solve_exact(t_horizon, x, data, params, q))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(levels);
    let mut dx = dx0;
    let mut prev_err: Option<f64> = None;
    for _ in 0..levels {
        let grid = solve_fd(data, params, t_horizon, dx, 0.5)?;
        let err = probes
            .iter()
            .zip(&exact)
            .map(|(&x, &e)| (grid.value_at(x) - e).abs())
            .fold(0.0, f64::max);
        let order = prev_err.map(|p| (p / err).log2());
        rows.push(ConvergenceRow { dx, error: err, order });
        prev_err = Some(err);
        dx *= 0.5;
    }
    Ok(rows)
}
