//! Critical-exponent calculus for the scale-invariant damped/massive wave
//! model and its transformed variable-speed form, together with the
//! classification of the model and the blow-up verdict.

use serde::{Serialize, Serializer};
use std::fmt;
use std::rc::Rc;
use thiserror::Error;

/// Relative tolerance for equality tests against critical exponents.
pub const CRITICAL_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExponentError {
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error("delta = {0} outside the admissible range (0, 1]")]
    DeltaOutOfRange(f64),
}

/// A critical exponent: a finite real > 1 or the infinity sentinel used for
/// the one-dimensional Strauss convention. Orders above every finite value
/// and serializes as the string "inf".
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(pub f64);

impl Exponent {
    pub const INFINITE: Exponent = Exponent(f64::INFINITY);

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn max(self, other: Exponent) -> Exponent {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{:.16e}", self.0)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

/// Relative equality against a critical value (infinite critical values are
/// never attained by a finite p).
fn rel_eq(a: f64, b: Exponent) -> bool {
    if b.is_infinite() {
        return false;
    }
    (a - b.0).abs() <= CRITICAL_EQ_TOL * a.abs().max(b.0.abs())
}

/// Parameters (n, mu1, mu2^2) of the original damped/massive Cauchy problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleInvariantModel {
    pub n: usize,
    pub mu1: f64,
    pub mu2sq: f64,
}

impl ScaleInvariantModel {
    pub fn new(n: usize, mu1: f64, mu2sq: f64) -> Result<Self, ExponentError> {
        if n < 1 {
            return Err(ExponentError::DomainError("n must be >= 1".into()));
        }
        if mu1 < 0.0 || mu2sq < 0.0 {
            return Err(ExponentError::DomainError(format!(
                "mu1 and mu2sq must be nonnegative, got mu1={mu1}, mu2sq={mu2sq}"
            )));
        }
        Ok(ScaleInvariantModel { n, mu1, mu2sq })
    }

    pub fn delta(&self) -> f64 {
        delta(self.mu1, self.mu2sq)
    }

    /// sqrt(delta), after checking delta lies in the admissible range (0, 1].
    pub fn sqrt_delta(&self) -> Result<f64, ExponentError> {
        let d = self.delta();
        if d <= 0.0 || d > 1.0 {
            return Err(ExponentError::DeltaOutOfRange(d));
        }
        Ok(d.sqrt())
    }
}

/// Parameters (n, ell, k) of the variable-speed problem
/// u_tt - (1+t)^(2 ell) Delta u = (ell+1)^2 (1+t)^k |u|^p, plus the derived
/// kernel constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedModel {
    pub n: usize,
    pub ell: f64,
    pub k: f64,
}

impl TransformedModel {
    pub fn new(n: usize, ell: f64, k: f64) -> Result<Self, ExponentError> {
        if n < 1 {
            return Err(ExponentError::DomainError("n must be >= 1".into()));
        }
        if ell < 0.0 {
            return Err(ExponentError::DomainError(format!(
                "ell must be >= 0, got {ell}"
            )));
        }
        if k <= -2.0 {
            return Err(ExponentError::DomainError(format!(
                "k must be > -2, got {k}"
            )));
        }
        Ok(TransformedModel { n, ell, k })
    }

    pub fn gamma(&self) -> f64 {
        self.ell / (2.0 * (self.ell + 1.0))
    }

    pub fn nu(&self) -> f64 {
        0.5 / (self.ell + 1.0)
    }

    pub fn c_ell(&self) -> f64 {
        let lp1 = self.ell + 1.0;
        2f64.powf(-1.0 / lp1) * lp1.powf(-self.ell / lp1)
    }
}

/// Fujita exponent 1 + 2/m, accepting real (shifted) dimensions.
pub fn fujita(m: f64) -> Result<f64, ExponentError> {
    if m <= 0.0 {
        return Err(ExponentError::DomainError(format!(
            "fujita requires m > 0, got {m}"
        )));
    }
    Ok(1.0 + 2.0 / m)
}

/// Fujita branch with the natural limit 1 + 2/m -> infinity as m -> 0+;
/// internal to the verdict machinery where shifted dimensions can reach 0.
fn fujita_branch(m: f64) -> Exponent {
    if m <= 0.0 {
        Exponent::INFINITE
    } else {
        Exponent(1.0 + 2.0 / m)
    }
}

/// Strauss exponent: positive root of (m-1)p^2 - (m+1)p - 2 = 0 for m > 1,
/// with the conventional infinity sentinel at m = 1.
pub fn strauss(m: f64) -> Result<Exponent, ExponentError> {
    if m < 1.0 {
        return Err(ExponentError::DomainError(format!(
            "strauss requires m >= 1, got {m}"
        )));
    }
    if m == 1.0 {
        return Ok(Exponent::INFINITE);
    }
    let disc = (m + 1.0) * (m + 1.0) + 8.0 * (m - 1.0);
    Ok(Exponent(((m + 1.0) + disc.sqrt()) / (2.0 * (m - 1.0))))
}

/// Exponent p1(n; ell, k) = ((ell+1)n + k + 1) / ((ell+1)n - 1). The single
/// degenerate case (ell+1)n = 1 (that is, n = 1 with ell = 0) returns the
/// infinity sentinel, consistent with the one-dimensional Strauss convention.
pub fn p1_nlk(n: usize, ell: f64, k: f64) -> Result<Exponent, ExponentError> {
    check_nlk(n, ell, k)?;
    let s = (ell + 1.0) * n as f64;
    if s <= 1.0 {
        return Ok(Exponent::INFINITE);
    }
    Ok(Exponent((s + k + 1.0) / (s - 1.0)))
}

/// Exponent p0(n; ell, k): the unique positive root of
/// ((ell+1)n - 1) p^2 - ((ell+1)n + 2k + 1 - 2 ell) p - 2(ell+1) = 0.
pub fn p0_nlk(n: usize, ell: f64, k: f64) -> Result<f64, ExponentError> {
    check_nlk(n, ell, k)?;
    let s = (ell + 1.0) * n as f64;
    if s <= 1.0 {
        return Err(ExponentError::DomainError(format!(
            "p0_nlk requires (ell+1) n > 1, got (ell+1) n = {s}"
        )));
    }
    // a p^2 + b p + c with a > 0, c < 0: exactly one positive root; the
    // stable form avoids cancellation since -b + sqrt(disc) adds same signs.
    let a = s - 1.0;
    let b = -(s + 2.0 * k + 1.0 - 2.0 * ell);
    let c = -2.0 * (ell + 1.0);
    let disc = b * b - 4.0 * a * c;
    let root = if b <= 0.0 {
        (-b + disc.sqrt()) / (2.0 * a)
    } else {
        2.0 * c / (-b - disc.sqrt())
    };
    Ok(root)
}

fn check_nlk(n: usize, ell: f64, k: f64) -> Result<(), ExponentError> {
    if n < 1 || ell < 0.0 {
        return Err(ExponentError::DomainError(format!(
            "require n >= 1 and ell >= 0, got n={n}, ell={ell}"
        )));
    }
    if k <= -2.0 {
        return Err(ExponentError::DomainError(format!(
            "require k > -2, got k={k}"
        )));
    }
    Ok(())
}

/// Discriminant delta = (mu1 - 1)^2 - 4 mu2^2.
pub fn delta(mu1: f64, mu2sq: f64) -> f64 {
    (mu1 - 1.0) * (mu1 - 1.0) - 4.0 * mu2sq
}

/// Maps the damped/massive model at a given nonlinearity power p to the
/// variable-speed form: ell = (1 - sqrt(delta))/sqrt(delta) and
/// k = ((1 - mu1 - sqrt(delta))/(2 sqrt(delta)))(p - 1) + 2(1 - sqrt(delta))/sqrt(delta).
///
/// The returned k is reported as-is even when k <= -2; downstream verdicts
/// work on the original-model side precisely because k depends on p.
pub fn transform_params(
    model: &ScaleInvariantModel,
    p: f64,
) -> Result<TransformedModel, ExponentError> {
    let sd = model.sqrt_delta()?;
    let ell = (1.0 - sd) / sd;
    let k = (1.0 - model.mu1 - sd) / (2.0 * sd) * (p - 1.0) + 2.0 * (1.0 - sd) / sd;
    Ok(TransformedModel {
        n: model.n,
        ell,
        k,
    })
}

/// Initial data for the transformed problem, as radial (or 1D) profiles,
/// together with the factor by which the support radius shrinks.
pub struct TransformedData {
    pub u0: Box<dyn Fn(f64) -> f64>,
    pub u1: Box<dyn Fn(f64) -> f64>,
    /// Support radius of (u0, u1) is `support_scale` times that of (v0, v1).
    pub support_scale: f64,
}

/// Data map accompanying `transform_params`:
/// u0(x) = v0(x / sqrt(delta)),
/// u1(x) = (1/sqrt(delta)) (v1(x / sqrt(delta)) + ((mu1 - 1 + sqrt(delta))/2) v0(x / sqrt(delta))).
pub fn transform_data(
    v0: impl Fn(f64) -> f64 + 'static,
    v1: impl Fn(f64) -> f64 + 'static,
    model: &ScaleInvariantModel,
) -> Result<TransformedData, ExponentError> {
    let sd = model.sqrt_delta()?;
    let coeff = (model.mu1 - 1.0 + sd) / 2.0;
    let v0 = Rc::new(v0);
    let v0_for_u1 = Rc::clone(&v0);
    Ok(TransformedData {
        u0: Box::new(move |x| v0(x / sd)),
        u1: Box::new(move |x| (v1(x / sd) + coeff * v0_for_u1(x / sd)) / sd),
        support_scale: sd,
    })
}

/// Blow-up range endpoint for the damped/massive model:
/// max{ p0(n + mu1), fujita(n + (mu1 - 1)/2 - sqrt(delta)/2) }.
pub fn p_mu(n: usize, mu1: f64, mu2sq: f64) -> Result<Exponent, ExponentError> {
    let (s, f) = p_mu_branches(n, mu1, mu2sq)?;
    Ok(s.max(f))
}

/// The Strauss and Fujita branches of p_mu, in that order.
pub fn p_mu_branches(
    n: usize,
    mu1: f64,
    mu2sq: f64,
) -> Result<(Exponent, Exponent), ExponentError> {
    let model = ScaleInvariantModel::new(n, mu1, mu2sq)?;
    let sd = model.sqrt_delta()?;
    let strauss_branch = strauss(n as f64 + mu1)?;
    let fujita_b = fujita_branch(n as f64 + (mu1 - 1.0) / 2.0 - sd / 2.0);
    Ok((strauss_branch, fujita_b))
}

/// Which exponent dominates the blow-up range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    HyperbolicLike,
    ParabolicLike,
    Boundary,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::HyperbolicLike => "hyperbolic-like",
            Classification::ParabolicLike => "parabolic-like",
            Classification::Boundary => "boundary",
        };
        write!(f, "{s}")
    }
}

/// The damping threshold at which the dominant branch of p_mu flips for
/// mu2 = 0: (n^2 + n + 2)/(n + 2).
pub fn mu_tilde(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf + nf + 2.0) / (nf + 2.0)
}

/// Classifies the model by the dominant branch of p_mu.
pub fn classify(n: usize, mu1: f64, mu2sq: f64) -> Result<Classification, ExponentError> {
    let (s, f) = p_mu_branches(n, mu1, mu2sq)?;
    if s.is_infinite() && f.is_infinite() {
        return Ok(Classification::Boundary);
    }
    if s.is_infinite() {
        return Ok(Classification::HyperbolicLike);
    }
    if f.is_infinite() {
        return Ok(Classification::ParabolicLike);
    }
    if (s.0 - f.0).abs() <= CRITICAL_EQ_TOL * s.0.abs().max(f.0.abs()) {
        Ok(Classification::Boundary)
    } else if s.0 > f.0 {
        Ok(Classification::HyperbolicLike)
    } else {
        Ok(Classification::ParabolicLike)
    }
}

/// Blow-up verdict for the damped/massive model at nonlinearity power p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// p strictly below the blow-up endpoint.
    BlowupSubcritical,
    /// p equals the endpoint on its Fujita branch.
    BlowupCriticalP1,
    /// p equals the endpoint on its Strauss branch, in the dimension where
    /// the critical Strauss case is covered.
    BlowupCriticalP0,
    /// The stated blow-up conditions do not apply.
    NotCoveredByTheorem,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Sign conditions the data must satisfy for the blow-up statement to apply.
pub const SIGN_CONDITIONS: &str = "v0 >= 0, v1 + ((mu1 - 1 + sqrt(delta))/2) v0 >= 0";

/// Determines the blow-up verdict for the damped/massive model directly from
/// the (mu1, mu2)-side inequalities; the critical Strauss case is covered
/// only in dimension n = 2.
pub fn blowup_verdict(
    n: usize,
    mu1: f64,
    mu2sq: f64,
    p: f64,
) -> Result<Verdict, ExponentError> {
    if p <= 1.0 {
        return Err(ExponentError::DomainError(format!(
            "blowup_verdict requires p > 1, got {p}"
        )));
    }
    let (s, f) = p_mu_branches(n, mu1, mu2sq)?;
    let pm = s.max(f);
    // critical cases first, so near-critical p is not misread as subcritical
    if rel_eq(p, pm) {
        if rel_eq(p, f) {
            return Ok(Verdict::BlowupCriticalP1);
        }
        if rel_eq(p, s) && n == 2 {
            return Ok(Verdict::BlowupCriticalP0);
        }
        return Ok(Verdict::NotCoveredByTheorem);
    }
    if Exponent(p) < pm {
        return Ok(Verdict::BlowupSubcritical);
    }
    Ok(Verdict::NotCoveredByTheorem)
}

/// Blow-up verdict for the transformed problem given (n, ell, k) directly.
/// Here the critical p0 case applies for every n >= 2.
pub fn transformed_verdict(
    n: usize,
    ell: f64,
    k: f64,
    p: f64,
) -> Result<Verdict, ExponentError> {
    if p <= 1.0 {
        return Err(ExponentError::DomainError(format!(
            "transformed_verdict requires p > 1, got {p}"
        )));
    }
    let p1 = p1_nlk(n, ell, k)?;
    let p0 = if (ell + 1.0) * n as f64 > 1.0 {
        Exponent(p0_nlk(n, ell, k)?)
    } else {
        Exponent::INFINITE
    };
    let pne = p0.max(p1);
    if rel_eq(p, pne) {
        if rel_eq(p, p1) {
            return Ok(Verdict::BlowupCriticalP1);
        }
        if rel_eq(p, p0) && n >= 2 {
            return Ok(Verdict::BlowupCriticalP0);
        }
        return Ok(Verdict::NotCoveredByTheorem);
    }
    if Exponent(p) < pne {
        return Ok(Verdict::BlowupSubcritical);
    }
    Ok(Verdict::NotCoveredByTheorem)
}

/// Outcome of the ODE blow-up criterion check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KatoCase {
    /// a >= 1 and a > (q-2)/(p-1): supercritical growth, blow-up follows.
    CaseI,
    /// q >= p+1 and a = (q-2)/(p-1): the critical balance; requires a
    /// sufficiently large lower-bound constant, which this check does not
    /// (and cannot) certify.
    CaseII,
    Inconclusive,
}

impl fmt::Display for KatoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Structural check of the ODE blow-up criterion: given F'' >= k1 (t+R)^(-q) F^p
/// and F >= k0 (t+R)^a, reports which case (if any) the exponents satisfy.
/// k0 and k1 are recorded for context only; no largeness claim is made.
pub fn kato_check(p: f64, q: f64, a: f64, _k0: f64, _k1: f64) -> KatoCase {
    let threshold = (q - 2.0) / (p - 1.0);
    // the equality case is tested first: within tolerance of the threshold a
    // point cannot be meaningfully claimed to lie strictly above it
    if q >= p + 1.0 && (a - threshold).abs() <= 1e-12 * a.abs().max(threshold.abs()).max(1.0) {
        return KatoCase::CaseII;
    }
    if a >= 1.0 && a > threshold {
        return KatoCase::CaseI;
    }
    KatoCase::Inconclusive
}

/// All exponents, the classification, and (when p is supplied) the verdict,
/// in the flat layout consumed by the command-line front end.
#[derive(Debug, Serialize)]
pub struct ExponentReport {
    pub p_fujita: Exponent,
    pub p_strauss: Exponent,
    pub p1_nlk: Option<Exponent>,
    pub p0_nlk: Option<Exponent>,
    pub p_ne: Option<Exponent>,
    pub p_mu: Exponent,
    pub classification: Classification,
    pub verdict: Option<Verdict>,
    pub sign_conditions: Option<String>,
}

impl ExponentReport {
    /// Report for the damped/massive model; the transformed-side exponents
    /// are included only when p is given, since k depends on p.
    pub fn for_model(
        model: &ScaleInvariantModel,
        p: Option<f64>,
    ) -> Result<ExponentReport, ExponentError> {
        let (s, f) = p_mu_branches(model.n, model.mu1, model.mu2sq)?;
        let classification = classify(model.n, model.mu1, model.mu2sq)?;
        let (mut p1, mut p0, mut pne) = (None, None, None);
        let mut verdict = None;
        if let Some(p) = p {
            let tm = transform_params(model, p)?;
            if tm.k > -2.0 {
                let p1v = p1_nlk(tm.n, tm.ell, tm.k)?;
                let p0v = if (tm.ell + 1.0) * tm.n as f64 > 1.0 {
                    Exponent(p0_nlk(tm.n, tm.ell, tm.k)?)
                } else {
                    Exponent::INFINITE
                };
                pne = Some(p0v.max(p1v));
                p1 = Some(p1v);
                p0 = Some(p0v);
            }
            verdict = Some(blowup_verdict(model.n, model.mu1, model.mu2sq, p)?);
        }
        Ok(ExponentReport {
            p_fujita: f,
            p_strauss: s,
            p1_nlk: p1,
            p0_nlk: p0,
            p_ne: pne,
            p_mu: s.max(f),
            classification,
            verdict,
            sign_conditions: verdict.map(|_| SIGN_CONDITIONS.to_string()),
        })
    }

    /// Report for the transformed problem given (n, ell, k) directly.
    pub fn for_transformed(
        model: &TransformedModel,
        p: Option<f64>,
    ) -> Result<ExponentReport, ExponentError> {
        let p1 = p1_nlk(model.n, model.ell, model.k)?;
        let p0 = if (model.ell + 1.0) * model.n as f64 > 1.0 {
            Exponent(p0_nlk(model.n, model.ell, model.k)?)
        } else {
            Exponent::INFINITE
        };
        let pne = p0.max(p1);
        let classification = if p0 == p1 {
            Classification::Boundary
        } else if p0 > p1 {
            Classification::HyperbolicLike
        } else {
            Classification::ParabolicLike
        };
        let verdict = p
            .map(|p| transformed_verdict(model.n, model.ell, model.k, p))
            .transpose()?;
        Ok(ExponentReport {
            p_fujita: Exponent(f64::NAN),
            p_strauss: Exponent(f64::NAN),
            p1_nlk: Some(p1),
            p0_nlk: Some(p0),
            p_ne: Some(pne),
            p_mu: pne,
            classification,
            verdict,
            sign_conditions: verdict.map(|_| "u0 >= 0, u1 >= 0".to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn fujita_values() {
        assert_eq!(fujita(1.0).unwrap(), 3.0);
        assert_eq!(fujita(2.0).unwrap(), 2.0);
        assert_eq!(fujita(4.0).unwrap(), 1.5);
        assert!(fujita(0.0).is_err());
    }

    #[test]
    fn strauss_values() {
        let p2 = strauss(2.0).unwrap().value();
        assert!(close(p2, (3.0 + 17f64.sqrt()) / 2.0, 1e-15));
        let p3 = strauss(3.0).unwrap().value();
        assert!(close(p3, 1.0 + 2f64.sqrt(), 1e-15));
        assert!(strauss(1.0).unwrap().is_infinite());
        assert!(strauss(0.5).is_err());
    }

    #[test]
    fn p1_values() {
        assert_eq!(p1_nlk(3, 0.0, 0.0).unwrap().value(), 2.0);
        assert!(close(p1_nlk(2, 1.0, 0.0).unwrap().value(), 5.0 / 3.0, 1e-15));
        assert_eq!(p1_nlk(1, 1.0, 2.0).unwrap().value(), 5.0);
        assert!(p1_nlk(1, 0.0, 0.5).unwrap().is_infinite());
    }

    #[test]
    fn p0_reduces_to_strauss() {
        for n in 2..=10 {
            let a = p0_nlk(n, 0.0, 0.0).unwrap();
            let b = strauss(n as f64).unwrap().value();
            assert!(close(a, b, 1e-12), "n={n}: {a} vs {b}");
            assert!(p1_nlk(n, 0.0, 0.0).unwrap().value() < a);
        }
    }

    #[test]
    fn p0_root_residue() {
        for &(n, ell, k) in &[(2usize, 1.0, 1.0), (3, 0.5, -1.0), (1, 2.0, 3.0), (4, 0.0, 0.7)] {
            let p = p0_nlk(n, ell, k).unwrap();
            assert!(p > 1.0, "n={n} ell={ell} k={k}: root {p} <= 1");
            let s = (ell + 1.0) * n as f64;
            let residual = (s - 1.0) * p * p - (s + 2.0 * k + 1.0 - 2.0 * ell) * p
                - 2.0 * (ell + 1.0);
            let scale = (s - 1.0).abs().max(s + 2.0 * k + 1.0 - 2.0 * ell).abs().max(2.0 * (ell + 1.0));
            assert!(residual.abs() <= 1e-10 * scale, "residual {residual}");
        }
    }

    #[test]
    fn p0_quadratic_example() {
        // (2, 1, 1): 3 p^2 - 5 p - 4 = 0, positive root (5 + sqrt(73))/6
        let p = p0_nlk(2, 1.0, 1.0).unwrap();
        assert!(close(p, (5.0 + 73f64.sqrt()) / 6.0, 1e-14), "{p}");
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(2.0, 0.0), 1.0);
        assert_eq!(delta(1.0, 0.0), 0.0);
        assert_eq!(delta(3.0, 0.75), 1.0);
    }

    #[test]
    fn transform_params_examples() {
        let model = ScaleInvariantModel::new(1, 2.0, 0.0).unwrap();
        let tm = transform_params(&model, 2.0).unwrap();
        assert_eq!(tm.ell, 0.0);
        assert!(close(tm.k, -1.0, 1e-14));
        let tm = transform_params(&model, 3.0).unwrap();
        assert!(close(tm.k, -2.0, 1e-14)); // reported even though k > -2 fails

        let bad = ScaleInvariantModel::new(1, 1.0, 0.0).unwrap();
        assert!(matches!(
            transform_params(&bad, 2.0),
            Err(ExponentError::DeltaOutOfRange(_))
        ));
    }

    #[test]
    fn transform_data_examples() {
        // delta = 1, mu1 = 2: u0 = v0, u1 = v1 + v0
        let model = ScaleInvariantModel::new(1, 2.0, 0.0).unwrap();
        let td = transform_data(|x| x * x, |x| 2.0 * x, &model).unwrap();
        assert_eq!((td.u0)(1.5), 2.25);
        assert!(close((td.u1)(1.5), 3.0 + 2.25, 1e-15));
        assert_eq!(td.support_scale, 1.0);

        // delta = 0.25: u1(x) = 2 (v1(2x) + 0.75 v0(2x))
        let model = ScaleInvariantModel::new(1, 2.0, 0.1875).unwrap();
        assert!(close(model.delta(), 0.25, 1e-15));
        let td = transform_data(|x| x, |x| x * x, &model).unwrap();
        let x = 0.3;
        assert!(close((td.u0)(x), 2.0 * x, 1e-15));
        assert!(close((td.u1)(x), 2.0 * (4.0 * x * x + 0.75 * 2.0 * x), 1e-14));
        assert_eq!(td.support_scale, 0.5);
    }

    #[test]
    fn p_mu_examples() {
        assert_eq!(p_mu(1, 2.0, 0.0).unwrap().value(), 3.0);

        let v = p_mu(2, 0.5, 0.0).unwrap().value();
        let p0_25 = strauss(2.5).unwrap().value();
        assert!(close(v, p0_25, 1e-14));
        assert!(p0_25 > fujita(1.5).unwrap());

        let v = p_mu(3, 2.0, 0.0).unwrap().value();
        assert!(close(v, (3.0 + 17f64.sqrt()) / 4.0, 1e-14));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(1, 2.0, 0.0).unwrap(), Classification::ParabolicLike);
        assert_eq!(classify(2, 0.5, 0.0).unwrap(), Classification::HyperbolicLike);
        assert_eq!(classify(2, mu_tilde(2), 0.0).unwrap(), Classification::Boundary);
        assert!(close(mu_tilde(1), 4.0 / 3.0, 1e-15));
        assert_eq!(mu_tilde(2), 2.0);
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(
            blowup_verdict(1, 2.0, 0.0, 2.5).unwrap(),
            Verdict::BlowupSubcritical
        );
        assert_eq!(
            blowup_verdict(1, 2.0, 0.0, 3.0).unwrap(),
            Verdict::BlowupCriticalP1
        );
        // critical Strauss case is not covered in dimension one
        let p = strauss(1.5).unwrap().value();
        assert_eq!(
            blowup_verdict(1, 0.5, 0.0, p).unwrap(),
            Verdict::NotCoveredByTheorem
        );
        // but is in dimension two
        let p = strauss(2.5).unwrap().value();
        assert_eq!(
            blowup_verdict(2, 0.5, 0.0, p).unwrap(),
            Verdict::BlowupCriticalP0
        );
        // infinite endpoint: everything above 1 is subcritical
        assert_eq!(
            blowup_verdict(1, 0.0, 0.0, 100.0).unwrap(),
            Verdict::BlowupSubcritical
        );
    }

    #[test]
    fn transformed_verdict_cases() {
        // n=3, ell=k=0: p1 = 2 < p0 = 1+sqrt(2)... p1 = 2, p0 = 2.414; p_ne = p0
        let p0 = p0_nlk(3, 0.0, 0.0).unwrap();
        assert_eq!(
            transformed_verdict(3, 0.0, 0.0, p0).unwrap(),
            Verdict::BlowupCriticalP0
        );
        assert_eq!(
            transformed_verdict(3, 0.0, 0.0, 1.5).unwrap(),
            Verdict::BlowupSubcritical
        );
        assert_eq!(
            transformed_verdict(3, 0.0, 0.0, 5.0).unwrap(),
            Verdict::NotCoveredByTheorem
        );
    }

    #[test]
    fn kato_check_cases() {
        assert_eq!(kato_check(3.0, 2.0, 1.0, 1.0, 1.0), KatoCase::CaseI);
        assert_eq!(kato_check(2.0, 3.0, 1.0, 1.0, 1.0), KatoCase::CaseII);
        assert_eq!(kato_check(2.0, 5.0, 1.0, 1.0, 1.0), KatoCase::Inconclusive);
    }

    #[test]
    fn reduction_consistency_spot_checks() {
        // with (ell, k) from the parameter map, p < p0(n; ell, k) iff
        // p < strauss(n + mu1), and p < p1(n; ell, k) iff p < fujita at the
        // shifted dimension
        let cases = [
            (1usize, 2.0, 0.1, 1.5),
            (2, 0.5, 0.05, 2.0),
            (3, 1.5, 0.0, 1.8),
            (2, 2.5, 0.35, 2.2),
        ];
        for &(n, mu1, mu2sq, p) in &cases {
            let model = ScaleInvariantModel::new(n, mu1, mu2sq).unwrap();
            let sd = model.sqrt_delta().unwrap();
            let tm = transform_params(&model, p).unwrap();
            if tm.k <= -2.0 {
                continue;
            }
            let lhs0 = p < p0_nlk(n, tm.ell, tm.k).unwrap();
            let rhs0 = Exponent(p) < strauss(n as f64 + mu1).unwrap();
            assert_eq!(lhs0, rhs0, "p0 side at {n} {mu1} {mu2sq} {p}");
            let lhs1 = Exponent(p) < p1_nlk(n, tm.ell, tm.k).unwrap();
            let m = n as f64 + (mu1 - 1.0) / 2.0 - sd / 2.0;
            let rhs1 = p < fujita(m).unwrap();
            assert_eq!(lhs1, rhs1, "p1 side at {n} {mu1} {mu2sq} {p}");
        }
    }

    #[test]
    fn exponent_serialization() {
        let inf = serde_json::to_string(&Exponent::INFINITE).unwrap();
        assert_eq!(inf, "\"inf\"");
        let fin = serde_json::to_string(&Exponent(2.5)).unwrap();
        assert_eq!(fin, "2.5");
    }

    #[test]
    fn report_shapes() {
        let model = ScaleInvariantModel::new(1, 2.0, 0.0).unwrap();
        let r = ExponentReport::for_model(&model, Some(3.0)).unwrap();
        assert_eq!(r.verdict, Some(Verdict::BlowupCriticalP1));
        assert_eq!(r.p_mu.value(), 3.0);
        assert!(r.p1_nlk.is_none()); // k = -2 at p = 3 excludes the (ell,k) side
        let r = ExponentReport::for_model(&model, None).unwrap();
        assert!(r.verdict.is_none());
        assert!(r.sign_conditions.is_none());
    }
}
