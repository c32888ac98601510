//! Scalars, tolerances and the result record shared by every evaluator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The universal scalar of the library.
pub type ComplexValue = Complex64;

/// Roundoff allowance, in units of machine epsilon times the ℓ¹ magnitude of
/// the summands, that is added to every absolute tolerance.
pub const ROUNDOFF_ALLOWANCE: f64 = 16.0;

/// Tolerances and caps threaded through every series and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub max_contour_height: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rel_tol: 1e-12,
            max_terms: 100_000,
            max_contour_height: 200.0,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rel_tol: f64, max_terms: usize, max_contour_height: f64) -> Result<Self> {
        let cfg = ToleranceConfig {
            rel_tol,
            max_terms,
            max_contour_height,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        ToleranceConfig { rel_tol, ..self }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        ToleranceConfig { max_terms, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Parameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::Parameter("max_terms must be at least 1".into()));
        }
        if !(self.max_contour_height > 0.0 && self.max_contour_height.is_finite()) {
            return Err(Error::Parameter(format!(
                "max_contour_height must be positive, got {}",
                self.max_contour_height
            )));
        }
        Ok(())
    }

    /// Absolute error budget for a result of modulus `value` whose summands
    /// have ℓ¹ magnitude `magnitude`.
    ///
    /// `rel_tol * value + ROUNDOFF_ALLOWANCE * eps * magnitude`: the second
    /// term is the floor below which cancellation makes any claim meaningless.
    pub fn abs_target(&self, value: f64, magnitude: f64) -> f64 {
        self.rel_tol * value.abs() + ROUNDOFF_ALLOWANCE * f64::EPSILON * magnitude.abs()
    }

    /// A copy tightened to at most `rel_tol`, used for inner evaluations
    /// whose errors feed a coarser outer check.
    pub(crate) fn tightened(self, rel_tol: f64) -> Self {
        self.with_rel_tol(self.rel_tol.min(rel_tol))
    }
}

/// Value, error estimate and bookkeeping returned by every series and
/// quadrature evaluator.
///
/// `converged` certifies that the truncation rule fired and that
/// `abs_err <= tol.abs_target(|value|, magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    #[serde(with = "complex_serde")]
    pub value: ComplexValue,
    pub abs_err: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// ℓ¹ magnitude of the summands (or of the integrand, for quadratures).
    pub magnitude: f64,
}

impl EvalResult {
    pub fn exact(value: ComplexValue) -> Self {
        EvalResult {
            value,
            abs_err: 0.0,
            terms_used: 1,
            converged: true,
            magnitude: value.norm(),
        }
    }

    pub fn meets(&self, tol: &ToleranceConfig) -> bool {
        self.abs_err <= tol.abs_target(self.value.norm(), self.magnitude)
    }
}

pub(crate) fn ensure_finite(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn ensure_finite_real(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Distance from `z` to the nearest nonpositive integer, or `None` when
/// `Re z` is positive enough that no such integer is near.
pub(crate) fn nonpositive_integer_near(z: ComplexValue, eps: f64) -> Option<i64> {
    if z.re > 0.5 || z.im.abs() > eps {
        return None;
    }
    let k = z.re.round();
    if k <= 0.0 && (z.re - k).abs() <= eps.max(eps * k.abs()) {
        Some(k as i64)
    } else {
        None
    }
}

/// Serializes a complex number as `{"re": .., "im": ..}`.
pub mod complex_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(Complex64::new(p.re, p.im))
    }
}
