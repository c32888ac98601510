//! Voigt line shape: the Faddeeva function, the profile and its closed-form
//! distribution function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{ensure_finite_real, ComplexValue, ToleranceConfig};
use crate::hypergeometric::hyp2f2_compensated;
use crate::special::{erf, erfcx};

/// Largest `|w|` for which the `2F2(1,1;3/2,2;-w²)` series is summed.
pub const CDF_MAX_ABS_W: f64 = 6.0;

const CDF_REL_TOL: f64 = 1e-14;

/// Gaussian width `sigma` and Lorentzian half-width `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoigtParams {
    sigma: f64,
    beta: f64,
}

impl VoigtParams {
    pub fn new(sigma: f64, beta: f64) -> Result<Self> {
        ensure_finite_real(sigma, "sigma")?;
        ensure_finite_real(beta, "beta")?;
        if !(sigma > 0.0 && beta > 0.0) {
            return Err(Error::Domain(format!(
                "sigma and beta must be positive, got sigma = {sigma}, beta = {beta}"
            )));
        }
        Ok(VoigtParams { sigma, beta })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `w = (x + iβ) / (sqrt(2) σ)`.
    pub fn w(&self, x: f64) -> Complex64 {
        Complex64::new(x, self.beta) / (2f64.sqrt() * self.sigma)
    }
}

/// `ξ(y) = e^{-y²} (1 - erf(-iy))`, evaluated as `erfcx(-iy)` so that the
/// exponential factor never overflows.
pub fn faddeeva(y: ComplexValue) -> ComplexValue {
    erfcx(-Complex64::i() * y)
}

/// `V(x; σ, β) = Re ξ(w) / (σ sqrt(2π))`.
pub fn voigt_profile(x: f64, p: &VoigtParams) -> f64 {
    faddeeva(p.w(x)).re / (p.sigma * (2.0 * PI).sqrt())
}

/// Distribution function together with the value before clamping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoigtCdf {
    /// Clamped to `[0, 1]`.
    pub value: f64,
    pub unclamped: f64,
    pub abs_err: f64,
    pub terms_used: usize,
}

/// `F(x0) = Re[1/2 + erf(w)/2 + (i w²/π) 2F2(1,1;3/2,2;-w²)]` at
/// `w = (x0 + iβ)/(sqrt(2) σ)`, with `|w| <= CDF_MAX_ABS_W`.
pub fn voigt_cdf_detailed(x0: f64, p: &VoigtParams, tol: &ToleranceConfig) -> Result<VoigtCdf> {
    ensure_finite_real(x0, "x0")?;
    tol.validate()?;
    let w = p.w(x0);
    if w.norm() > CDF_MAX_ABS_W {
        return Err(Error::Domain(format!(
            "|w| = {:.3} exceeds the summation cap {CDF_MAX_ABS_W}",
            w.norm()
        )));
    }
    let c = |x: f64| Complex64::new(x, 0.0);
    let f = hyp2f2_compensated(c(1.0), c(1.0), c(1.5), c(2.0), -w * w, tol)?;
    let k = Complex64::i() * w * w / PI;
    let unclamped = (0.5 + erf(w) / 2.0 + k * f.value).re;
    Ok(VoigtCdf {
        value: unclamped.clamp(0.0, 1.0),
        unclamped,
        abs_err: k.norm() * f.abs_err + 4.0 * f64::EPSILON,
        terms_used: f.terms_used,
    })
}

/// [`voigt_cdf_detailed`] at a fixed tight tolerance, value only.
pub fn voigt_cdf(x0: f64, p: &VoigtParams) -> Result<f64> {
    let tol = ToleranceConfig::default().with_rel_tol(CDF_REL_TOL);
    Ok(voigt_cdf_detailed(x0, p, &tol)?.value)
}
