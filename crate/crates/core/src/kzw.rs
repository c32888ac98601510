//! The generalized modified Bessel function
//!
//! ```text
//! K_{z,w}(x) = 1/(2πi) ∫_(c) Γ((s-z)/2) Γ((s+z)/2)
//!              1F1((s-z)/2; 1/2; -w²/4) 1F1((s+z)/2; 1/2; -w²/4) 2^{s-2} x^{-s} ds
//! ```
//!
//! evaluated on the contour, by its Humbert series at `z = 1/2`, in closed
//! form at `z = 1/2, w = 0`, and by its large-`x` expansion.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{ensure_finite, ComplexValue, EvalResult, ToleranceConfig, ROUNDOFF_ALLOWANCE};
use crate::humbert::{phi3, Phi3Args};
use crate::hypergeometric::hyp1f1;
use crate::identities::IdentityReport;
use crate::quadrature::{adaptive, gl_panel};
use crate::series::geometric_tail;
use crate::special::{gamma, ln_gamma_unchecked, pochhammer};

/// Distance of the default abscissa to the right of `|Re z|`.
pub const DEFAULT_ABSCISSA_OFFSET: f64 = 0.75;
/// Abscissa used for the inverse-Mellin lemma, inside its strip `(1/2, 1)`.
pub const LEMMA_ABSCISSA: f64 = 0.75;
/// First truncation height; doubled until the result settles.
pub const INITIAL_HEIGHT: f64 = 16.0;
/// Width of the coarse Gauss–Legendre panels along the contour.
pub const PANEL_WIDTH: f64 = 2.0;
/// Cap on the number of `r` terms of the Humbert series.
pub const KHALF_MAX_R: usize = 64;

const INNER_REL_TOL: f64 = 1e-15;

/// Line `Re s = abscissa_c`, truncated to `|Im s| <= t_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub abscissa_c: f64,
    pub t_max: f64,
    pub quad_rel_tol: f64,
    pub max_panels: usize,
}

impl ContourSpec {
    /// Default contour for order `z`: `c = |Re z| + 3/4`.
    pub fn for_order(z: ComplexValue) -> Self {
        ContourSpec {
            abscissa_c: z.re.abs() + DEFAULT_ABSCISSA_OFFSET,
            ..Self::lemma()
        }
    }

    /// Default contour for the inverse-Mellin lemma.
    pub fn lemma() -> Self {
        ContourSpec {
            abscissa_c: LEMMA_ABSCISSA,
            t_max: ToleranceConfig::default().max_contour_height,
            quad_rel_tol: ToleranceConfig::default().rel_tol,
            max_panels: 4000,
        }
    }

    pub fn with_abscissa(self, abscissa_c: f64) -> Self {
        ContourSpec { abscissa_c, ..self }
    }

    pub fn with_t_max(self, t_max: f64) -> Self {
        ContourSpec { t_max, ..self }
    }

    pub fn with_quad_rel_tol(self, quad_rel_tol: f64) -> Self {
        ContourSpec { quad_rel_tol, ..self }
    }

    fn validate_common(&self, tol: &ToleranceConfig) -> Result<()> {
        tol.validate()?;
        if !(self.t_max > 0.0 && self.t_max <= tol.max_contour_height) {
            return Err(Error::Parameter(format!(
                "t_max must lie in (0, {}], got {}",
                tol.max_contour_height, self.t_max
            )));
        }
        if !(self.quad_rel_tol > 0.0 && self.quad_rel_tol.is_finite()) {
            return Err(Error::Parameter(format!("quad_rel_tol must be positive, got {}", self.quad_rel_tol)));
        }
        if self.max_panels < 1 {
            return Err(Error::Parameter("max_panels must be at least 1".into()));
        }
        if !self.abscissa_c.is_finite() {
            return Err(Error::NonFinite("contour abscissa"));
        }
        Ok(())
    }

    /// Checks the invariants for evaluating order `z`.
    pub fn validate(&self, z: ComplexValue, tol: &ToleranceConfig) -> Result<()> {
        self.validate_common(tol)?;
        if self.abscissa_c <= z.re.abs() {
            return Err(Error::Parameter(format!(
                "abscissa {} must exceed |Re z| = {}",
                self.abscissa_c,
                z.re.abs()
            )));
        }
        Ok(())
    }
}

/// Order `z`, deformation `w` and argument `x` of `K_{z,w}(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KzwPoint {
    #[serde(with = "crate::eval::complex_serde")]
    pub z: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub w: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub x: ComplexValue,
}

impl KzwPoint {
    pub fn new(z: ComplexValue, w: ComplexValue, x: ComplexValue) -> Result<Self> {
        ensure_finite(z, "order z")?;
        ensure_finite(w, "deformation w")?;
        off_the_cut(x)?;
        Ok(KzwPoint { z, w, x })
    }
}

fn off_the_cut(x: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(x, "argument x")?;
    if x.im == 0.0 && x.re <= 0.0 {
        return Err(Error::Domain(format!("x = {x} lies on the branch cut (-inf, 0]")));
    }
    Ok(x)
}

/// `(1/2π) ∫ g(c + it) dt`, i.e. `1/(2πi) ∫_(c) g(s) ds`.
///
/// Coarse panels of width [`PANEL_WIDTH`] on `[-16, 16]` give a first
/// estimate and the absolute target; every panel is then refined by
/// bisection. The height is doubled until the newly added bands and the
/// exponential tail beyond the height are both below the target.
fn line_integral<G>(mut g: G, spec: &ContourSpec, tol: &ToleranceConfig) -> Result<EvalResult>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    let c = spec.abscissa_c;
    let mut evals = 0usize;
    let mut f = |t: f64| -> Result<Complex64> {
        evals += 1;
        let v = g(Complex64::new(c, t))? / (2.0 * PI);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("contour integrand"))
        }
    };
    let t_cap = spec.t_max;
    let mut budget = spec.max_panels;

    let mut height = INITIAL_HEIGHT.min(t_cap);
    let mut coarse = Vec::new();
    for (a, b) in panel_edges(-height, height) {
        if budget == 0 {
            break;
        }
        budget -= 1;
        coarse.push((a, b, gl_panel(&mut f, a, b)?));
    }
    let estimate: Complex64 = coarse.iter().map(|p| p.2 .0).sum();
    let l1_estimate: f64 = coarse.iter().map(|p| p.2 .1).sum();
    let target = spec.quad_rel_tol * estimate.norm() + ROUNDOFF_ALLOWANCE * f64::EPSILON * l1_estimate;
    let density = target / (2.0 * t_cap);

    let mut value = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    let mut panel_err = 0.0;
    let mut exhausted = coarse.len() < panel_edges(-height, height).len();
    for (a, b, whole) in coarse {
        let q = adaptive(&mut f, a, b, whole, density * (b - a), &mut budget)?;
        value += q.value;
        l1 += q.l1;
        panel_err += q.err;
        exhausted |= q.exhausted;
    }

    let mut tail = tail_estimate(&mut f, height)?;
    while height < t_cap && !exhausted {
        let next = (2.0 * height).min(t_cap);
        let mut change = Complex64::new(0.0, 0.0);
        for (a, b) in panel_edges(-next, -height).into_iter().chain(panel_edges(height, next)) {
            if budget == 0 {
                exhausted = true;
                break;
            }
            budget -= 1;
            let whole = gl_panel(&mut f, a, b)?;
            let q = adaptive(&mut f, a, b, whole, density * (b - a), &mut budget)?;
            change += q.value;
            l1 += q.l1;
            panel_err += q.err;
            exhausted |= q.exhausted;
        }
        value += change;
        height = next;
        tail = tail_estimate(&mut f, height)?;
        if change.norm() <= target && tail <= target {
            break;
        }
    }
    let target_now = spec.quad_rel_tol * value.norm() + ROUNDOFF_ALLOWANCE * f64::EPSILON * l1;
    if tail > target_now.max(target) && !exhausted {
        return Err(Error::Contour(format!(
            "tail estimate {tail:.3e} at height {height} exceeds the target {target_now:.3e}"
        )));
    }
    let abs_err = panel_err + tail + 0.5 * ROUNDOFF_ALLOWANCE * f64::EPSILON * l1;
    let result = EvalResult {
        value,
        abs_err,
        terms_used: evals,
        converged: !exhausted && abs_err <= tol.abs_target(value.norm(), l1),
        magnitude: l1,
    };
    if exhausted {
        Err(Error::convergence("contour quadrature", result))
    } else {
        Ok(result)
    }
}

/// Panels of width at most [`PANEL_WIDTH`] covering `[a, b]`.
fn panel_edges(a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = ((b - a) / PANEL_WIDTH).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| (a + h * i as f64, if i + 1 == n { b } else { a + h * (i + 1) as f64 }))
        .collect()
}

/// `∫_{|t| > T} |f|` assuming the `e^{-π|t|/2}` decay of the Gamma factors.
fn tail_estimate<F>(f: &mut F, height: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    Ok((f(height)?.norm() + f(-height)?.norm()) * 2.0 / PI)
}

fn hyp_factor(a: Complex64, q: Complex64, tol: &ToleranceConfig) -> Result<Complex64> {
    if q == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(hyp1f1(a, Complex64::new(0.5, 0.0), q, tol)?.value)
}

/// `K_{z,w}(x)` by numerical integration along `Re s = spec.abscissa_c`.
///
/// `abs_err` combines the panel error estimates, the tail beyond the final
/// height and a roundoff allowance proportional to `∫ |integrand|`.
pub fn kzw_contour(p: &KzwPoint, spec: &ContourSpec, tol: &ToleranceConfig) -> Result<EvalResult> {
    spec.validate(p.z, tol)?;
    let KzwPoint { z, w, x } = *p;
    let q = -w * w / 4.0;
    let log_x = x.ln();
    let inner = tol.tightened(INNER_REL_TOL);
    line_integral(
        |s| {
            let a1 = (s - z) / 2.0;
            let a2 = (s + z) / 2.0;
            let log_mag = ln_gamma_unchecked(a1) + ln_gamma_unchecked(a2) + (s - 2.0) * LN_2 - s * log_x;
            Ok(log_mag.exp() * hyp_factor(a1, q, &inner)? * hyp_factor(a2, q, &inner)?)
        },
        spec,
        tol,
    )
}

/// `K_{1/2,w}(x)` on the contour with the Gamma pair collapsed by the
/// duplication formula: `sqrt(π/2) Γ(s-1/2) 1F1(s/2-1/4; 1/2; -w²/4)
/// 1F1(s/2+1/4; 1/2; -w²/4) x^{-s}`.
pub fn kzw_contour_collapsed(w: ComplexValue, x: ComplexValue, spec: &ContourSpec, tol: &ToleranceConfig) -> Result<EvalResult> {
    let p = KzwPoint::new(Complex64::new(0.5, 0.0), w, x)?;
    spec.validate(p.z, tol)?;
    let q = -w * w / 4.0;
    let log_x = x.ln();
    let inner = tol.tightened(INNER_REL_TOL);
    let log_pref = 0.5 * (PI / 2.0).ln();
    line_integral(
        |s| {
            let log_mag = ln_gamma_unchecked(s - 0.5) - s * log_x + log_pref;
            Ok(log_mag.exp() * hyp_factor(s / 2.0 - 0.25, q, &inner)? * hyp_factor(s / 2.0 + 0.25, q, &inner)?)
        },
        spec,
        tol,
    )
}

/// `K_{1/2}(x) = sqrt(π/(2x)) e^{-x}`.
pub fn k_half_closed(x: ComplexValue) -> Result<ComplexValue> {
    let x = off_the_cut(x)?;
    Ok((PI / (2.0 * x)).sqrt() * (-x).exp())
}

/// Compares `1/(2πi) ∫_(c) Γ(s-1/2) Γ(s+n)/Γ(s) x^{-s} ds` with
/// `(-1)^n sqrt(π/x) 1F1(1/2; 1/2-n; -x) / Γ(1/2-n)`, for `1/2 < c < 1`.
///
/// The report passes when the residual is within `tol.rel_tol`.
pub fn inverse_mellin_lemma(n: u32, x: ComplexValue, spec: &ContourSpec, tol: &ToleranceConfig) -> Result<IdentityReport> {
    let x = off_the_cut(x)?;
    spec.validate_common(tol)?;
    if !(spec.abscissa_c > 0.5 && spec.abscissa_c < 1.0) {
        return Err(Error::Parameter(format!(
            "the abscissa must lie in (1/2, 1), got {}",
            spec.abscissa_c
        )));
    }
    let log_x = x.ln();
    let lhs = line_integral(
        |s| Ok((ln_gamma_unchecked(s - 0.5) - s * log_x).exp() * pochhammer(s, n)),
        spec,
        tol,
    )?;
    let half = Complex64::new(0.5, 0.0);
    let f = hyp1f1(half, half - n as f64, -x, &tol.tightened(INNER_REL_TOL))?.value;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = sign * (PI / x).sqrt() * f / gamma(half - n as f64)?;
    Ok(IdentityReport::new(lhs.value, rhs, lhs.terms_used, tol.rel_tol))
}

/// `K_{1/2,w}(x)` by its Humbert series
///
/// ```text
/// sqrt(π/(2x)) e^{-x} sum_r (w⁴x²/64)^r / (r! (1/2)_r (1/2)_{2r})
///                           Φ₃(1/2; 1/2+2r; -w²/4, -w²x/4)
/// ```
///
/// The `r` sum stops once `|coef_r| (1 + |Φ₃|)` has been below
/// `rel_tol * |partial sum|` for two consecutive `r`.
pub fn khalf_series(w: ComplexValue, x: ComplexValue, tol: &ToleranceConfig) -> Result<EvalResult> {
    ensure_finite(w, "deformation w")?;
    let x = off_the_cut(x)?;
    tol.validate()?;
    let pref = (PI / (2.0 * x)).sqrt() * (-x).exp();
    let w2 = w * w;
    let u = w2 * w2 * x * x / 64.0;
    let phi_x = -w2 / 4.0;
    let phi_y = -w2 * x / 4.0;
    let inner = tol.tightened(INNER_REL_TOL);
    let half = Complex64::new(0.5, 0.0);

    let mut coef = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    let mut inner_err = 0.0;
    let mut terms = 0usize;
    let mut small_run = 0;
    let mut last = 0.0;
    let mut before_last = 0.0;
    let mut settled = false;
    for r in 0..KHALF_MAX_R.min(tol.max_terms) {
        let rf = r as f64;
        let phi = if coef == Complex64::new(0.0, 0.0) {
            EvalResult::exact(Complex64::new(1.0, 0.0))
        } else {
            phi3(&Phi3Args::new(half, half + 2.0 * rf, phi_x, phi_y)?, &inner)?
        };
        let term = coef * phi.value;
        sum += term;
        magnitude += coef.norm() * phi.magnitude;
        inner_err += coef.norm() * phi.abs_err;
        terms += phi.terms_used;
        let size = coef.norm() * (1.0 + phi.value.norm());
        before_last = last;
        last = size;
        if size < tol.rel_tol * sum.norm() || size == 0.0 {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 {
            settled = true;
            break;
        }
        coef *= u / ((rf + 1.0) * (rf + 0.5) * (2.0 * rf + 0.5) * (2.0 * rf + 1.5));
    }
    let series_err = geometric_tail(last, before_last) + inner_err + 2.0 * f64::EPSILON * magnitude;
    let value = pref * sum;
    let abs_err = pref.norm() * series_err;
    let magnitude = pref.norm() * magnitude;
    let result = EvalResult {
        value,
        abs_err,
        terms_used: terms,
        converged: settled && abs_err <= tol.abs_target(value.norm(), magnitude),
        magnitude,
    };
    if settled {
        Ok(result)
    } else {
        Err(Error::convergence("humbert series in r", result))
    }
}

/// Large-`x` expansion
///
/// ```text
/// K_{z,w}(x) ≈ (1/2) sqrt(π/(2x)) e^{-x}
///              (cos(w sqrt(2x)) P - sin(w sqrt(2x)) Q + e^{-w²/4} R)
/// P = 1 + (32z² - 3w² - 8)/(64x),  Q = w/(4 sqrt(2x)),
/// R = 1 + (4z² - 1)(2 - w²)/(16x)
/// ```
///
/// valid for `|arg x| < π/4`.
pub fn kzw_asymptotic(p: &KzwPoint) -> Result<ComplexValue> {
    let KzwPoint { z, w, x } = *p;
    if !(x.arg().abs() < FRAC_PI_4) {
        return Err(Error::Domain(format!(
            "the expansion needs |arg x| < π/4, got arg x = {}",
            x.arg()
        )));
    }
    let (z2, w2) = (z * z, w * w);
    let root = (2.0 * x).sqrt();
    let big_p = 1.0 + (32.0 * z2 - 3.0 * w2 - 8.0) / (64.0 * x);
    let big_q = w / (4.0 * root);
    let big_r = 1.0 + (4.0 * z2 - 1.0) * (2.0 - w2) / (16.0 * x);
    let phase = w * root;
    let bracket = phase.cos() * big_p - phase.sin() * big_q + (-w2 / 4.0).exp() * big_r;
    Ok(0.5 * (PI / (2.0 * x)).sqrt() * (-x).exp() * bracket)
}
