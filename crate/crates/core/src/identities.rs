//! Residual checks of the Ramanujan–Guinand and Dedekind-eta type
//! transformation formulas for `a, b > 0` with `ab = π²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{ensure_finite, ensure_finite_real, ComplexValue, EvalResult, ToleranceConfig};
use crate::humbert::{phi3, Phi3Args};
use crate::hypergeometric::{hyp1f1, hyp2f2};
use crate::kzw::{khalf_series, kzw_contour, ContourSpec, KzwPoint, KHALF_MAX_R};
use crate::special::{erf, erfi, gamma, sigma, sigma_minus_one, zeta};

/// Relative accuracy required of `ab / π²` by [`ModularPair::new`].
pub const PAIR_TOLERANCE: f64 = 1e-14;
/// Cap on the number of `n` terms of every lattice sum.
pub const MAX_N_TERMS: usize = 10_000;
/// Largest `|w|` accepted by [`check_generalized_eta`].
pub const GENERALIZED_ETA_MAX_W: f64 = 2.0;
/// Minimum distance of `z` from the excluded points of the
/// Ramanujan–Guinand checks.
pub const POLE_CLEARANCE: f64 = 0.1;

const INNER_REL_TOL: f64 = 1e-13;

/// Positive reals `a, b` with `ab = π²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularPair {
    a: f64,
    b: f64,
}

impl ModularPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        ensure_finite_real(a, "pair member a")?;
        ensure_finite_real(b, "pair member b")?;
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Domain(format!("a and b must be positive, got a = {a}, b = {b}")));
        }
        let product = a * b / (PI * PI);
        if (product - 1.0).abs() > PAIR_TOLERANCE {
            return Err(Error::Domain(format!(
                "ab must equal π², got ab/π² - 1 = {:.3e}",
                product - 1.0
            )));
        }
        Ok(ModularPair { a, b })
    }

    /// The pair `(a, π²/a)`.
    pub fn from_a(a: f64) -> Result<Self> {
        ensure_finite_real(a, "pair member a")?;
        if !(a > 0.0) {
            return Err(Error::Domain(format!("a must be positive, got {a}")));
        }
        Ok(ModularPair { a, b: PI * PI / a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        ModularPair { a: self.b, b: self.a }
    }
}

/// Both sides of an identity and how far apart they are.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    #[serde(with = "crate::eval::complex_serde")]
    pub lhs: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    /// `abs_residual / max(|lhs|, |rhs|, 1)`.
    pub rel_residual: f64,
    pub n_terms_lhs: usize,
    pub pass: bool,
}

impl IdentityReport {
    /// Passes when `rel_residual <= tolerance`, or when `|rhs| < 1` and
    /// `abs_residual <= tolerance`.
    pub fn new(lhs: ComplexValue, rhs: ComplexValue, n_terms_lhs: usize, tolerance: f64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / lhs.norm().max(rhs.norm()).max(1.0);
        let pass = rel_residual <= tolerance || (rhs.norm() < 1.0 && abs_residual <= tolerance);
        IdentityReport {
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            n_terms_lhs,
            pass,
        }
    }
}

/// `sum_{n>=1} term(n)`, stopped at the first term with
/// `|term| <= rel_tol * |partial sum|`, which is not added.
fn lattice_sum<F>(mut term: F, rel_tol: f64) -> Result<(Complex64, usize)>
where
    F: FnMut(u64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_N_TERMS as u64 {
        let t = term(n)?;
        if n > 1 && t.norm() <= rel_tol * acc.norm() {
            return Ok((acc, (n - 1) as usize));
        }
        acc += t;
    }
    Err(Error::convergence(
        "lattice sum",
        EvalResult {
            value: acc,
            abs_err: f64::INFINITY,
            terms_used: MAX_N_TERMS,
            converged: false,
            magnitude: acc.norm(),
        },
    ))
}

fn check_order(z: ComplexValue) -> Result<()> {
    ensure_finite(z, "order z")?;
    if z.re <= 0.0 {
        return Err(Error::Parameter(format!("the order needs Re z > 0, got {z}")));
    }
    let near = |p: f64| (z - p).norm() < POLE_CLEARANCE;
    if near(1.0) {
        return Err(Error::Parameter("z = 1 is the eta-transformation limit; use that checker".into()));
    }
    let k = (z.re / 2.0).round();
    if k >= 1.0 && near(2.0 * k) {
        return Err(Error::Parameter(format!("z = {z} is too close to the even integer {}", 2.0 * k)));
    }
    if z.norm() < POLE_CLEARANCE {
        return Err(Error::Parameter("z is too close to 0".into()));
    }
    Ok(())
}

/// Inner evaluations run a thousand times tighter than the check, but no
/// tighter than [`INNER_REL_TOL`].
fn inner_tol(tol: &ToleranceConfig) -> ToleranceConfig {
    tol.tightened((tol.rel_tol * 1e-3).max(INNER_REL_TOL))
}

/// The Ramanujan–Guinand formula
///
/// ```text
/// sqrt(a) sum σ_{-z}(n) n^{z/2} K_{z/2}(2na) - sqrt(b) sum σ_{-z}(n) n^{z/2} K_{z/2}(2nb)
///   = Γ(z/2)ζ(z)/4 (b^{(1-z)/2} - a^{(1-z)/2}) + Γ(-z/2)ζ(-z)/4 (b^{(1+z)/2} - a^{(1+z)/2})
/// ```
///
/// with the Bessel values taken from the contour evaluator.
pub fn check_ramanujan_guinand(z: ComplexValue, pair: &ModularPair, tol: &ToleranceConfig) -> Result<IdentityReport> {
    check_generalized_ramanujan_guinand(z, Complex64::new(0.0, 0.0), pair, tol)
}

/// The generalized formula
///
/// ```text
/// sqrt(a) sum σ_{-z}(n) n^{z/2} e^{-w²/4} K_{z/2,iw}(2na)
///   - sqrt(b) sum σ_{-z}(n) n^{z/2} e^{w²/4} K_{z/2,w}(2nb)
///   = Γ(z/2)ζ(z)/4 (b^{(1-z)/2} 1F1((1-z)/2; 1/2; w²/4) - a^{(1-z)/2} 1F1((1-z)/2; 1/2; -w²/4))
///   + Γ(-z/2)ζ(-z)/4 (b^{(1+z)/2} 1F1((1+z)/2; 1/2; w²/4) - a^{(1+z)/2} 1F1((1+z)/2; 1/2; -w²/4))
/// ```
pub fn check_generalized_ramanujan_guinand(
    z: ComplexValue,
    w: ComplexValue,
    pair: &ModularPair,
    tol: &ToleranceConfig,
) -> Result<IdentityReport> {
    check_order(z)?;
    ensure_finite(w, "deformation w")?;
    tol.validate()?;
    let inner = inner_tol(tol);
    let (a, b) = (pair.a(), pair.b());
    let half_z = z / 2.0;
    let spec = ContourSpec::for_order(half_z)
        .with_quad_rel_tol(inner.rel_tol)
        .with_t_max(inner.max_contour_height);
    let iw = Complex64::i() * w;
    let q = w * w / 4.0;

    let bessel_sum = |w_arg: Complex64, y: f64| {
        lattice_sum(
            |n| {
                let nf = n as f64;
                let p = KzwPoint::new(half_z, w_arg, Complex64::new(2.0 * nf * y, 0.0))?;
                let k = kzw_contour(&p, &spec, &inner)?.value;
                Ok(sigma(-z, n as i64)? * (half_z * nf.ln()).exp() * k)
            },
            tol.rel_tol,
        )
    };
    let (sum_a, n_a) = bessel_sum(iw, a)?;
    let (sum_b, n_b) = bessel_sum(w, b)?;
    let lhs = a.sqrt() * (-q).exp() * sum_a - b.sqrt() * q.exp() * sum_b;

    let half = Complex64::new(0.5, 0.0);
    let f = |p: Complex64, arg: Complex64| -> Result<Complex64> { Ok(hyp1f1(p, half, arg, &inner)?.value) };
    let pow = |base: f64, e: Complex64| (e * base.ln()).exp();
    let e1 = (1.0 - z) / 2.0;
    let e2 = (1.0 + z) / 2.0;
    let first = gamma(half_z)? * zeta(z)? / 4.0 * (pow(b, e1) * f(e1, q)? - pow(a, e1) * f(e1, -q)?);
    let second = gamma(-half_z)? * zeta(-z)? / 4.0 * (pow(b, e2) * f(e2, q)? - pow(a, e2) * f(e2, -q)?);
    Ok(IdentityReport::new(lhs, first + second, n_a + n_b, tol.rel_tol))
}

/// The Dedekind-eta transformation
/// `sum σ_{-1}(n) e^{-2na} - sum σ_{-1}(n) e^{-2nb} = (b - a)/12 + log(a/b)/4`.
pub fn check_eta_transformation(pair: &ModularPair, tol: &ToleranceConfig) -> Result<IdentityReport> {
    tol.validate()?;
    let (a, b) = (pair.a(), pair.b());
    let sum = |y: f64| lattice_sum(|n| Ok(Complex64::new(sigma_minus_one(n) * (-2.0 * n as f64 * y).exp(), 0.0)), tol.rel_tol);
    let (sa, na) = sum(a)?;
    let (sb, nb) = sum(b)?;
    let rhs = (b - a) / 12.0 + (a / b).ln() / 4.0;
    Ok(IdentityReport::new(sa - sb, Complex64::new(rhs, 0.0), na + nb, tol.rel_tol))
}

/// How the Humbert series inside the generalized eta identity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaLhsRoute {
    /// The `r`-sum of `Φ₃` values, written out term by term.
    #[default]
    HumbertSum,
    /// Reconstructed from `khalf_series` as `sqrt(2X/π) e^X K_{1/2,W}(X)`.
    KhalfSeries,
}

/// `sum_r (W⁴X²/64)^r / (r! (1/2)_r (1/2)_{2r}) Φ₃(1/2; 1/2+2r; -W²/4, -W²X/4)`
/// for `W² = w2`; returns the sum and the number of `r` terms.
fn humbert_r_sum(w2: Complex64, x: f64, tol: &ToleranceConfig) -> Result<(Complex64, usize)> {
    let half = Complex64::new(0.5, 0.0);
    let u = w2 * w2 * x * x / 64.0;
    let mut coef = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    for r in 0..KHALF_MAX_R.min(tol.max_terms) {
        let rf = r as f64;
        let phi = if coef == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            phi3(&Phi3Args::new(half, half + 2.0 * rf, -w2 / 4.0, -w2 * x / 4.0)?, tol)?.value
        };
        acc += coef * phi;
        if coef.norm() * (1.0 + phi.norm()) < tol.rel_tol * acc.norm() || coef.norm() == 0.0 {
            small_run += 1;
            if small_run >= 2 {
                return Ok((acc, r + 1));
            }
        } else {
            small_run = 0;
        }
        coef *= u / ((rf + 1.0) * (rf + 0.5) * (2.0 * rf + 0.5) * (2.0 * rf + 1.5));
    }
    Err(Error::convergence(
        "humbert series in r",
        EvalResult {
            value: acc,
            abs_err: f64::INFINITY,
            terms_used: KHALF_MAX_R,
            converged: false,
            magnitude: acc.norm(),
        },
    ))
}

fn check_eta_w(w: f64) -> Result<()> {
    ensure_finite_real(w, "deformation w")?;
    if w.abs() > GENERALIZED_ETA_MAX_W {
        return Err(Error::Domain(format!(
            "the generalized eta check needs |w| <= {GENERALIZED_ETA_MAX_W}, got {w}"
        )));
    }
    Ok(())
}

/// Left-hand side of the generalized eta identity
///
/// ```text
/// e^{-w²/4} sum σ_{-1}(n) e^{-2na} S(-w², 2na) - e^{w²/4} sum σ_{-1}(n) e^{-2nb} S(w², 2nb)
/// ```
///
/// where `S(W², X)` is the Humbert `r`-series; returns the value and the
/// number of `n` terms.
pub fn generalized_eta_lhs(w: f64, pair: &ModularPair, route: EtaLhsRoute, tol: &ToleranceConfig) -> Result<(ComplexValue, usize)> {
    check_eta_w(w)?;
    tol.validate()?;
    let inner = inner_tol(tol);
    let w2 = Complex64::new(w * w, 0.0);
    let s = |w2: Complex64, x: f64| -> Result<Complex64> {
        match route {
            EtaLhsRoute::HumbertSum => Ok(humbert_r_sum(w2, x, &inner)?.0),
            EtaLhsRoute::KhalfSeries => {
                let root_w = w2.sqrt();
                let k = khalf_series(root_w, Complex64::new(x, 0.0), &inner)?.value;
                Ok((2.0 * x / PI).sqrt() * x.exp() * k)
            }
        }
    };
    let side = |w2: Complex64, y: f64| {
        lattice_sum(
            |n| {
                let x = 2.0 * n as f64 * y;
                Ok(sigma_minus_one(n) * (-x).exp() * s(w2, x)?)
            },
            tol.rel_tol,
        )
    };
    let q = w * w / 4.0;
    let (sa, na) = side(-w2, pair.a())?;
    let (sb, nb) = side(w2, pair.b())?;
    Ok(((-q).exp() * sa - q.exp() * sb, na + nb))
}

/// The generalized eta transformation for real `w`, `|w| <= 2`:
///
/// ```text
/// LHS = 1/4 [log(a/b) - (w²/2)(2F2(1,1;3/2,2;w²/4) + 2F2(1,1;3/2,2;-w²/4))]
///     + 1/12 [b (1 + (w sqrt(π)/2) e^{w²/4} erf(w/2)) - a (1 - (w sqrt(π)/2) e^{-w²/4} erfi(w/2))]
/// ```
///
/// with the left-hand side from [`generalized_eta_lhs`] and the Humbert
/// coefficient `(w² n a/4)^{2r}`.
pub fn check_generalized_eta(w: f64, pair: &ModularPair, tol: &ToleranceConfig) -> Result<IdentityReport> {
    let (lhs, n_terms) = generalized_eta_lhs(w, pair, EtaLhsRoute::HumbertSum, tol)?;
    let inner = inner_tol(tol);
    let (a, b) = (pair.a(), pair.b());
    let q = w * w / 4.0;
    let one = Complex64::new(1.0, 0.0);
    let f22 = |arg: f64| -> Result<f64> {
        Ok(hyp2f2(one, one, Complex64::new(1.5, 0.0), Complex64::new(2.0, 0.0), Complex64::new(arg, 0.0), &inner)?
            .value
            .re)
    };
    let log_part = ((a / b).ln() - w * w / 2.0 * (f22(q)? + f22(-q)?)) / 4.0;
    let c = w * PI.sqrt() / 2.0;
    let half_w = Complex64::new(w / 2.0, 0.0);
    let linear = (b * (1.0 + c * q.exp() * erf(half_w).re) - a * (1.0 - c * (-q).exp() * erfi(half_w).re)) / 12.0;
    Ok(IdentityReport::new(lhs, Complex64::new(log_part + linear, 0.0), n_terms, tol.rel_tol))
}
