use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::ln_gamma_unchecked;
use crate::error::{Error, Result};
use crate::eval::{ensure_finite, ComplexValue};

const BORWEIN_N: usize = 50;

/// Tail weights `e_k = d_n - d_k` of Borwein's accelerated alternating sum,
/// normalised by `d_n`. Built from suffix sums so that no difference of two
/// nearly equal `d_k` is ever formed.
fn borwein_weights() -> &'static [f64; BORWEIN_N] {
    static WEIGHTS: OnceLock<[f64; BORWEIN_N]> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let n = BORWEIN_N;
        let mut terms = [0.0f64; BORWEIN_N + 1];
        terms[0] = 1.0;
        for i in 0..n {
            let fi = i as f64;
            let fnn = n as f64;
            terms[i + 1] = terms[i] * 4.0 * (fnn + fi) * (fnn - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        }
        let d_n: f64 = terms.iter().sum();
        let mut weights = [0.0f64; BORWEIN_N];
        let mut suffix = 0.0;
        for k in (0..n).rev() {
            suffix += terms[k + 1];
            weights[k] = suffix / d_n;
        }
        weights
    })
}

/// Dirichlet eta function `sum (-1)^{k} (k+1)^{-s}` with Borwein's
/// Chebyshev-accelerated partial sums. Error ~ 5.8^{-50} for modest `|Im s|`.
fn eta(s: Complex64) -> Complex64 {
    let weights = borwein_weights();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &wk) in weights.iter().enumerate() {
        let term = (-s * ((k + 1) as f64).ln()).exp() * wk;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `exp(u) - 1` without cancellation for small `|u|`.
fn expm1(u: Complex64) -> Complex64 {
    let half_sin = (u.im / 2.0).sin();
    Complex64::new(
        u.re.exp_m1() * u.im.cos() - 2.0 * half_sin * half_sin,
        u.re.exp() * u.im.sin(),
    )
}

/// Riemann zeta function.
///
/// Alternating series for `Re s >= 0`, the functional equation for
/// `Re s < 0`.
pub fn zeta(s: ComplexValue) -> Result<ComplexValue> {
    let s = ensure_finite(s, "zeta argument")?;
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Pole {
            function: "zeta",
            at: s,
        });
    }
    if s.re >= 0.0 {
        // 1 - 2^{1-s} = -expm1((1-s) ln 2)
        let denom = -expm1((1.0 - s) * LN_2);
        return Ok(eta(s) / denom);
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    let one_minus = 1.0 - s;
    let pref = (s * LN_2 + (s - 1.0) * PI.ln() + ln_gamma_unchecked(one_minus)).exp();
    let value = pref * (s * PI / 2.0).sin() * zeta(one_minus)?;
    // keep real inputs real
    if s.im == 0.0 {
        Ok(Complex64::new(value.re, 0.0))
    } else {
        Ok(value)
    }
}
