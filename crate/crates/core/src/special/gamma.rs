use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::{ensure_finite, nonpositive_integer_near, ComplexValue};

/// Distance to a nonpositive integer below which an argument is treated as a
/// pole of Gamma.
pub const POLE_TOLERANCE: f64 = 1e-14;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Logarithm of `sin(pi s)` that stays finite for large `|Im s|`.
///
/// Any branch is acceptable: callers only exponentiate the result.
pub(crate) fn ln_sin_pi(s: Complex64) -> Complex64 {
    let u = s * PI;
    if u.im.abs() < 20.0 {
        return u.sin().ln();
    }
    let i = Complex64::i();
    if u.im > 0.0 {
        // sin u = (i/2) e^{-iu} (1 - e^{2iu})
        Complex64::new(-std::f64::consts::LN_2, PI / 2.0) - i * u
            + (Complex64::new(1.0, 0.0) - (i * u * 2.0).exp()).ln()
    } else {
        // sin u = (-i/2) e^{iu} (1 - e^{-2iu})
        Complex64::new(-std::f64::consts::LN_2, -PI / 2.0)
            + i * u
            + (Complex64::new(1.0, 0.0) - (-i * u * 2.0).exp()).ln()
    }
}

fn ln_gamma_lanczos(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(LN_SQRT_2PI, 0.0) + (z + 0.5) * t.ln() - t + acc.ln()
}

/// A logarithm of Gamma (not necessarily the principal branch of `ln Γ`;
/// `exp` of it is Γ). Lanczos approximation, with reflection for
/// `Re s < 1/2`.
pub fn ln_gamma(s: ComplexValue) -> Result<ComplexValue> {
    let s = ensure_finite(s, "gamma argument")?;
    if nonpositive_integer_near(s, POLE_TOLERANCE).is_some() {
        return Err(Error::Pole {
            function: "gamma",
            at: s,
        });
    }
    Ok(ln_gamma_unchecked(s))
}

pub(crate) fn ln_gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_lanczos(1.0 - s)
    } else {
        ln_gamma_lanczos(s)
    }
}

/// Complex Gamma function.
pub fn gamma(s: ComplexValue) -> Result<ComplexValue> {
    let g = ln_gamma(s)?.exp();
    if s.im == 0.0 {
        Ok(Complex64::new(g.re, 0.0))
    } else {
        Ok(g)
    }
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`.
///
/// Direct product for `m <= 50`; above that a Gamma ratio, taken through
/// the reflected form when every factor has negative real part.
pub fn pochhammer(a: ComplexValue, m: u32) -> ComplexValue {
    if m <= 50 {
        let mut p = Complex64::new(1.0, 0.0);
        for k in 0..m {
            p *= a + k as f64;
        }
        return p;
    }
    if let Some(k) = nonpositive_integer_near(a, POLE_TOLERANCE) {
        if (-k as u64) < m as u64 {
            return Complex64::new(0.0, 0.0);
        }
    }
    let mf = m as f64;
    if a.re + mf <= 0.5 {
        // (a)_m = (-1)^m Γ(1-a) / Γ(1-a-m)
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let one = Complex64::new(1.0, 0.0);
        sign * (ln_gamma_unchecked(one - a) - ln_gamma_unchecked(one - a - mf)).exp()
    } else {
        (ln_gamma_unchecked(a + mf) - ln_gamma_unchecked(a)).exp()
    }
}
