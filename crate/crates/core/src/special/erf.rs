//! Error functions, all built on the Faddeeva function
//! `w(z) = exp(-z^2) erfc(-iz)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::eval::ComplexValue;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Number of terms in the rational approximation used for `|z| < 6`.
const WEIDEMAN_N: usize = 40;
/// Radius beyond which the continued fraction is used.
const CF_RADIUS: f64 = 6.0;
const CF_DEPTH: usize = 20;

struct Weideman {
    l: f64,
    coeffs: [f64; WEIDEMAN_N],
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = WEIDEMAN_N;
        let m = 2 * n;
        let l = (n as f64 / 2f64.sqrt()).sqrt();
        let samples: Vec<(f64, f64)> = (-(m as i64) + 1..m as i64)
            .map(|j| {
                let t = l * (j as f64 * PI / (2 * m) as f64).tan();
                (j as f64, (-t * t).exp() * (l * l + t * t))
            })
            .collect();
        let mut coeffs = [0.0; WEIDEMAN_N];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let kk = (k + 1) as f64;
            let s: f64 = samples
                .iter()
                .map(|&(j, g)| g * (PI * j * kk / m as f64).cos())
                .sum();
            *c = s / (2 * m) as f64;
        }
        Weideman { l, coeffs }
    })
}

fn w_rational(z: Complex64) -> Complex64 {
    let tab = weideman();
    let i = Complex64::i();
    let denom = tab.l - i * z;
    let big_z = (tab.l + i * z) / denom;
    let p = tab
        .coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * big_z + a);
    2.0 * p / (denom * denom) + FRAC_1_SQRT_PI / denom
}

fn w_continued_fraction(z: Complex64) -> Complex64 {
    let mut r = Complex64::new(0.0, 0.0);
    for k in (1..=CF_DEPTH).rev() {
        r = (k as f64 / 2.0) / (z - r);
    }
    let mut v = Complex64::i() * FRAC_1_SQRT_PI / (z - r);
    if z.im == 0.0 {
        v.re = (-z.re * z.re).exp();
    }
    v
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
///
/// Upper half-plane: a 40-term rational approximation in `(L+iz)/(L-iz)`
/// inside `|z| < 6`, the Laplace continued fraction outside. The lower
/// half-plane follows from `w(z) = 2 exp(-z^2) - w(-z)`.
pub fn faddeeva_w(z: ComplexValue) -> ComplexValue {
    if z.im < 0.0 {
        return 2.0 * (-z * z).exp() - faddeeva_w(-z);
    }
    if z.norm() >= CF_RADIUS {
        w_continued_fraction(z)
    } else {
        w_rational(z)
    }
}

fn erf_taylor(z: Complex64) -> Complex64 {
    // (2/sqrt(pi)) sum (-1)^n z^{2n+1} / (n! (2n+1))
    let z2 = z * z;
    let mut power = z;
    let mut acc = z;
    for n in 1..400 {
        power *= -z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        acc += term;
        if term.norm() <= f64::EPSILON * 0.25 * acc.norm() && n > 2 {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * acc
}

fn use_taylor(z: Complex64) -> bool {
    let r = z.norm();
    r <= 2.0 || (z.re <= 1.0 && r <= 8.0)
}

/// Error function `(2/sqrt(pi)) ∫_0^z exp(-t^2) dt`.
pub fn erf(z: ComplexValue) -> ComplexValue {
    if z.re < 0.0 {
        return -erf(-z);
    }
    if use_taylor(z) {
        let v = erf_taylor(z);
        // keep the real and imaginary axes exactly on themselves
        return if z.im == 0.0 {
            Complex64::new(v.re, 0.0)
        } else if z.re == 0.0 {
            Complex64::new(0.0, v.im)
        } else {
            v
        };
    }
    let v = 1.0 - (-z * z).exp() * faddeeva_w(Complex64::i() * z);
    if z.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

/// Complementary error function `1 - erf(z)`.
pub fn erfc(z: ComplexValue) -> ComplexValue {
    if z.re < 0.0 {
        return 2.0 - erfc(-z);
    }
    if z.norm() < 0.5 {
        return 1.0 - erf(z);
    }
    let v = (-z * z).exp() * faddeeva_w(Complex64::i() * z);
    if z.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

/// Scaled complementary error function `exp(z^2) erfc(z)`.
pub fn erfcx(z: ComplexValue) -> ComplexValue {
    if z.re >= 0.0 {
        faddeeva_w(Complex64::i() * z)
    } else {
        2.0 * (z * z).exp() - faddeeva_w(-Complex64::i() * z)
    }
}

/// Imaginary error function `-i erf(iz)`.
pub fn erfi(z: ComplexValue) -> ComplexValue {
    let v = -Complex64::i() * erf(Complex64::i() * z);
    if z.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}
