//! Humbert's confluent double series Φ₁, Φ₂, Φ₃ and generalized Laguerre
//! polynomials.
//!
//! Every double series here has the shape
//! `sum_{m,n} P_{m+n} A_m B_n`, so the anti-diagonal `m + n = k` contributes
//! `P_k * sum_m A_m B_{k-m}`, a discrete convolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{ensure_finite, nonpositive_integer_near, ComplexValue, EvalResult, ToleranceConfig};
use crate::hypergeometric::{HypSeriesSpec, TERMINATION_TOLERANCE};
use crate::series::{SeriesSum, SMALL_TERMS_TO_STOP};
use crate::special::pochhammer;

/// Largest `|y|` accepted by [`phi3`]; beyond it the double series needs
/// asymptotics that are not implemented.
pub const PHI3_MAX_ABS_Y: f64 = 50.0;

/// Order in which a double series is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummationOrder {
    /// Diagonals `m + n = k`, `k = 0, 1, ...`.
    #[default]
    AntiDiagonal,
    /// Rows of fixed `m`, each summed over `n`.
    Rows,
    /// Columns of fixed `n`, each summed over `m`.
    Columns,
}

/// Arguments of `Φ₃(a; c; x, y) = sum (a)_m / (c)_{m+n} x^m y^n / (m! n!)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phi3Args {
    #[serde(with = "crate::eval::complex_serde")]
    pub a: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub c: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub x: ComplexValue,
    #[serde(with = "crate::eval::complex_serde")]
    pub y: ComplexValue,
}

impl Phi3Args {
    pub fn new(a: ComplexValue, c: ComplexValue, x: ComplexValue, y: ComplexValue) -> Result<Self> {
        let args = Phi3Args { a, c, x, y };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        for (v, what) in [
            (self.a, "phi3 parameter a"),
            (self.c, "phi3 parameter c"),
            (self.x, "phi3 argument x"),
            (self.y, "phi3 argument y"),
        ] {
            ensure_finite(v, what)?;
        }
        admissible_denominator(self.c)?;
        if self.y.norm() > PHI3_MAX_ABS_Y {
            return Err(Error::Domain(format!(
                "phi3 needs |y| <= {PHI3_MAX_ABS_Y}, got |y| = {}",
                self.y.norm()
            )));
        }
        Ok(())
    }
}

fn admissible_denominator(c: ComplexValue) -> Result<()> {
    if nonpositive_integer_near(c, TERMINATION_TOLERANCE).is_some() {
        return Err(Error::Parameter(format!("denominator parameter {c} is a nonpositive integer")));
    }
    Ok(())
}

/// Coefficient sequence generated by a term ratio, extended on demand.
struct Sequence<F: Fn(usize) -> Complex64> {
    values: Vec<Complex64>,
    ratio: F,
}

impl<F: Fn(usize) -> Complex64> Sequence<F> {
    fn new(ratio: F) -> Self {
        Sequence {
            values: vec![Complex64::new(1.0, 0.0)],
            ratio,
        }
    }

    fn get(&mut self, i: usize) -> Complex64 {
        while self.values.len() <= i {
            let j = self.values.len() - 1;
            let next = self.values[j] * (self.ratio)(j);
            self.values.push(next);
        }
        self.values[i]
    }
}

/// `sum_{m,n} P_{m+n} A_m B_n` with each factor given by its term ratio.
struct DoubleSeries<P, A, B>
where
    P: Fn(usize) -> Complex64,
    A: Fn(usize) -> Complex64,
    B: Fn(usize) -> Complex64,
{
    p: Sequence<P>,
    a: Sequence<A>,
    b: Sequence<B>,
}

impl<P, A, B> DoubleSeries<P, A, B>
where
    P: Fn(usize) -> Complex64,
    A: Fn(usize) -> Complex64,
    B: Fn(usize) -> Complex64,
{
    fn new(p: P, a: A, b: B) -> Self {
        DoubleSeries {
            p: Sequence::new(p),
            a: Sequence::new(a),
            b: Sequence::new(b),
        }
    }

    fn term(&mut self, m: usize, n: usize) -> Complex64 {
        self.p.get(m + n) * self.a.get(m) * self.b.get(n)
    }

    /// Contribution of the anti-diagonal `m + n = k` and its ℓ¹ magnitude.
    fn diagonal(&mut self, k: usize) -> (Complex64, f64) {
        let pk = self.p.get(k);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for m in 0..=k {
            let t = self.a.get(m) * self.b.get(k - m);
            acc += t;
            mag += t.norm();
        }
        (pk * acc, pk.norm() * mag)
    }

    /// Sums a single line of terms (a row or a column) until three
    /// consecutive terms are negligible. Returns the sum, its ℓ¹ magnitude
    /// and the number of terms, or `None` when `budget` runs out.
    fn line(&mut self, fixed: usize, is_row: bool, rel_tol: f64, budget: usize) -> Option<(SeriesSum, usize)> {
        let mut sum = SeriesSum::new();
        for j in 0..budget {
            let t = if is_row { self.term(fixed, j) } else { self.term(j, fixed) };
            if sum.push(t, rel_tol) && sum.tail_estimate() <= rel_tol * sum.value().norm() {
                let n = sum.terms();
                return Some((sum, n));
            }
        }
        None
    }

    fn evaluate(&mut self, order: SummationOrder, tol: &ToleranceConfig, what: &'static str) -> Result<EvalResult> {
        tol.validate()?;
        let mut outer = SeriesSum::new();
        let mut magnitude = 0.0;
        let mut terms = 0usize;
        let mut inner_err = 0.0;
        let mut settled = false;
        let mut k = 0usize;
        while terms < tol.max_terms {
            let (contrib, mag, used, err) = match order {
                SummationOrder::AntiDiagonal => {
                    let (d, mag) = self.diagonal(k);
                    (d, mag, k + 1, 0.0)
                }
                SummationOrder::Rows | SummationOrder::Columns => {
                    // inner lines are summed more tightly than the outer series
                    let inner_tol = tol.rel_tol * 1e-2;
                    match self.line(k, order == SummationOrder::Rows, inner_tol, tol.max_terms - terms) {
                        Some((s, n)) => (s.value(), s.magnitude(), n, s.tail_estimate() + s.rounding_estimate()),
                        None => {
                            terms = tol.max_terms;
                            break;
                        }
                    }
                }
            };
            terms += used;
            magnitude += mag;
            inner_err += err;
            let small = outer.push(contrib, tol.rel_tol);
            k += 1;
            if small && outer.tail_estimate() <= tol.rel_tol * outer.value().norm() {
                settled = true;
                break;
            }
            if !(contrib.re.is_finite() && contrib.im.is_finite()) {
                return Err(Error::NonFinite("double series term"));
            }
        }
        let value = outer.value();
        let abs_err = outer.tail_estimate() + inner_err + 2.0 * f64::EPSILON * magnitude;
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
            Err(Error::convergence(what, result))
        }
    }
}

/// `Φ₁(a, b; c; x, y) = sum (a)_{m+n} (b)_m / (c)_{m+n} x^m y^n / (m! n!)`
/// for `|x| < 1`.
pub fn phi1(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    x: ComplexValue,
    y: ComplexValue,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    for v in [a, b, c, x, y] {
        ensure_finite(v, "phi1 input")?;
    }
    admissible_denominator(c)?;
    if x.norm() >= 1.0 {
        return Err(Error::Domain(format!("phi1 needs |x| < 1, got |x| = {}", x.norm())));
    }
    DoubleSeries::new(
        |k| (a + k as f64) / (c + k as f64),
        |m| (b + m as f64) * x / (m as f64 + 1.0),
        |n| y / (n as f64 + 1.0),
    )
    .evaluate(SummationOrder::AntiDiagonal, tol, "phi1 double series")
}

/// `Φ₂(a, a'; c; x, y) = sum (a)_m (a')_n / (c)_{m+n} x^m y^n / (m! n!)`.
pub fn phi2(
    a: ComplexValue,
    a_p: ComplexValue,
    c: ComplexValue,
    x: ComplexValue,
    y: ComplexValue,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    for v in [a, a_p, c, x, y] {
        ensure_finite(v, "phi2 input")?;
    }
    admissible_denominator(c)?;
    DoubleSeries::new(
        |k| 1.0 / (c + k as f64),
        |m| (a + m as f64) * x / (m as f64 + 1.0),
        |n| (a_p + n as f64) * y / (n as f64 + 1.0),
    )
    .evaluate(SummationOrder::AntiDiagonal, tol, "phi2 double series")
}

/// `Φ₃(a; c; x, y)`, summed by anti-diagonals.
pub fn phi3(args: &Phi3Args, tol: &ToleranceConfig) -> Result<EvalResult> {
    phi3_ordered(args, SummationOrder::AntiDiagonal, tol)
}

fn phi3_series(args: &Phi3Args) -> DoubleSeries<impl Fn(usize) -> Complex64, impl Fn(usize) -> Complex64, impl Fn(usize) -> Complex64> {
    let Phi3Args { a, c, x, y } = *args;
    DoubleSeries::new(
        move |k| 1.0 / (c + k as f64),
        move |m| (a + m as f64) * x / (m as f64 + 1.0),
        move |n| y / (n as f64 + 1.0),
    )
}

/// `Φ₃(a; c; x, y)` accumulated in the given order.
pub fn phi3_ordered(args: &Phi3Args, order: SummationOrder, tol: &ToleranceConfig) -> Result<EvalResult> {
    args.validate()?;
    phi3_series(args).evaluate(order, tol, "phi3 double series")
}

/// The first `count` anti-diagonal contributions of `Φ₃`.
pub fn phi3_diagonal_terms(args: &Phi3Args, count: usize) -> Result<Vec<ComplexValue>> {
    args.validate()?;
    let mut s = phi3_series(args);
    Ok((0..count).map(|k| s.diagonal(k).0).collect())
}

/// Closed form `Φ₃(1; 3/2; w, z) = sqrt(pi) e^{w + z/w} / (4 sqrt w)
/// [erf((w - sqrt z)/sqrt w) + erf((w + sqrt z)/sqrt w)]`, principal roots.
pub fn phi3_reduction_13_2(w: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(w, "reduction argument w")?;
    ensure_finite(z, "reduction argument z")?;
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("reduction formula needs w != 0".into()));
    }
    let sw = w.sqrt();
    let sz = z.sqrt();
    let pref = std::f64::consts::PI.sqrt() * (w + z / w).exp() / (4.0 * sw);
    let sum = crate::special::erf((w - sz) / sw) + crate::special::erf((w + sz) / sw);
    Ok(pref * sum)
}

/// Generalized Laguerre polynomial
/// `L_n^α(x) = (α+1)_n / n! * 1F1(-n; α+1; x)`.
///
/// When `α + 1` is a nonpositive integer that the terminating series cannot
/// step over, the explicit sum
/// `sum_i (-1)^i (α+i+1)_{n-i} / ((n-i)! i!) x^i` is used instead.
pub fn laguerre(n: u32, alpha: ComplexValue, x: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(alpha, "laguerre alpha")?;
    ensure_finite(x, "laguerre argument")?;
    let one = Complex64::new(1.0, 0.0);
    let nn = Complex64::new(-(n as f64), 0.0);
    let fact: f64 = (1..=n).map(f64::from).product();
    match HypSeriesSpec::new(vec![nn], vec![alpha + one], x) {
        Ok(spec) => {
            let f = spec.evaluate(&ToleranceConfig::default().with_max_terms(n as usize + 1))?;
            Ok(pochhammer(alpha + one, n) / fact * f.value)
        }
        Err(Error::Parameter(_)) => {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut x_pow_over_fact = one;
            for i in 0..=n {
                let rest: f64 = (1..=n - i).map(f64::from).product();
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * pochhammer(alpha + (i + 1) as f64, n - i) / rest * x_pow_over_fact;
                x_pow_over_fact *= x / (i + 1) as f64;
            }
            Ok(acc)
        }
        Err(e) => Err(e),
    }
}

/// Relative residual between `sum_k t^k / (β)_k L_k^{α-k}(x)`, summed
/// adaptively over at most `k_max` terms, and `Φ₃(-α; β; -t, -t x)`.
pub fn laguerre_generating_residual(
    alpha: ComplexValue,
    beta: ComplexValue,
    t: ComplexValue,
    x: ComplexValue,
    k_max: usize,
    tol: &ToleranceConfig,
) -> Result<f64> {
    admissible_denominator(beta)?;
    let mut sum = SeriesSum::new();
    let mut coef = Complex64::new(1.0, 0.0);
    let mut settled = false;
    for k in 0..k_max {
        let term = if coef == Complex64::new(0.0, 0.0) {
            coef
        } else {
            coef * laguerre(k as u32, alpha - k as f64, x)?
        };
        if sum.push(term, tol.rel_tol) && k >= SMALL_TERMS_TO_STOP {
            settled = true;
            break;
        }
        coef *= t / (beta + k as f64);
    }
    if !settled {
        return Err(Error::convergence(
            "laguerre generating sum",
            EvalResult {
                value: sum.value(),
                abs_err: sum.tail_estimate(),
                terms_used: sum.terms(),
                converged: false,
                magnitude: sum.magnitude(),
            },
        ));
    }
    let rhs = phi3(&Phi3Args::new(-alpha, beta, -t, -t * x)?, &tol.tightened(1e-15))?.value;
    Ok((sum.value() - rhs).norm() / rhs.norm().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::hyp1f1;
    use crate::special::{erf, gamma};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1.0)
    }

    #[test]
    fn phi1_examples() {
        let (a, b, cc) = (c(0.3, 0.1), r(1.2), r(2.5));
        assert_eq!(phi1(a, b, cc, r(0.0), r(0.0), &tol()).unwrap().value, r(1.0));
        // y = 0: the single series sum (a)_m (b)_m / ((c)_m m!) x^m
        let x = c(0.4, -0.2);
        let mut direct = r(0.0);
        let mut t = r(1.0);
        for m in 0..400 {
            direct += t;
            t *= (a + m as f64) * (b + m as f64) / ((cc + m as f64) * (m as f64 + 1.0)) * x;
        }
        assert!(close(phi1(a, b, cc, x, r(0.0), &tol()).unwrap().value, direct, 1e-12));
        let v = phi1(r(1.0), r(1.0), r(2.0), r(0.3), r(0.0), &tol()).unwrap().value;
        assert!((v.re + 0.7f64.ln() / 0.3).abs() < 1e-13);
        assert!(matches!(phi1(a, b, cc, r(1.0), r(0.0), &tol()), Err(Error::Domain(_))));
    }

    #[test]
    fn phi2_examples() {
        let (a, ap, cc) = (r(0.4), c(1.1, 0.5), r(1.7));
        assert_eq!(phi2(a, ap, cc, r(0.0), r(0.0), &tol()).unwrap().value, r(1.0));
        let x = r(1.3);
        let v = phi2(a, ap, cc, x, r(0.0), &tol()).unwrap().value;
        assert!(close(v, hyp1f1(a, cc, x, &tol()).unwrap().value, 1e-13));
        let y = c(-0.8, 0.6);
        let lhs = phi2(a, ap, cc, x, y, &tol()).unwrap().value;
        let rhs = phi2(ap, a, cc, y, x, &tol()).unwrap().value;
        assert!(close(lhs, rhs, 1e-13));
    }

    #[test]
    fn phi3_examples() {
        let one = Phi3Args::new(r(0.3), r(1.5), r(0.0), r(0.0)).unwrap();
        assert_eq!(phi3(&one, &tol()).unwrap().value, r(1.0));
        let args = Phi3Args::new(c(0.3, 0.2), r(1.5), r(2.0), r(0.0)).unwrap();
        let v = phi3(&args, &tol()).unwrap().value;
        assert!(close(v, hyp1f1(args.a, args.c, args.x, &tol()).unwrap().value, 1e-13));
        // m = 0: sum y^n / ((c)_n n!)
        let y = c(-3.0, 1.0);
        let args = Phi3Args::new(r(0.7), r(1.5), r(0.0), y).unwrap();
        let mut direct = r(0.0);
        let mut t = r(1.0);
        for n in 0..200 {
            direct += t;
            t *= y / ((1.5 + n as f64) * (n as f64 + 1.0));
        }
        assert!(close(phi3(&args, &tol()).unwrap().value, direct, 1e-13));
    }

    #[test]
    fn phi3_rejects_bad_input() {
        assert!(matches!(Phi3Args::new(r(1.0), r(-2.0), r(0.5), r(0.5)), Err(Error::Parameter(_))));
        assert!(matches!(Phi3Args::new(r(1.0), r(1.5), r(0.5), r(60.0)), Err(Error::Domain(_))));
        assert!(Phi3Args::new(r(f64::NAN), r(1.5), r(0.5), r(0.5)).is_err());
    }

    #[test]
    fn phi3_term_cap() {
        let args = Phi3Args::new(r(1.0), r(1.5), r(4.0), r(4.0)).unwrap();
        match phi3(&args, &tol().with_max_terms(10)) {
            Err(Error::Convergence { partial, .. }) => assert!(!partial.converged),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn reduction_examples() {
        let expected = PI.sqrt() * 1f64.exp() / 2.0 * erf(r(1.0)).re;
        let closed = phi3_reduction_13_2(r(1.0), r(0.0)).unwrap();
        assert!((closed.re - expected).abs() < 1e-14 * expected);
        let series = hyp1f1(r(1.0), r(1.5), r(1.0), &tol()).unwrap().value;
        assert!((series.re - expected).abs() < 1e-13 * expected);
        for (w, z) in [(0.8, 0.3), (1.5, 1.0)] {
            let closed = phi3_reduction_13_2(r(w), r(z)).unwrap();
            let series = phi3(&Phi3Args::new(r(1.0), r(1.5), r(w), r(z)).unwrap(), &tol()).unwrap().value;
            assert!(close(closed, series, 1e-9), "w={w} z={z}");
        }
        assert!(matches!(phi3_reduction_13_2(r(0.0), r(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn reduction_grid() {
        for i in 0..5 {
            for j in 0..5 {
                let w = 0.4 + 0.4 * i as f64;
                let z = 0.5 * j as f64;
                let closed = phi3_reduction_13_2(r(w), r(z)).unwrap();
                let series = phi3(&Phi3Args::new(r(1.0), r(1.5), r(w), r(z)).unwrap(), &tol()).unwrap().value;
                assert!(close(closed, series, 1e-9), "w={w} z={z}");
            }
        }
    }

    #[test]
    fn laguerre_examples() {
        let alpha = c(0.3, -0.4);
        let x = c(1.7, 0.2);
        assert_eq!(laguerre(0, alpha, x).unwrap(), r(1.0));
        assert!((laguerre(1, alpha, x).unwrap() - (1.0 + alpha - x)).norm() < 1e-15);
        for n in [2u32, 5, 9] {
            let expected = gamma(alpha + n as f64 + 1.0).unwrap()
                / (gamma(r(n as f64 + 1.0)).unwrap() * gamma(alpha + 1.0).unwrap());
            assert!(close(laguerre(n, alpha, r(0.0)).unwrap(), expected, 1e-12));
        }
        // alpha + 1 a nonpositive integer: explicit sum, L_2^{-2}(x) = x^2/2
        let v = laguerre(2, r(-2.0), r(3.0)).unwrap();
        assert!((v - r(4.5)).norm() < 1e-14);
    }

    #[test]
    fn laguerre_at_the_half_integer_shift() {
        // L_n^{-n-1/2}: 1F1(-n; 1/2 - n; x) path; compare with the explicit sum
        for n in 0..8u32 {
            let alpha = r(-(n as f64) - 0.5);
            let x = r(1.3);
            let v = laguerre(n, alpha, x).unwrap();
            let mut explicit = r(0.0);
            for i in 0..=n {
                let rest: f64 = (1..=n - i).map(f64::from).product();
                let fi: f64 = (1..=i).map(f64::from).product();
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                explicit += sign * pochhammer(alpha + (i + 1) as f64, n - i) / rest * x.powu(i) / fi;
            }
            assert!(close(v, explicit, 1e-13), "n={n}");
        }
    }

    #[test]
    fn generating_identity_examples() {
        let t = tol();
        let w: f64 = 0.6;
        assert_eq!(laguerre_generating_residual(r(-0.5), r(0.5), r(0.0), r(1.0), 100, &t).unwrap(), 0.0);
        for x in [0.5, 1.0, 2.0, 4.0] {
            let res = laguerre_generating_residual(r(-0.5), r(0.5), r(w * w / 4.0), r(x), 100, &t).unwrap();
            assert!(res <= 1e-9, "x={x}: {res}");
            let res = laguerre_generating_residual(r(-0.5), r(2.5), r(-w * w / 4.0), r(x), 100, &t).unwrap();
            assert!(res <= 1e-9, "x={x}: {res}");
        }
        assert!(matches!(
            laguerre_generating_residual(r(-0.5), r(0.5), r(0.09), r(1.0), 2, &t),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn diagonal_sums_are_cauchy() {
        let args = Phi3Args::new(r(0.5), r(2.5), r(3.0), r(-4.0)).unwrap();
        let d = phi3_diagonal_terms(&args, 60).unwrap();
        let norms: Vec<f64> = d.iter().map(|z| z.norm()).collect();
        // beyond the peak the contributions decrease monotonically to zero
        let k0 = 12;
        for w in norms[k0..].windows(2) {
            assert!(w[1] < w[0]);
        }
        assert!(norms[59] < 1e-30);
    }

    fn admissible(c: Complex64) -> bool {
        let k = c.re.round().min(0.0);
        (c - k).norm() >= 0.1
    }

    fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
        (-radius..radius, -radius..radius)
            .prop_map(|(re, im)| Complex64::new(re, im))
            .prop_filter("inside disc", move |z| z.norm() <= radius)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn phi3_on_the_x_axis_is_1f1(a in complex_in(4.0), cc in complex_in(4.0), x in complex_in(3.0)) {
            prop_assume!(admissible(cc));
            let args = Phi3Args::new(a, cc, x, r(0.0)).unwrap();
            let v = phi3(&args, &tol()).unwrap().value;
            let f = hyp1f1(a, cc, x, &tol()).unwrap().value;
            prop_assert!(close(v, f, 1e-12), "{v} vs {f}");
        }

        #[test]
        fn summation_order_does_not_matter(
            a in complex_in(3.0),
            cc in (0.5f64..4.0),
            x in complex_in(5.0),
            y in complex_in(5.0),
        ) {
            let args = Phi3Args::new(a, r(cc), x, y).unwrap();
            let d = phi3_ordered(&args, SummationOrder::AntiDiagonal, &tol()).unwrap().value;
            let rows = phi3_ordered(&args, SummationOrder::Rows, &tol()).unwrap().value;
            let cols = phi3_ordered(&args, SummationOrder::Columns, &tol()).unwrap().value;
            prop_assert!(close(rows, d, 1e-12), "rows {rows} vs {d}");
            prop_assert!(close(cols, d, 1e-12), "cols {cols} vs {d}");
        }

        #[test]
        fn laguerre_three_term_recurrence(n in 1u32..12, alpha in complex_in(3.0), x in complex_in(4.0)) {
            // (n+1) L_{n+1} = (2n+1+α-x) L_n - (n+α) L_{n-1}
            let nf = n as f64;
            let lhs = (nf + 1.0) * laguerre(n + 1, alpha, x).unwrap();
            let rhs = (2.0 * nf + 1.0 + alpha - x) * laguerre(n, alpha, x).unwrap()
                - (nf + alpha) * laguerre(n - 1, alpha, x).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
        }
    }
}
