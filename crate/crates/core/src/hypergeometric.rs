//! Confluent hypergeometric series `pFq` with `p = q`, summed term by term.

use num_complex::Complex64;

use crate::dd::{DdComplex, DD_EPSILON};
use crate::error::{Error, Result};
use crate::eval::{ensure_finite, nonpositive_integer_near, ComplexValue, EvalResult, ToleranceConfig};
use crate::series::{geometric_tail, SeriesSum, SMALL_TERMS_TO_STOP};

/// Distance to a nonpositive integer below which a numerator parameter is
/// treated as terminating the series.
pub const TERMINATION_TOLERANCE: f64 = 1e-12;

/// Inner tolerance for the residual diagnostics.
const DIAGNOSTIC_REL_TOL: f64 = 1e-15;

/// Parameters and argument of a hypergeometric series
/// `sum_m prod (a_i)_m / prod (c_j)_m * z^m / m!`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec {
    numerator_params: Vec<ComplexValue>,
    denominator_params: Vec<ComplexValue>,
    argument: ComplexValue,
}

impl HypSeriesSpec {
    /// Validates the parameters.
    ///
    /// A denominator parameter at `-j` is admissible only when some
    /// numerator parameter `-k` with `k < j` stops the series first.
    pub fn new(
        numerator_params: Vec<ComplexValue>,
        denominator_params: Vec<ComplexValue>,
        argument: ComplexValue,
    ) -> Result<Self> {
        for &p in numerator_params.iter().chain(&denominator_params) {
            ensure_finite(p, "hypergeometric parameter")?;
        }
        ensure_finite(argument, "hypergeometric argument")?;
        let spec = HypSeriesSpec {
            numerator_params,
            denominator_params,
            argument,
        };
        let stop = spec.terminating_order();
        for &c in &spec.denominator_params {
            if let Some(j) = nonpositive_integer_near(c, TERMINATION_TOLERANCE) {
                let j = (-j) as u64;
                if !matches!(stop, Some(k) if k < j) {
                    return Err(Error::Parameter(format!(
                        "denominator parameter {c} is a nonpositive integer and the series does not terminate before it"
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn numerator_params(&self) -> &[ComplexValue] {
        &self.numerator_params
    }

    pub fn denominator_params(&self) -> &[ComplexValue] {
        &self.denominator_params
    }

    pub fn argument(&self) -> ComplexValue {
        self.argument
    }

    /// Index of the last nonzero term when some numerator parameter is a
    /// nonpositive integer `-k`; the smallest such `k`.
    pub fn terminating_order(&self) -> Option<u64> {
        self.numerator_params
            .iter()
            .filter_map(|&a| nonpositive_integer_near(a, TERMINATION_TOLERANCE))
            .map(|k| (-k) as u64)
            .min()
    }

    fn ratio(&self, m: usize) -> Complex64 {
        let mf = m as f64;
        let num: Complex64 = self.numerator_params.iter().map(|&a| a + mf).product();
        let den: Complex64 = self.denominator_params.iter().map(|&c| c + mf).product();
        num / den * self.argument / (mf + 1.0)
    }

    /// Sums the series until three consecutive terms fall below
    /// `rel_tol * |partial sum|` and the geometric tail estimate agrees.
    pub fn evaluate(&self, tol: &ToleranceConfig) -> Result<EvalResult> {
        tol.validate()?;
        let stop = self.terminating_order();
        let mut sum = SeriesSum::new();
        let mut term = Complex64::new(1.0, 0.0);
        let mut settled = false;
        for m in 0..tol.max_terms {
            let small = sum.push(term, tol.rel_tol);
            if stop == Some(m as u64) {
                settled = true;
                break;
            }
            if stop.is_none() && small && sum.tail_estimate() <= tol.rel_tol * sum.value().norm() {
                settled = true;
                break;
            }
            term *= self.ratio(m);
            if !(term.re.is_finite() && term.im.is_finite()) {
                return Err(Error::NonFinite("hypergeometric term"));
            }
        }
        let tail = if stop.is_some() { 0.0 } else { sum.tail_estimate() };
        let abs_err = tail + sum.rounding_estimate();
        let value = sum.value();
        let result = EvalResult {
            value,
            abs_err,
            terms_used: sum.terms(),
            converged: settled && abs_err <= tol.abs_target(value.norm(), sum.magnitude()),
            magnitude: sum.magnitude(),
        };
        if settled {
            Ok(result)
        } else {
            Err(Error::convergence("hypergeometric series", result))
        }
    }

    /// As [`evaluate`](Self::evaluate), but the terms and the running sum
    /// are carried in double-double arithmetic, so that cancellation between
    /// terms of size up to about `1e15 |sum|` is still resolved.
    ///
    /// The reported `magnitude` is rescaled to the double-double roundoff so
    /// that [`ToleranceConfig::abs_target`] remains meaningful.
    pub fn evaluate_compensated(&self, tol: &ToleranceConfig) -> Result<EvalResult> {
        tol.validate()?;
        let stop = self.terminating_order();
        let mut acc = DdComplex::default();
        let mut term = DdComplex::from(Complex64::new(1.0, 0.0));
        let z = DdComplex::from(self.argument);
        let mut l1 = 0.0;
        let mut small_run = 0;
        let mut last = 0.0f64;
        let mut before_last = 0.0f64;
        let mut settled = false;
        let mut terms = 0;
        for m in 0..tol.max_terms {
            acc = acc + term;
            terms += 1;
            let tn = term.norm_f64();
            l1 += tn;
            before_last = last;
            last = tn;
            if tn <= tol.rel_tol * acc.norm_f64() {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if stop == Some(m as u64) {
                settled = true;
                break;
            }
            if stop.is_none()
                && small_run >= SMALL_TERMS_TO_STOP
                && geometric_tail(last, before_last) <= tol.rel_tol * acc.norm_f64()
            {
                settled = true;
                break;
            }
            let mf = m as f64;
            let mut num = DdComplex::from(Complex64::new(1.0, 0.0));
            for &a in &self.numerator_params {
                num = num * DdComplex::from(a + mf);
            }
            let mut den = DdComplex::from(Complex64::new(mf + 1.0, 0.0));
            for &c in &self.denominator_params {
                den = den * DdComplex::from(c + mf);
            }
            term = term * num / den * z;
            if !term.norm_f64().is_finite() {
                return Err(Error::NonFinite("hypergeometric term"));
            }
        }
        let value = acc.to_complex();
        let tail = if stop.is_some() {
            0.0
        } else {
            geometric_tail(last, before_last)
        };
        let magnitude = value.norm() + l1 * DD_EPSILON / f64::EPSILON;
        let abs_err = tail + 0.5 * f64::EPSILON * value.norm() + 4.0 * DD_EPSILON * l1;
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
            Err(Error::convergence("hypergeometric series", result))
        }
    }
}

/// Kummer's confluent hypergeometric function `1F1(a; c; z)`.
pub fn hyp1f1(a: ComplexValue, c: ComplexValue, z: ComplexValue, tol: &ToleranceConfig) -> Result<EvalResult> {
    HypSeriesSpec::new(vec![a], vec![c], z)?.evaluate(tol)
}

/// `2F2(a1, a2; c1, c2; z)`.
pub fn hyp2f2(
    a1: ComplexValue,
    a2: ComplexValue,
    c1: ComplexValue,
    c2: ComplexValue,
    z: ComplexValue,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    HypSeriesSpec::new(vec![a1, a2], vec![c1, c2], z)?.evaluate(tol)
}

/// `2F2(a1, a2; c1, c2; z)` summed in double-double arithmetic, for
/// arguments where the terms cancel heavily (large negative `z`).
pub fn hyp2f2_compensated(
    a1: ComplexValue,
    a2: ComplexValue,
    c1: ComplexValue,
    c2: ComplexValue,
    z: ComplexValue,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    HypSeriesSpec::new(vec![a1, a2], vec![c1, c2], z)?.evaluate_compensated(tol)
}

fn diagnostic_tol() -> ToleranceConfig {
    ToleranceConfig::default().with_rel_tol(DIAGNOSTIC_REL_TOL)
}

/// `|1F1(a;c;z) - e^z 1F1(c-a;c;-z)| / max(1, |1F1(a;c;z)|)`.
pub fn kummer_transform_residual(a: ComplexValue, c: ComplexValue, z: ComplexValue) -> Result<f64> {
    let tol = diagnostic_tol();
    let lhs = hyp1f1(a, c, z, &tol)?.value;
    let rhs = z.exp() * hyp1f1(c - a, c, -z, &tol)?.value;
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}

/// Relative residual between `1F1(a;c;x) 1F1(a';c;x)` and its expansion
/// `sum_r (a)_r (a')_r / (r! (c)_r (c)_{2r}) x^{2r} 1F1(a+a'+2r; c+2r; x)`,
/// the latter summed adaptively over at most `r_max` terms.
pub fn chaundy_product_residual(
    a: ComplexValue,
    a_p: ComplexValue,
    c: ComplexValue,
    x: ComplexValue,
    r_max: usize,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if r_max < 1 {
        return Err(Error::Parameter("r_max must be at least 1".into()));
    }
    let inner = tol.tightened(DIAGNOSTIC_REL_TOL);
    let product = hyp1f1(a, c, x, &inner)?.value * hyp1f1(a_p, c, x, &inner)?.value;

    let x2 = x * x;
    let mut coef = Complex64::new(1.0, 0.0);
    let mut sum = SeriesSum::new();
    let mut settled = false;
    for r in 0..r_max {
        let rf = r as f64;
        let term = if coef == Complex64::new(0.0, 0.0) {
            coef
        } else {
            coef * hyp1f1(a + a_p + 2.0 * rf, c + 2.0 * rf, x, &inner)?.value
        };
        if sum.push(term, tol.rel_tol) {
            settled = true;
            break;
        }
        coef *= (a + rf) * (a_p + rf) / ((rf + 1.0) * (c + rf) * (c + 2.0 * rf) * (c + 2.0 * rf + 1.0)) * x2;
    }
    if !settled {
        let value = sum.value();
        return Err(Error::convergence(
            "product expansion",
            EvalResult {
                value,
                abs_err: sum.tail_estimate(),
                terms_used: sum.terms(),
                converged: false,
                magnitude: sum.magnitude(),
            },
        ));
    }
    Ok((product - sum.value()).norm() / product.norm().max(1.0))
}

/// `lim_{s -> 1} d/ds 1F1((1-s)/2; 1/2; z^2/4) = -(z^2/4) 2F2(1,1; 3/2,2; z^2/4)`.
pub fn kummer_derivative_limit(z: ComplexValue) -> Result<ComplexValue> {
    let q = z * z / 4.0;
    let one = Complex64::new(1.0, 0.0);
    let f = hyp2f2(one, one, Complex64::new(1.5, 0.0), Complex64::new(2.0, 0.0), q, &diagnostic_tol())?;
    Ok(-q * f.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{erf, erfi, pochhammer};
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

    #[test]
    fn zero_argument_gives_one() {
        for (a, b) in [(r(0.3), r(1.7)), (c(2.0, -1.0), c(-0.5, 0.5)), (r(-3.0), r(4.0))] {
            let v = hyp1f1(a, b, r(0.0), &tol()).unwrap();
            assert_eq!(v.value, r(1.0));
            assert!(v.converged);
        }
        let v = hyp2f2(r(1.0), r(1.0), r(1.5), r(2.0), r(0.0), &tol()).unwrap();
        assert_eq!(v.value, r(1.0));
    }

    #[test]
    fn equal_parameters_give_the_exponential() {
        for x in [0.5, 1.0, 2.0] {
            let v = hyp1f1(r(0.5), r(0.5), r(-x), &tol()).unwrap();
            assert!((v.value.re - (-x).exp()).abs() <= 1e-15);
            assert!(v.converged);
        }
    }

    #[test]
    fn error_function_reductions() {
        for w in [0.5, 1.0, 2.0, 3.0] {
            let q = w * w / 4.0;
            let plus = hyp1f1(r(1.0), r(0.5), r(q), &tol()).unwrap().value;
            let expected = 1.0 + PI.sqrt() * w / 2.0 * q.exp() * erf(r(w / 2.0)).re;
            assert!((plus.re - expected).abs() <= 1e-13 * expected, "w={w}");
            let minus = hyp1f1(r(1.0), r(0.5), r(-q), &tol()).unwrap().value;
            let expected = 1.0 - PI.sqrt() * w / 2.0 * (-q).exp() * erfi(r(w / 2.0)).re;
            assert!((minus.re - expected).abs() <= 1e-13, "w={w}");
        }
    }

    #[test]
    fn terminating_series_sum_exactly() {
        // 1F1(-3; c; z) is a cubic
        let a = r(-3.0);
        let b = c(0.7, 0.2);
        let z = c(1.3, -0.4);
        let v = hyp1f1(a, b, z, &tol()).unwrap();
        assert_eq!(v.terms_used, 4);
        let mut direct = r(0.0);
        for m in 0..4u32 {
            let fact: f64 = (1..=m).map(f64::from).product();
            direct += pochhammer(a, m) / pochhammer(b, m) * z.powu(m) / fact;
        }
        assert!((v.value - direct).norm() < 1e-14);
        // denominator at -5 is fine because the numerator stops at m = 2
        let v = hyp1f1(r(-2.0), r(-5.0), r(0.5), &tol()).unwrap();
        let expected = 1.0 + (-2.0 / -5.0) * 0.5 + (-2.0 * -1.0) / (-5.0 * -4.0) * 0.25 / 2.0;
        assert!((v.value.re - expected).abs() < 1e-15);
        assert_eq!(v.terms_used, 3);
        // half-integer denominator below the numerator
        let v = hyp1f1(r(-4.0), r(0.5 - 4.0), r(0.8), &tol()).unwrap();
        assert_eq!(v.terms_used, 5);
    }

    #[test]
    fn nonterminating_pole_is_rejected() {
        assert!(matches!(hyp1f1(r(0.5), r(-2.0), r(1.0), &tol()), Err(Error::Parameter(_))));
        assert!(matches!(hyp1f1(r(-3.0), r(-2.0), r(1.0), &tol()), Err(Error::Parameter(_))));
        assert!(matches!(hyp1f1(r(1.0), r(0.0), r(1.0), &tol()), Err(Error::Parameter(_))));
        assert!(matches!(
            hyp2f2(r(1.0), r(1.0), r(1.5), r(-1.0), r(0.2), &tol()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn term_cap_reports_partial_result() {
        let t = tol().with_max_terms(5);
        match hyp1f1(r(0.5), r(1.5), r(10.0), &t) {
            Err(Error::Convergence { partial, .. }) => {
                assert_eq!(partial.terms_used, 5);
                assert!(!partial.converged);
                assert!(partial.value.re > 1.0);
            }
            other => panic!("expected a convergence error, got {other:?}"),
        }
    }

    #[test]
    fn hyp2f2_leading_coefficient() {
        let z = 1e-6;
        let v = hyp2f2(r(1.0), r(1.0), r(1.5), r(2.0), r(z), &tol()).unwrap().value.re;
        assert!(((v - 1.0) / z - 1.0 / 3.0).abs() < 1e-6);
    }

    fn kummer_fd(z: Complex64, s: f64, h: f64) -> Complex64 {
        let f = |s: f64| hyp1f1(r((1.0 - s) / 2.0), r(0.5), z * z / 4.0, &tol().with_rel_tol(1e-15)).unwrap().value;
        (f(s + h) - f(s - h)) / (2.0 * h)
    }

    #[test]
    fn hyp2f2_against_derivative_oracle() {
        // z = 1: 2F2(1,1;3/2,2;1/4) = -4 d/ds 1F1((1-s)/2;1/2;1/4) at s = 1
        let fd = kummer_fd(r(1.0), 1.0, 1e-5);
        let v = hyp2f2(r(1.0), r(1.0), r(1.5), r(2.0), r(0.25), &tol()).unwrap().value;
        assert!((v + 4.0 * fd).norm() < 1e-6 * 4.0);
    }

    #[test]
    fn kummer_derivative_limit_examples() {
        assert_eq!(kummer_derivative_limit(r(0.0)).unwrap(), r(0.0));
        for z in [1.0, 0.5] {
            let fd = kummer_fd(r(z), 1.0, 1e-5);
            assert!((kummer_derivative_limit(r(z)).unwrap() - fd).norm() <= 1e-6);
        }
    }

    #[test]
    fn compensated_sum_resolves_heavy_cancellation() {
        // 30-digit reference values
        let cases = [
            (r(-36.0), r(0.076_844_947_757_558_384_68)),
            (r(-25.0), r(0.103_234_818_018_094_805_6)),
            (r(-4.0), r(0.398_093_602_422_583_299_8)),
            (c(-30.0, 5.0), c(0.087_401_920_325_381_278_92, 0.011_767_073_312_629_540_87)),
        ];
        for (z, expected) in cases {
            let v = hyp2f2_compensated(r(1.0), r(1.0), r(1.5), r(2.0), z, &tol().with_rel_tol(1e-15)).unwrap();
            assert!((v.value - expected).norm() <= 1e-14 * expected.norm(), "{z}: {}", v.value);
            assert!(v.converged);
        }
        // plain summation loses most digits at z = -36 and its error bound says so
        let plain = hyp2f2(r(1.0), r(1.0), r(1.5), r(2.0), r(-36.0), &tol()).unwrap();
        assert!(plain.abs_err > 1e-6 * plain.value.norm());
    }

    #[test]
    fn kummer_transform_examples() {
        assert!(kummer_transform_residual(r(0.7), r(1.3), r(0.9)).unwrap() <= 1e-11);
        assert!(kummer_transform_residual(r(0.5), r(0.5), r(-1.0)).unwrap() <= 1e-13);
        assert!(kummer_transform_residual(r(2.0), r(3.5), c(1.0, 0.5)).unwrap() <= 1e-11);
        // reference values
        let v = hyp1f1(r(0.7), r(1.3), r(0.9), &tol()).unwrap().value;
        assert!((v.re - 1.694_437_079_279_297_424).abs() < 1e-14);
        let v = hyp1f1(r(2.0), r(3.5), c(1.0, 0.5), &tol()).unwrap().value;
        assert!((v - c(1.719_844_544_325_667_524, 0.554_947_771_749_832_290_2)).norm() < 1e-14);
    }

    #[test]
    fn chaundy_examples() {
        let t = tol();
        assert!(chaundy_product_residual(r(0.5), r(0.5), r(0.5), r(0.3), 64, &t).unwrap() <= 1e-10);
        assert_eq!(chaundy_product_residual(r(0.5), r(0.5), r(0.5), r(0.0), 64, &t).unwrap(), 0.0);
        assert!(chaundy_product_residual(r(0.25), r(0.75), r(1.5), r(1.2), 64, &t).unwrap() <= 1e-10);
        assert!(matches!(
            chaundy_product_residual(r(0.25), r(0.75), r(1.5), r(1.2), 1, &t),
            Err(Error::Convergence { .. })
        ));
    }

    fn away_from_poles(c: Complex64, d: f64) -> bool {
        let k = c.re.round().min(0.0);
        (c - k).norm() >= d
    }

    fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
        (-radius..radius, -radius..radius)
            .prop_map(|(re, im)| Complex64::new(re, im))
            .prop_filter("inside disc", move |z| z.norm() <= radius)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn kummer_transform_holds(a in complex_in(4.0), b in complex_in(4.0), z in complex_in(3.0)) {
            prop_assume!(away_from_poles(b, 0.1));
            let res = kummer_transform_residual(a, b, z).unwrap();
            prop_assert!(res <= 1e-10, "a={a} c={b} z={z}: {res}");
        }

        #[test]
        fn stopping_rule_sees_three_small_terms(a in complex_in(4.0), b in complex_in(4.0), z in complex_in(3.0)) {
            prop_assume!(away_from_poles(b, 0.1));
            prop_assume!(nonpositive_integer_near(a, TERMINATION_TOLERANCE).is_none());
            let t = tol();
            let v = hyp1f1(a, b, z, &t).unwrap();
            let n = v.terms_used as u32;
            prop_assert!(n >= 3);
            for m in n - 3..n {
                let fact: f64 = (1..=m).map(f64::from).product();
                let term = pochhammer(a, m) / pochhammer(b, m) * z.powu(m) / fact;
                prop_assert!(term.norm() <= t.rel_tol * v.value.norm() * 1.01 + 1e-300);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn chaundy_expansion_holds(a in complex_in(3.0), ap in complex_in(3.0), b in complex_in(3.0), x in complex_in(2.0)) {
            prop_assume!(away_from_poles(b, 0.1));
            let res = chaundy_product_residual(a, ap, b, x, 200, &tol()).unwrap();
            prop_assert!(res <= 1e-9, "a={a} a'={ap} c={b} x={x}: {res}");
        }

        #[test]
        fn derivative_limit_matches_finite_difference(z in complex_in(2.0)) {
            let fd = kummer_fd(z, 1.0, 1e-5);
            let v = kummer_derivative_limit(z).unwrap();
            prop_assert!((v - fd).norm() <= 1e-6, "z={z}");
        }
    }
}
