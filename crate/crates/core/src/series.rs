//! Compensated running sums with the three-small-terms stopping rule.

use num_complex::Complex64;

/// Number of consecutive negligible terms required before a series is
/// declared settled. Hypergeometric terms can pass through an isolated near
/// zero when a Pochhammer product changes sign, so one small term is not
/// enough.
pub const SMALL_TERMS_TO_STOP: usize = 3;

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct SeriesSum {
    re: Neumaier,
    im: Neumaier,
    magnitude: f64,
    small_run: usize,
    terms: usize,
    last: f64,
    before_last: f64,
}

impl SeriesSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: Complex64) {
        self.re.add(t.re);
        self.im.add(t.im);
        self.magnitude += t.norm();
        self.terms += 1;
        self.before_last = self.last;
        self.last = t.norm();
    }

    /// Adds `t` and reports whether the stopping rule now holds.
    pub fn push(&mut self, t: Complex64, rel_tol: f64) -> bool {
        self.add(t);
        if t.norm() <= rel_tol * self.value().norm() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= SMALL_TERMS_TO_STOP
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Estimate of the omitted tail from the geometric decay of the last two
    /// terms.
    pub fn tail_estimate(&self) -> f64 {
        geometric_tail(self.last, self.before_last)
    }

    /// Rounding error estimate for the compensated sum.
    pub fn rounding_estimate(&self) -> f64 {
        2.0 * f64::EPSILON * self.magnitude
    }
}

/// Tail of a series whose last two term moduli are `last` and
/// `before_last`, assuming geometric decay; the last term itself when decay
/// is not evident.
pub(crate) fn geometric_tail(last: f64, before_last: f64) -> f64 {
    if before_last > 0.0 && last < 0.9 * before_last {
        let r = last / before_last;
        last * r / (1.0 - r)
    } else {
        last
    }
}
