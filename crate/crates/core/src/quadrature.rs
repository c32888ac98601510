//! Gauss–Legendre panels with adaptive bisection.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::Result;

/// Multiple of `ε ∫|f|` below which a bisection difference is accepted.
const ROUNDOFF_FLOOR: f64 = 4.0;

/// Nodes per panel.
pub(crate) const PANEL_NODES: usize = 20;

pub(crate) struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`, nodes by Newton iteration on
/// the three-term recurrence.
pub(crate) fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn panel_rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_NODES))
}

/// Integral of `f` over `[a, b]` together with the integral of `|f|`.
pub(crate) fn gl_panel<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let rule = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(mid + half * x)?;
        acc += v * w;
        l1 += v.norm() * w;
    }
    Ok((acc * half, l1 * half.abs()))
}

/// Outcome of an adaptive integration over one interval.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Quad {
    pub value: Complex64,
    pub err: f64,
    pub l1: f64,
    pub panels: usize,
    pub exhausted: bool,
}

/// Refines `[a, b]`, whose single-panel estimate is `whole`, by bisection
/// until `|whole - (left + right)|` is below the interval's share of
/// `abs_target`. Each panel evaluation consumes one unit of `budget`.
pub(crate) fn adaptive<F>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: (Complex64, f64),
    abs_target: f64,
    budget: &mut usize,
) -> Result<Quad>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut out = Quad::default();
    let mut stack = vec![(a, b, whole, abs_target)];
    while let Some((lo, hi, whole, target)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        if *budget < 2 || mid <= lo || mid >= hi {
            out.value += whole.0;
            out.l1 += whole.1;
            out.err += target.max(whole.1 * f64::EPSILON);
            out.exhausted |= *budget < 2;
            continue;
        }
        *budget -= 2;
        out.panels += 2;
        let left = gl_panel(f, lo, mid)?;
        let right = gl_panel(f, mid, hi)?;
        let err = (whole.0 - (left.0 + right.0)).norm();
        // differences at the rounding level of the panel cannot be resolved further
        let floor = ROUNDOFF_FLOOR * f64::EPSILON * (left.1 + right.1);
        if err <= target.max(floor) {
            out.value += left.0 + right.0;
            out.l1 += left.1 + right.1;
            out.err += err;
        } else {
            // right half is pushed first so the left half is finished first
            stack.push((mid, hi, right, 0.5 * target));
            stack.push((lo, mid, left, 0.5 * target));
        }
    }
    Ok(out)
}
