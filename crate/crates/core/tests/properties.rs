//! Randomized checks that cut across modules.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use kzw_core::identities::{check_eta_transformation, check_generalized_eta, ModularPair};
use kzw_core::kzw::{inverse_mellin_lemma, khalf_series, kzw_contour, ContourSpec, KzwPoint};
use kzw_core::special::{erf, gamma, zeta};
use kzw_core::voigt::{voigt_cdf, VoigtParams};
use kzw_core::ToleranceConfig;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contour_matches_series(w in 0.0f64..1.2, x in 0.4f64..6.0) {
        let tol = ToleranceConfig::default().with_rel_tol(1e-11);
        let p = KzwPoint::new(r(0.5), r(w), r(x)).unwrap();
        let c = kzw_contour(&p, &ContourSpec::for_order(r(0.5)), &tol).unwrap().value;
        let s = khalf_series(r(w), r(x), &tol).unwrap().value;
        prop_assert!((c - s).norm() <= 1e-8 * c.norm().max(1.0), "w={w} x={x}: {c} vs {s}");
    }

    #[test]
    fn lemma_holds_off_the_grid(n in 0u32..5, x in 0.3f64..3.0) {
        let rep = inverse_mellin_lemma(n, r(x), &ContourSpec::lemma(), &ToleranceConfig::default().with_rel_tol(1e-9)).unwrap();
        prop_assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn generalized_eta_holds(w in 0.0f64..1.5, a in 0.8f64..4.0) {
        let p = ModularPair::from_a(a).unwrap();
        let rep = check_generalized_eta(w, &p, &ToleranceConfig::default().with_rel_tol(1e-8)).unwrap();
        prop_assert!(rep.pass, "w={w} a={a}: {rep:?}");
    }
}

proptest! {
    #[test]
    fn eta_holds_for_any_pair(a in 0.3f64..10.0) {
        let rep = check_eta_transformation(&ModularPair::from_a(a).unwrap(), &ToleranceConfig::default()).unwrap();
        prop_assert!(rep.abs_residual <= 1e-10, "a={a}: {rep:?}");
    }

    #[test]
    fn gamma_recurrence(re in -4.5f64..6.0, im in -5.0f64..5.0) {
        let s = Complex64::new(re, im);
        prop_assume!((0..6).all(|k| (s + k as f64).norm() > 0.05));
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn zeta_functional_equation(re in -3.0f64..4.0, im in 0.5f64..10.0) {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let s = Complex64::new(re, im);
        let rhs = r(2.0).powc(s) * r(PI).powc(s - 1.0) * (s * PI / 2.0).sin() * gamma(1.0 - s).unwrap() * zeta(1.0 - s).unwrap();
        let lhs = zeta(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0), "s={s}");
    }

    #[test]
    fn erf_conjugate_symmetry(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let z = Complex64::new(re, im);
        prop_assert!((erf(z.conj()) - erf(z).conj()).norm() <= 1e-15 * erf(z).norm().max(1.0));
        prop_assert!((erf(-z) + erf(z)).norm() <= 1e-15 * erf(z).norm().max(1.0));
    }

    #[test]
    fn voigt_cdf_reflects(s in 0.5f64..3.0, b in 0.05f64..2.0, x in 0.0f64..4.0) {
        // F(-x) = 1 - F(x) for a symmetric density
        let p = VoigtParams::new(s, b).unwrap();
        prop_assume!(p.w(x).norm() <= 6.0);
        prop_assert!((voigt_cdf(-x, &p).unwrap() + voigt_cdf(x, &p).unwrap() - 1.0).abs() <= 1e-12);
    }
}
