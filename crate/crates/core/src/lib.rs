//! The generalized modified Bessel function `K_{z,w}(x)`, the special
//! functions it is built from, and numerical checks of the transformation
//! formulas it satisfies.
//!
//! ```
//! use kzw_core::kzw::{khalf_series, kzw_contour, ContourSpec, KzwPoint};
//! use kzw_core::{ComplexValue, ToleranceConfig};
//!
//! let c = |x: f64| ComplexValue::new(x, 0.0);
//! let tol = ToleranceConfig::default();
//! let p = KzwPoint::new(c(0.5), c(1.0), c(2.0))?;
//! let contour = kzw_contour(&p, &ContourSpec::for_order(c(0.5)), &tol)?;
//! let series = khalf_series(c(1.0), c(2.0), &tol)?;
//! assert!((contour.value - series.value).norm() < 1e-10);
//! # Ok::<(), kzw_core::Error>(())
//! ```
//!
//! Modules, roughly bottom to top: [`special`], [`hypergeometric`],
//! [`humbert`], [`kzw`], [`identities`], [`voigt`].

mod dd;
pub mod error;
pub mod eval;
pub mod humbert;
pub mod hypergeometric;
pub mod identities;
pub mod kzw;
mod quadrature;
mod series;
pub mod special;
pub mod voigt;

pub use error::{Error, Result};
pub use eval::{ComplexValue, EvalResult, ToleranceConfig};
