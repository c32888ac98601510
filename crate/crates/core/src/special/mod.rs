//! Gamma, Pochhammer, zeta, error functions and divisor sums.

mod divisor;
mod erf;
mod gamma;
mod zeta;

pub use divisor::{divisors, sigma};
pub(crate) use divisor::sigma_minus_one;
pub use erf::{erf, erfc, erfcx, erfi, faddeeva_w};
pub use gamma::{gamma, ln_gamma, pochhammer, POLE_TOLERANCE};
pub(crate) use gamma::ln_gamma_unchecked;
pub use zeta::zeta;
