//! The guide under `book/src`, one module per chapter, so that every Rust
//! listing in it runs as a doc-test. mdbook alone cannot link the listings
//! against `kzw-core`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/tolerances.md")]
pub mod tolerances {}
#[doc = include_str!("../../../book/src/special-functions.md")]
pub mod special_functions {}
#[doc = include_str!("../../../book/src/hypergeometric.md")]
pub mod hypergeometric {}
#[doc = include_str!("../../../book/src/humbert.md")]
pub mod humbert {}
#[doc = include_str!("../../../book/src/kzw.md")]
pub mod kzw {}
#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}
#[doc = include_str!("../../../book/src/voigt.md")]
pub mod voigt {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
