//! The guide under `book/` is not a crate, so its chapters are pulled in as
//! module docs here and `cargo test` runs every code block. One module per
//! chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/correlation.md")]
pub mod correlation {}
#[doc = include_str!("../../../book/src/stems.md")]
pub mod stems {}
#[doc = include_str!("../../../book/src/limits.md")]
pub mod limits {}
#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}
#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
