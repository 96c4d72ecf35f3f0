//! The guide's code listings, compiled as doc-tests. Each chapter under
//! `book/src` becomes the documentation of one empty module here, so
//! `cargo test --doc -p apolarity-book` runs every snippet.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/inverse-systems.md")]
pub mod inverse_systems {}
#[doc = include_str!("../../../book/src/socle.md")]
pub mod socle {}
#[doc = include_str!("../../../book/src/lefschetz.md")]
pub mod lefschetz {}
#[doc = include_str!("../../../book/src/type-two.md")]
pub mod type_two {}
#[doc = include_str!("../../../book/src/nonunimodal.md")]
pub mod nonunimodal {}
#[doc = include_str!("../../../book/src/points.md")]
pub mod points {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
