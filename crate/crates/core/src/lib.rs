//! Exact computation of Chow and augmented Chow polynomials of finite graded
//! posets, together with the machinery they factor through: Möbius functions,
//! characteristic and Poincaré polynomials of intervals, R-labelings, and the
//! Poincaré-extended ab-index.
//!
//! Three independent algorithms produce each Chow polynomial:
//!
//! * a chain sum over the order complex ([`chow::chow_by_chains`]),
//! * a descent-set expansion over maximal chains of an R-labeled poset
//!   ([`chow::chow_by_descents`]),
//! * a specialization of the extended ab-index ([`chow::chow_by_extab`]).
//!
//! Agreement of the three is the library's main self-check; the `verify`
//! machinery and the test suite exercise it over partition lattices, Boolean
//! lattices, uniform matroids, and graph bond lattices.

pub mod abpoly;
pub mod braid;
pub mod build;
pub mod chow;
pub mod error;
pub mod extab;
pub mod poly;
pub mod poset;
pub mod rlabel;

pub use abpoly::{ABPolynomial, ABWord, Letter};
pub use braid::{InversionSequence, SetPartition};
pub use build::GraphInput;
pub use error::{Error, Result};
pub use poly::{GammaVector, IntPolynomial};
pub use poset::{Chain, GradedPoset};
pub use rlabel::{EdgeLabeling, LabelWord};
