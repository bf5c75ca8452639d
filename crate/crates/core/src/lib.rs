//! Zero sets of entire functions of exponential type.
//!
//! The crate computes the counting functions `n(c, t)` of a zero sequence,
//! evaluates the canonical product built on it, checks the identities that
//! relate the two, and gathers numerical evidence for the membership
//! criteria of the Cartwright class `C`, the class `B` of functions bounded on
//! the real axis, and the translation-compact class `D`.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release -p expozeros --example sequence_files
//! cargo run --release -p expozeros --example counting_functions
//! cargo run --release -p expozeros --example canonical_product
//! cargo run --release -p expozeros --example classify_references
//! cargo run --release -p expozeros --example footnote_counterexample
//! cargo run --release -p expozeros --example alpha_example
//! cargo run --release -p expozeros --example exponential_type
//! ```

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod counting;
pub mod criteria;
pub mod error;
pub mod product;
pub mod quadrature;
pub mod roots;
pub mod summation;
pub mod zero_model;

pub use error::{Error, Result};
pub use zero_model::{load_path, load_sequence, ValidationReport, Zero, ZeroSequence};

pub use num_complex::Complex64;
