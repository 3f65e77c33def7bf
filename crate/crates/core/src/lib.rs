// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical ranges of complex matrices and of compressed shift operators.
//!
//! The crate computes `W(A)` by Kippenhahn support lines, the exact elliptical
//! range of 2×2 matrices, unitary 1-dilations of `S_B` with their Poncelet
//! polygons, envelopes of curve families, two-variable slice constructions,
//! and Crouzeix ratios.

pub mod bidisk;
pub mod cli;
pub mod ellipse;
pub mod envelope;
pub mod error;
pub mod linalg;
pub mod numrange;
pub mod shift;

pub use error::{Error, Result};
pub use linalg::{CMatrix, ConvexPolygon, Polynomial};
pub use num_complex::Complex64;
