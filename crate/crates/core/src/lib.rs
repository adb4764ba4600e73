//! Numerical laboratory for the average number of Goldbach representations.
//!
//! The crate computes the exact arithmetic side (the von Mangoldt table,
//! Chebyshev's psi and its integral, the weighted representation counts
//! psi2 and their average G), evaluates the matching explicit formulas
//! over ingested tables of zeta-zero ordinates, and implements the
//! zero-free-region transfer arithmetic that converts between PNT-type
//! remainder bounds and Goldbach-average error bounds, together with the
//! circle-method identities (contour form of the shifted average,
//! truncating-kernel bounds, Parseval).
//!
//! Modules follow the pipeline:
//!
//! * [`sieve`] - Lambda table, psi, psi1, remainders, binary cache.
//! * [`goldbach`] - psi2 by direct and FFT convolution, G(N), smoothed
//!   averages.
//! * [`zeros`] - zero-ordinate table ingestion and validation.
//! * [`explicit`] - truncated zero sums, complex gamma, residual records.
//! * [`zfr`] - eta families, the omega/varpi minimizers, bound-shape
//!   transfers, envelope fitting.
//! * [`circle`] - evaluation on |z| = e^{-1/N}: contour identity, kernel
//!   and Parseval checks.
//!
//! Everything is deterministic: parallel loops split work into fixed
//! chunks and reduce in a fixed order, and all long accumulations are
//! compensated ([`kahan`]).

// parameter guards are written as negated comparisons so NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle;
pub mod error;
pub mod explicit;
pub mod goldbach;
pub mod kahan;
pub mod sieve;
pub mod zeros;
pub mod zfr;

pub use error::{Error, Result};
pub use explicit::ResidualRecord;
pub use goldbach::{GoldbachSummary, Psi2Series, SmoothAverages};
pub use sieve::LambdaTable;
pub use zeros::{ZeroLimit, ZeroTable};
pub use zfr::{BoundShape, EtaFamily, MinimizationResult};
