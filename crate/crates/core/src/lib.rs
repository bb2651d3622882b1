//! Numerical radius, Crawford number and distance-to-scalars of dense
//! complex matrices, with a catalogue of tensor-product numerical radius
//! bounds and a randomized harness that checks them.
//!
//! ```
//! use numrad::{numerical_radius, ComplexMatrix};
//!
//! let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
//! let w = numerical_radius(&n, 1e-10).unwrap();
//! assert!((w.value - 0.5).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used for tolerance checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod format;
pub mod generators;
pub mod harness;
pub mod linalg;
pub mod numrange;
pub mod scalar_distance;
pub mod simplex;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use numrange::{crawford_number, numerical_radius, range_boundary, CrawfordResult, RadiusResult};
pub use scalar_distance::{crawford_gap_rhs, distance_to_scalars, CrawfordGapResult, ScalarDistanceResult};
pub use bounds::{eval_all, eval_bound, BoundId, BoundReport, BoundSet, EqualityReport, OperatorPair};
pub use generators::{generate, split_stream, Ensemble, GeneratorConfig};
