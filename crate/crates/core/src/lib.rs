//! Exact desk-scale machinery for the symmetry of arithmetic functions in
//! short intervals: sieved function tables, lag correlations, symmetry
//! integrals evaluated exactly at unit-interval midpoints, the window
//! weight and its nonnegative transform, exponential sums on Farey
//! fractions with the major/minor modulus split, and residual/slope
//! harnesses for the identities and bounds that connect them.
//!
//! Two numeric paths run through the whole crate: an exact signed-64-bit
//! path (128-bit accumulators, overflow is an error) for identity checks,
//! and a double-precision path for large-scale fits.

pub mod correlate;
pub mod error;
pub mod expsum;
pub mod scalar;
pub mod sieve;
pub mod table;
pub mod verify;
pub mod window;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use table::FunctionTable;
