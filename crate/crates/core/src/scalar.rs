//! The two numeric paths.
//!
//! Every table-valued operation in this crate runs either on the exact
//! integer path (`i64` entries, `i128` accumulators, overflow is an error,
//! never a wrap) or on the double-precision path (`f64` everywhere). The
//! [`Scalar`] trait is the small surface the two paths share.

use crate::error::{Error, Result};

/// Element type of a function table: `i64` (exact) or `f64`.
pub trait Scalar:
    Copy + PartialEq + PartialOrd + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Accumulator type for sums of products (`i128` resp. `f64`).
    type Wide: Copy
        + PartialEq
        + PartialOrd
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static;

    const ZERO: Self;
    const ONE: Self;
    const WIDE_ZERO: Self::Wide;

    fn checked_add(self, rhs: Self) -> Result<Self>;
    fn checked_sub(self, rhs: Self) -> Result<Self>;

    fn widen(self) -> Self::Wide;
    /// Exact widening product of two table entries.
    fn mul_widened(a: Self, b: Self) -> Self::Wide;

    fn wide_add(a: Self::Wide, b: Self::Wide) -> Result<Self::Wide>;
    fn wide_sub(a: Self::Wide, b: Self::Wide) -> Result<Self::Wide>;
    fn wide_mul(a: Self::Wide, b: Self::Wide) -> Result<Self::Wide>;
    /// Scale an accumulator by a small integer (a window weight).
    fn wide_scale(w: Self::Wide, k: i64) -> Result<Self::Wide>;

    /// Round an FFT output back onto this path (identity on the real path).
    fn wide_round_from_f64(x: f64) -> Self::Wide;

    fn abs(self) -> Self;
    fn to_f64(self) -> f64;
    fn wide_to_f64(w: Self::Wide) -> f64;
    fn from_i64(v: i64) -> Self;

    /// Parse one CSV cell.
    fn parse_value(s: &str) -> Result<Self>;
}

impl Scalar for i64 {
    type Wide = i128;

    const ZERO: i64 = 0;
    const ONE: i64 = 1;
    const WIDE_ZERO: i128 = 0;

    fn checked_add(self, rhs: i64) -> Result<i64> {
        self.checked_add(rhs).ok_or(Error::Overflow("i64 add"))
    }

    fn checked_sub(self, rhs: i64) -> Result<i64> {
        self.checked_sub(rhs).ok_or(Error::Overflow("i64 sub"))
    }

    fn widen(self) -> i128 {
        self as i128
    }

    fn mul_widened(a: i64, b: i64) -> i128 {
        a as i128 * b as i128
    }

    fn wide_add(a: i128, b: i128) -> Result<i128> {
        a.checked_add(b).ok_or(Error::Overflow("i128 add"))
    }

    fn wide_sub(a: i128, b: i128) -> Result<i128> {
        a.checked_sub(b).ok_or(Error::Overflow("i128 sub"))
    }

    fn wide_mul(a: i128, b: i128) -> Result<i128> {
        a.checked_mul(b).ok_or(Error::Overflow("i128 mul"))
    }

    fn wide_scale(w: i128, k: i64) -> Result<i128> {
        w.checked_mul(k as i128)
            .ok_or(Error::Overflow("i128 scale"))
    }

    fn wide_round_from_f64(x: f64) -> i128 {
        x.round() as i128
    }

    fn abs(self) -> i64 {
        self.abs()
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn wide_to_f64(w: i128) -> f64 {
        w as f64
    }

    fn from_i64(v: i64) -> i64 {
        v
    }

    fn parse_value(s: &str) -> Result<i64> {
        s.trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
    }
}

impl Scalar for f64 {
    type Wide = f64;

    const ZERO: f64 = 0.0;
    const ONE: f64 = 1.0;
    const WIDE_ZERO: f64 = 0.0;

    fn checked_add(self, rhs: f64) -> Result<f64> {
        Ok(self + rhs)
    }

    fn checked_sub(self, rhs: f64) -> Result<f64> {
        Ok(self - rhs)
    }

    fn widen(self) -> f64 {
        self
    }

    fn mul_widened(a: f64, b: f64) -> f64 {
        a * b
    }

    fn wide_add(a: f64, b: f64) -> Result<f64> {
        Ok(a + b)
    }

    fn wide_sub(a: f64, b: f64) -> Result<f64> {
        Ok(a - b)
    }

    fn wide_mul(a: f64, b: f64) -> Result<f64> {
        Ok(a * b)
    }

    fn wide_scale(w: f64, k: i64) -> Result<f64> {
        Ok(w * k as f64)
    }

    fn wide_round_from_f64(x: f64) -> f64 {
        x
    }

    fn abs(self) -> f64 {
        self.abs()
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn wide_to_f64(w: f64) -> f64 {
        w
    }

    fn from_i64(v: i64) -> f64 {
        v as f64
    }

    fn parse_value(s: &str) -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
    }
}
