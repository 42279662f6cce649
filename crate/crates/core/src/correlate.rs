//! Shifted correlations and exact symmetry integrals.
//!
//! The lag-`a` correlation of two tables sums `f1(n) f2(n-a)` over the
//! trimmed range `|a| < n <= N - |a|`. The symmetry integral of `f` over
//! `[h, N]` is evaluated exactly: the signed window sum is constant on
//! every open unit interval (integer `h`), so the integral collapses to a
//! sum of squared midpoint values, with no quadrature anywhere. A
//! quadrature oracle exists only in the tests.
//!
//! Real-path reductions run in a fixed deterministic order, so results are
//! bit-reproducible across runs and thread counts.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::FunctionTable;
use crate::window::WindowWeight;

/// Correlation values per lag `-2h..=2h` (exact on the integer path).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationVector<T: Scalar> {
    h: u64,
    values: Vec<T::Wide>,
}

impl<T: Scalar> CorrelationVector<T> {
    pub fn h(&self) -> u64 {
        self.h
    }

    /// Correlation at lag `a`; zero outside `[-2h, 2h]`.
    pub fn get(&self, a: i64) -> T::Wide {
        let idx = a + 2 * self.h as i64;
        if idx < 0 || idx >= self.values.len() as i64 {
            T::WIDE_ZERO
        } else {
            self.values[idx as usize]
        }
    }

    /// `(lag, value)` pairs in ascending lag order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, T::Wide)> + '_ {
        let h = self.h as i64;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as i64 - 2 * h, v))
    }
}

/// Exact integral value `I(N, h)` with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryValue<T: Scalar> {
    pub n: u64,
    pub h: u64,
    pub value: T::Wide,
}

fn require_cover<T: Scalar>(f: &FunctionTable<T>, need: u64) -> Result<()> {
    if f.n_max() < need {
        return Err(Error::OutOfRange {
            index: need as i64,
            n_max: f.n_max(),
        });
    }
    Ok(())
}

fn require_window(n: u64, h: u64) -> Result<()> {
    if h == 0 || h >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < h < N, got h={h}, N={n}"
        )));
    }
    Ok(())
}

/// `sum_{|a| < n <= N - |a|} f1(n) f2(n - a)`; empty ranges give 0.
pub fn correlation<T: Scalar>(
    f1: &FunctionTable<T>,
    f2: &FunctionTable<T>,
    a: i64,
    big_n: u64,
) -> Result<T::Wide> {
    require_cover(f1, big_n)?;
    require_cover(f2, big_n)?;
    let n_hi = big_n as i64 - a.abs();
    let n_lo = a.abs() + 1;
    let mut acc = T::WIDE_ZERO;
    let v1 = f1.values();
    let v2 = f2.values();
    for n in n_lo..=n_hi {
        let term = T::mul_widened(v1[n as usize], v2[(n - a) as usize]);
        acc = T::wide_add(acc, term)?;
    }
    Ok(acc)
}

/// All lags `|a| <= 2h` by direct summation, O(N h).
pub fn correlation_all_naive<T: Scalar>(
    f1: &FunctionTable<T>,
    f2: &FunctionTable<T>,
    big_n: u64,
    h: u64,
) -> Result<CorrelationVector<T>> {
    require_window(big_n, h)?;
    let mut values = Vec::with_capacity(4 * h as usize + 1);
    for a in -(2 * h as i64)..=(2 * h as i64) {
        values.push(correlation(f1, f2, a, big_n)?);
    }
    Ok(CorrelationVector { h, values })
}

/// All lags `|a| <= 2h` by zero-padded FFT cross-correlation, with the
/// boundary products subtracted afterwards so the exact trimmed range is
/// restored. On the integer path the FFT output is rounded before the
/// corrections, which makes the result identical to the naive sum.
pub fn correlation_all_fft<T: Scalar>(
    f1: &FunctionTable<T>,
    f2: &FunctionTable<T>,
    big_n: u64,
    h: u64,
) -> Result<CorrelationVector<T>> {
    require_window(big_n, h)?;
    require_cover(f1, big_n)?;
    require_cover(f2, big_n)?;
    let n = big_n as usize;
    let len = (n + 2 * h as usize + 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(len);
    let ifft = planner.plan_fft_inverse(len);

    let mut x: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); len];
    let mut y = x.clone();
    for k in 0..n {
        x[k].re = f1.values()[k + 1].to_f64();
        y[k].re = f2.values()[k + 1].to_f64();
    }
    fft.process(&mut x);
    fft.process(&mut y);
    for (xi, yi) in x.iter_mut().zip(&y) {
        *xi *= yi.conj();
    }
    ifft.process(&mut x);
    let scale = 1.0 / len as f64;

    let v1 = f1.values();
    let v2 = f2.values();
    let mut values = Vec::with_capacity(4 * h as usize + 1);
    for a in -(2 * h as i64)..=(2 * h as i64) {
        let idx = a.rem_euclid(len as i64) as usize;
        let mut acc = T::wide_round_from_f64(x[idx].re * scale);
        // Strip the <= |a| products that lie outside |a| < n <= N - |a|.
        if a > 0 {
            let lo = (big_n as i64 - a + 1).max(a + 1);
            for nn in lo..=big_n as i64 {
                let term = T::mul_widened(v1[nn as usize], v2[(nn - a) as usize]);
                acc = T::wide_sub(acc, term)?;
            }
        } else if a < 0 {
            let b = -a;
            let hi = b.min(big_n as i64 - b);
            for nn in 1..=hi {
                let term = T::mul_widened(v1[nn as usize], v2[(nn + b) as usize]);
                acc = T::wide_sub(acc, term)?;
            }
        }
        values.push(acc);
    }
    Ok(CorrelationVector { h, values })
}

/// Prefix sums `P[j] = f(1) + ... + f(j)`, `P[0] = 0`.
pub(crate) fn prefix_sums<T: Scalar>(f: &FunctionTable<T>) -> Result<Vec<T::Wide>> {
    let v = f.values();
    let mut p = Vec::with_capacity(v.len());
    p.push(T::WIDE_ZERO);
    let mut acc = T::WIDE_ZERO;
    for &x in &v[1..] {
        acc = T::wide_add(acc, x.widen())?;
        p.push(acc);
    }
    Ok(p)
}

/// Signed window sum at the midpoint `x = k + 1/2`:
/// `f(k+1) + ... + f(k+h) - f(k-h+1) - ... - f(k)`.
pub fn signed_window_sum<T: Scalar>(f: &FunctionTable<T>, k: u64, h: u64) -> Result<T::Wide> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if k < h || k + h > f.n_max() {
        return Err(Error::OutOfRange {
            index: k as i64,
            n_max: f.n_max(),
        });
    }
    let v = f.values();
    let mut acc = T::WIDE_ZERO;
    for i in 1..=h {
        acc = T::wide_add(acc, v[(k + i) as usize].widen())?;
    }
    for i in 0..h {
        acc = T::wide_sub(acc, v[(k - i) as usize].widen())?;
    }
    Ok(acc)
}

fn midpoint_sums<T: Scalar>(p: &[T::Wide], k: u64, h: u64) -> Result<T::Wide> {
    // P[k+h] - 2 P[k] + P[k-h]
    let right = T::wide_sub(p[(k + h) as usize], p[k as usize])?;
    let left = T::wide_sub(p[k as usize], p[(k - h) as usize])?;
    T::wide_sub(right, left)
}

/// `I_f(N, h)`: the integral over `[h, N]` of the squared signed window
/// sum, evaluated exactly as a sum over unit-interval midpoints.
pub fn symmetry_integral<T: Scalar>(
    f: &FunctionTable<T>,
    big_n: u64,
    h: u64,
) -> Result<SymmetryValue<T>> {
    require_window(big_n, h)?;
    require_cover(f, big_n + h - 1)?;
    let p = prefix_sums(f)?;
    let mut acc = T::WIDE_ZERO;
    for k in h..big_n {
        let s = midpoint_sums::<T>(&p, k, h)?;
        acc = T::wide_add(acc, T::wide_mul(s, s)?)?;
    }
    Ok(SymmetryValue {
        n: big_n,
        h,
        value: acc,
    })
}

/// `I_{f1,f2}(N, h)`: as [`symmetry_integral`], with the product of the two
/// midpoint sums.
pub fn mixed_symmetry_integral<T: Scalar>(
    f1: &FunctionTable<T>,
    f2: &FunctionTable<T>,
    big_n: u64,
    h: u64,
) -> Result<SymmetryValue<T>> {
    require_window(big_n, h)?;
    require_cover(f1, big_n + h - 1)?;
    require_cover(f2, big_n + h - 1)?;
    let p1 = prefix_sums(f1)?;
    let p2 = prefix_sums(f2)?;
    let mut acc = T::WIDE_ZERO;
    for k in h..big_n {
        let s1 = midpoint_sums::<T>(&p1, k, h)?;
        let s2 = midpoint_sums::<T>(&p2, k, h)?;
        acc = T::wide_add(acc, T::wide_mul(s1, s2)?)?;
    }
    Ok(SymmetryValue {
        n: big_n,
        h,
        value: acc,
    })
}

/// `sum_{|a| <= 2h} W(a) C_{f1,f2}(a)`, exact.
pub fn weighted_correlation_sum<T: Scalar>(
    f1: &FunctionTable<T>,
    f2: &FunctionTable<T>,
    big_n: u64,
    h: u64,
) -> Result<T::Wide> {
    let c = correlation_all_naive(f1, f2, big_n, h)?;
    let w = WindowWeight::new(h);
    let mut acc = T::WIDE_ZERO;
    for (a, ca) in c.iter() {
        acc = T::wide_add(acc, T::wide_scale(ca, w.get(a))?)?;
    }
    Ok(acc)
}

/// The crude estimate `(N - h) ((2h + 1) max|f|)^2`, an upper bound for
/// `I_f(N, h)`.
pub fn trivial_bound<T: Scalar>(f: &FunctionTable<T>, big_n: u64, h: u64) -> Result<T::Wide> {
    require_window(big_n, h)?;
    let peak = T::wide_scale(f.max_abs().widen(), 2 * h as i64 + 1)?;
    let sq = T::wide_mul(peak, peak)?;
    T::wide_scale(sq, (big_n - h) as i64)
}
