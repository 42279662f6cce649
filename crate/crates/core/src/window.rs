//! The symmetry window.
//!
//! `weight(a, h) = max(2h - 3|a|, |a| - 2h)` on `|a| <= 2h` is the exact
//! autocorrelation of the length-`2h` step pattern `(-1,...,-1,+1,...,+1)`;
//! consequently its transform `dft_weight` is a squared modulus and is
//! nonnegative. `kernel(m, n, N, h)` is the truncated overlap integral of
//! two signed windows; away from the boundary it collapses to
//! `weight(n - m, h)`.
//!
//! Everything here is pure and stateless; integer inputs give exact integer
//! results (all breakpoints of the integrands are integers).

use std::f64::consts::TAU;

/// Sign of a real number, with `sgn(0) = 0`.
pub fn sgn(r: f64) -> i64 {
    if r > 0.0 {
        1
    } else if r < 0.0 {
        -1
    } else {
        0
    }
}

fn sgn_i(v: i64) -> i64 {
    v.signum()
}

/// `max(2h - 3|a|, |a| - 2h)` for `|a| <= 2h`, zero outside.
pub fn weight(a: i64, h: u64) -> i64 {
    let h = h as i64;
    let a = a.abs();
    if a > 2 * h {
        return 0;
    }
    (2 * h - 3 * a).max(a - 2 * h)
}

/// Tabulated window weights `W(a)` for `-2h <= a <= 2h`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowWeight {
    h: u64,
    /// `values[(a + 2h) as usize]` is `W(a)`.
    values: Vec<i64>,
}

impl WindowWeight {
    pub fn new(h: u64) -> Self {
        let span = 4 * h as usize + 1;
        let mut values = vec![0i64; span];
        for (i, slot) in values.iter_mut().enumerate() {
            *slot = weight(i as i64 - 2 * h as i64, h);
        }
        WindowWeight { h, values }
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// `W(a)`, zero outside `[-2h, 2h]`.
    pub fn get(&self, a: i64) -> i64 {
        let idx = a + 2 * self.h as i64;
        if idx < 0 || idx >= self.values.len() as i64 {
            0
        } else {
            self.values[idx as usize]
        }
    }

    /// Lags `-2h..=2h` with their weights, in ascending lag order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let h = self.h as i64;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &w)| (i as i64 - 2 * h, w))
    }
}

/// Truncated overlap integral of the signed windows around `n` and `m`:
/// the integral over `h < x < N`, `|x - n| <= h`, `|x - m| <= h` of
/// `sgn(x - n) sgn(x - m)`.
///
/// Evaluated analytically by splitting the range at the sign changes
/// `x = n` and `x = m`; the integrand is piecewise constant and all
/// breakpoints are integers, so the value is an exact integer. Empty
/// ranges give 0.
pub fn kernel(m: i64, n: i64, big_n: u64, h: u64) -> i64 {
    let h = h as i64;
    let top = big_n as i64;
    let lo = h.max(n - h).max(m - h);
    let hi = top.min(n + h).min(m + h);
    if hi <= lo {
        return 0;
    }
    let c1 = n.min(m).clamp(lo, hi);
    let c2 = n.max(m).clamp(lo, hi);
    let mut acc = 0i64;
    for (a, b) in [(lo, c1), (c1, c2), (c2, hi)] {
        if b > a {
            // No sign change inside (a, b): evaluate at the midpoint,
            // kept as 2*mid to stay in integers.
            let two_mid = a + b;
            acc += sgn_i(two_mid - 2 * n) * sgn_i(two_mid - 2 * m) * (b - a);
        }
    }
    acc
}

/// `sum_a W(a) cos(2 pi a beta)`: the discrete Fourier transform of the
/// window (real by evenness). Direct O(h) summation.
pub fn dft_weight(beta: f64, h: u64) -> f64 {
    let mut acc = (2 * h) as f64;
    for a in 1..=2 * h as i64 {
        acc += 2.0 * weight(a, h) as f64 * (TAU * a as f64 * beta).cos();
    }
    acc
}

/// `dft_weight` at the rational point `j/q`, with the phase `a j mod q`
/// reduced before the cosine is taken.
pub fn dft_weight_fraction(j: u64, q: u64, h: u64) -> f64 {
    let cos_tab: Vec<f64> = (0..q).map(|k| (TAU * k as f64 / q as f64).cos()).collect();
    dft_weight_with_cos_table(j, q, h, &cos_tab)
}

/// As [`dft_weight_fraction`], reusing a precomputed table of
/// `cos(2 pi k / q)` for `k = 0..q`.
pub fn dft_weight_with_cos_table(j: u64, q: u64, h: u64, cos_tab: &[f64]) -> f64 {
    debug_assert_eq!(cos_tab.len(), q as usize);
    let mut acc = (2 * h) as f64;
    let j = j % q;
    for a in 1..=2 * h {
        let k = ((a % q) * j) % q;
        acc += 2.0 * weight(a as i64, h) as f64 * cos_tab[k as usize];
    }
    acc
}
