//! Sieve construction of arithmetic-function tables.
//!
//! The central pattern is `f = g * 1` (Dirichlet product against the
//! constant function), built by the multiples sieve, together with its
//! inverse `g = f * mu`.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::FunctionTable;

/// Convolution seed `g(d)`, supported on `[1, support_max]`.
///
/// Coefficients outside the support are zero by definition.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveBasis<T: Scalar> {
    /// `coeffs[d]` is `g(d)` for `1 <= d <= support_max`; slot 0 unused.
    coeffs: Vec<T>,
}

impl<T: Scalar> SieveBasis<T> {
    /// Build from a 1-based coefficient vector; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(T::ZERO);
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == T::ZERO {
            coeffs.pop();
        }
        SieveBasis { coeffs }
    }

    /// Indicator of `[1, q]`: the seed of the restricted divisor function.
    pub fn indicator(q: u64) -> Self {
        let mut coeffs = vec![T::ONE; q as usize + 1];
        coeffs[0] = T::ZERO;
        SieveBasis { coeffs }
    }

    /// The Dirichlet identity `delta_1` (`g(1) = 1` only).
    pub fn delta1() -> Self {
        SieveBasis {
            coeffs: vec![T::ZERO, T::ONE],
        }
    }

    pub fn support_max(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    /// `g(d)`, zero outside `[1, support_max]`.
    pub fn coeff(&self, d: u64) -> T {
        if d == 0 || d > self.support_max() {
            T::ZERO
        } else {
            self.coeffs[d as usize]
        }
    }

    /// 1-based backing slice; slot 0 is never read.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// True when every coefficient is nonnegative (required by the
    /// positivity construction).
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs[1..].iter().all(|&g| g >= T::ZERO)
    }

    pub fn sum(&self) -> Result<T> {
        let mut acc = T::ZERO;
        for &g in &self.coeffs[1..] {
            acc = acc.checked_add(g)?;
        }
        Ok(acc)
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::ZERO;
        for &g in &self.coeffs[1..] {
            if g.abs() > m {
                m = g.abs();
            }
        }
        m
    }

    pub fn to_real(&self) -> SieveBasis<f64> {
        SieveBasis {
            coeffs: self.coeffs.iter().map(|v| v.to_f64()).collect(),
        }
    }

    /// CSV: `d,value` rows; sparse rows allowed, missing coefficients are 0.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "d,value")?;
        for d in 1..=self.support_max() {
            if self.coeffs[d as usize] != T::ZERO {
                writeln!(w, "{},{}", d, self.coeffs[d as usize])?;
            }
        }
        Ok(())
    }

    pub fn read_csv(r: impl std::io::Read) -> Result<Self> {
        let mut coeffs = vec![T::ZERO];
        for line in BufReader::new(r).lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "d,value" {
                continue;
            }
            let (ds, vs) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected d,value row, got {line:?}")))?;
            let d: u64 = ds
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {ds:?}: {e}")))?;
            if d == 0 {
                return Err(Error::Parse("basis index 0 is not allowed".into()));
            }
            if coeffs.len() <= d as usize {
                coeffs.resize(d as usize + 1, T::ZERO);
            }
            coeffs[d as usize] = T::parse_value(vs)?;
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn read_csv_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_csv(f)
    }
}

impl SieveBasis<i64> {
    /// Random coefficients uniform in `lo..=hi` on `[1, support_max]`.
    pub fn random_uniform(support_max: u64, lo: i64, hi: i64, rng: &mut impl Rng) -> Result<Self> {
        if support_max == 0 || lo > hi {
            return Err(Error::InvalidArgument(
                "support_max must be positive and the range nonempty".into(),
            ));
        }
        let mut coeffs = vec![0i64; support_max as usize + 1];
        for c in coeffs.iter_mut().skip(1) {
            *c = rng.gen_range(lo..=hi);
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Moebius function table on `1..=n_max`, by linear sieve. Exact.
pub fn mobius_sieve(n_max: u64) -> Result<FunctionTable<i64>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let n = n_max as usize;
    let mut mu = vec![0i64; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    FunctionTable::from_one_based(mu)
}

/// `f = g * 1` on `1..=n_max`, by the multiples sieve: for each `d` in the
/// support, add `g(d)` to `f(d), f(2d), ...`. The mean value is left at 0.
pub fn dirichlet_convolve<T: Scalar>(g: &SieveBasis<T>, n_max: u64) -> Result<FunctionTable<T>> {
    if g.support_max() > n_max {
        return Err(Error::InvalidArgument(format!(
            "basis support {} exceeds table length {}",
            g.support_max(),
            n_max
        )));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let mut f = vec![T::ZERO; n_max as usize + 1];
    for d in 1..=g.support_max() as usize {
        let gd = g.coeffs()[d];
        if gd == T::ZERO {
            continue;
        }
        let mut n = d;
        while n <= n_max as usize {
            f[n] = f[n].checked_add(gd)?;
            n += d;
        }
    }
    FunctionTable::from_one_based(f)
}

/// Moebius inversion `g(n) = sum_{d|n} mu(d) f(n/d)`, so that
/// `dirichlet_convolve(mobius_invert(f)) == f` exactly on the integer path.
pub fn mobius_invert(f: &FunctionTable<i64>) -> Result<SieveBasis<i64>> {
    let n_max = f.n_max() as usize;
    let mu = mobius_sieve(f.n_max())?;
    let mut g = vec![0i64; n_max + 1];
    for d in 1..=n_max {
        let md = mu.values()[d];
        if md == 0 {
            continue;
        }
        let mut n = d;
        let mut k = 1usize;
        while n <= n_max {
            let term = md
                .checked_mul(f.values()[k])
                .ok_or(Error::Overflow("mobius_invert"))?;
            g[n] = g[n]
                .checked_add(term)
                .ok_or(Error::Overflow("mobius_invert"))?;
            n += d;
            k += 1;
        }
    }
    Ok(SieveBasis::from_coeffs(g))
}

/// Restricted divisor function `d_Q(n) = #{q | n : q <= Q}` on `1..=n_max`.
pub fn restricted_divisor(n_max: u64, q: u64) -> Result<FunctionTable<i64>> {
    if q == 0 {
        return Err(Error::InvalidArgument("Q must be positive".into()));
    }
    dirichlet_convolve(&SieveBasis::<i64>::indicator(q.min(n_max)), n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factorization-based Moebius oracle.
    fn mu_oracle(mut n: u64) -> i64 {
        let mut k = 0;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Divisor-enumeration oracle for d_Q.
    fn divisors_up_to(n: u64, q: u64) -> i64 {
        (1..=n.min(q)).filter(|&d| n.is_multiple_of(d)).count() as i64
    }

    /// Totient by gcd counting.
    fn phi_oracle(n: u64) -> i64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as i64
    }

    #[test]
    fn mobius_small_values() {
        let mu = mobius_sieve(12).unwrap();
        assert_eq!(mu.value(1).unwrap(), 1);
        assert_eq!(mu.value(6).unwrap(), 1);
        assert_eq!(mu.value(12).unwrap(), 0);
    }

    #[test]
    fn mobius_rejects_zero_length() {
        assert!(matches!(mobius_sieve(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn mobius_matches_factorization_oracle() {
        let mu = mobius_sieve(10_000).unwrap();
        for n in 1..=10_000u64 {
            assert_eq!(mu.value(n).unwrap(), mu_oracle(n), "mu({n})");
        }
    }

    #[test]
    fn convolve_indicator_counts_divisors() {
        let f = dirichlet_convolve(&SieveBasis::<i64>::indicator(2), 6).unwrap();
        assert_eq!(f.value(6).unwrap(), divisors_up_to(6, 2));
        assert_eq!(f.value(6).unwrap(), 2);
    }

    #[test]
    fn convolve_delta1_is_one() {
        let f = dirichlet_convolve(&SieveBasis::<i64>::delta1(), 50).unwrap();
        for n in 1..=50 {
            assert_eq!(f.value(n).unwrap(), 1);
        }
    }

    #[test]
    fn convolve_mobius_gives_dirichlet_identity() {
        let n_max = 200;
        let mu = mobius_sieve(n_max).unwrap();
        let g = SieveBasis::from_coeffs(mu.values().to_vec());
        let f = dirichlet_convolve(&g, n_max).unwrap();
        assert_eq!(f.value(1).unwrap(), 1);
        for n in 2..=n_max {
            assert_eq!(f.value(n).unwrap(), 0, "  (mu * 1)({n})");
        }
    }

    #[test]
    fn invert_identity_table_gives_totient() {
        let f = FunctionTable::identity(100).unwrap();
        let g = mobius_invert(&f).unwrap();
        for n in 1..=100 {
            assert_eq!(g.coeff(n), phi_oracle(n), "phi({n})");
        }
    }

    #[test]
    fn invert_constant_one_gives_delta1() {
        let f = FunctionTable::constant(80, 1i64).unwrap();
        let g = mobius_invert(&f).unwrap();
        assert_eq!(g.support_max(), 1);
        assert_eq!(g.coeff(1), 1);
    }

    #[test]
    fn invert_restricted_divisor_recovers_indicator() {
        let f = restricted_divisor(400, 17).unwrap();
        let g = mobius_invert(&f).unwrap();
        assert_eq!(g.support_max(), 17);
        for d in 1..=17 {
            assert_eq!(g.coeff(d), 1);
        }
    }

    #[test]
    fn restricted_divisor_examples() {
        let f = restricted_divisor(20, 3).unwrap();
        assert_eq!(f.value(12).unwrap(), 3);
        for q in 1..=8 {
            let f = restricted_divisor(20, q).unwrap();
            assert_eq!(f.value(1).unwrap(), 1);
        }
        let f = restricted_divisor(20, 20).unwrap();
        assert_eq!(f.value(12).unwrap(), 6); // full divisor count
    }

    #[test]
    fn restricted_divisor_monotone_in_q() {
        for n in 1..=300u64 {
            let mut prev = 0;
            for q in [1, 2, 5, 50, 300] {
                let f = restricted_divisor(300, q).unwrap();
                let v = f.value(n).unwrap();
                assert!(v >= prev);
                prev = v;
            }
            assert_eq!(prev, divisors_up_to(n, 300));
        }
    }

    #[test]
    fn divisor_sum_hyperbola_free_cross_check() {
        // sum_{n<=x} d_Q(n) = sum_{d<=Q} floor(x/d)
        let x = 10_000u64;
        for q in [10u64, 100] {
            let f = restricted_divisor(x, q).unwrap();
            let lhs: i64 = (1..=x).map(|n| f.value(n).unwrap()).sum();
            let rhs: i64 = (1..=q).map(|d| (x / d) as i64).sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_csv_sparse_round_trip() {
        let g = SieveBasis::from_coeffs(vec![0i64, 3, 0, 0, -2, 0, 7]);
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let h = SieveBasis::<i64>::read_csv(&buf[..]).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn convolve_rejects_support_beyond_table() {
        let g = SieveBasis::<i64>::indicator(10);
        assert!(dirichlet_convolve(&g, 5).is_err());
    }
}
