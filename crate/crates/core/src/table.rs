//! Arithmetic-function tables.
//!
//! A [`FunctionTable`] holds `f(1..=n_max)` plus the mean-value constant
//! `f(0)`, stored apart from the array: slot 0 of the backing vector exists
//! but is never read. Tables are immutable after construction and all
//! operations on them are pure.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tabulated values `f(1..=n_max)` together with the constant `f(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable<T: Scalar> {
    /// `values[n]` is `f(n)` for `1 <= n <= n_max`; `values[0]` is never read.
    values: Vec<T>,
    mean_value: T,
}

impl<T: Scalar> FunctionTable<T> {
    /// Table of zeros on `1..=n_max`.
    pub fn zeros(n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArgument("n_max must be positive".into()));
        }
        Ok(FunctionTable {
            values: vec![T::ZERO; n_max as usize + 1],
            mean_value: T::ZERO,
        })
    }

    /// Constant table `f(n) = v`.
    pub fn constant(n_max: u64, v: T) -> Result<Self> {
        let mut t = Self::zeros(n_max)?;
        for slot in &mut t.values[1..] {
            *slot = v;
        }
        Ok(t)
    }

    /// Identity table `f(n) = n`.
    pub fn identity(n_max: u64) -> Result<Self> {
        Self::from_fn(n_max, |n| T::from_i64(n as i64))
    }

    pub fn from_fn(n_max: u64, mut f: impl FnMut(u64) -> T) -> Result<Self> {
        let mut t = Self::zeros(n_max)?;
        for n in 1..=n_max {
            t.values[n as usize] = f(n);
        }
        Ok(t)
    }

    /// Build from a 1-based vector (`raw[0]` is a dummy slot).
    pub(crate) fn from_one_based(raw: Vec<T>) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::InvalidArgument("n_max must be positive".into()));
        }
        Ok(FunctionTable {
            values: raw,
            mean_value: T::ZERO,
        })
    }

    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `f(n)` for `1 <= n <= n_max`.
    pub fn value(&self, n: u64) -> Result<T> {
        if n == 0 || n > self.n_max() {
            return Err(Error::OutOfRange {
                index: n as i64,
                n_max: self.n_max(),
            });
        }
        Ok(self.values[n as usize])
    }

    /// Backing slice, 1-based; slot 0 holds `T::ZERO` and is never read.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// The mean-value constant `f(0)`.
    pub fn mean_value(&self) -> T {
        self.mean_value
    }

    pub fn with_mean_value(mut self, v: T) -> Self {
        self.mean_value = v;
        self
    }

    /// Even extension: `f(|n|)` for `n != 0`, the mean value for `n = 0`.
    pub fn even_extend(&self, n: i64) -> Result<T> {
        if n == 0 {
            return Ok(self.mean_value);
        }
        let a = n.unsigned_abs();
        if a > self.n_max() {
            return Err(Error::OutOfRange {
                index: n,
                n_max: self.n_max(),
            });
        }
        Ok(self.values[a as usize])
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::ZERO;
        for &v in &self.values[1..] {
            if v.abs() > m {
                m = v.abs();
            }
        }
        m
    }

    pub fn to_real(&self) -> FunctionTable<f64> {
        FunctionTable {
            values: self.values.iter().map(|v| v.to_f64()).collect(),
            mean_value: self.mean_value.to_f64(),
        }
    }

    /// Diagnostic for essential boundedness: `max_n |f(n)| / n^eps`.
    ///
    /// Reported only; never enforced as an invariant.
    pub fn essential_bound_diagnostic(&self, eps: f64) -> f64 {
        self.values[1..]
            .iter()
            .enumerate()
            .map(|(i, v)| v.to_f64().abs() / ((i + 1) as f64).powf(eps))
            .fold(0.0, f64::max)
    }

    /// Write as CSV: a `# mean_value=<v>` comment, a `n,value` header, one
    /// row per `n`.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# mean_value={}", self.mean_value)?;
        writeln!(w, "n,value")?;
        for n in 1..=self.n_max() {
            writeln!(w, "{},{}", n, self.values[n as usize])?;
        }
        Ok(())
    }

    pub fn write_csv_path(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        self.write_csv(&mut f)
    }

    /// Read the CSV format produced by [`FunctionTable::write_csv`]. Rows
    /// must cover `n = 1..=n_max` consecutively.
    pub fn read_csv(r: impl std::io::Read) -> Result<Self> {
        let mut mean = T::ZERO;
        let mut values = vec![T::ZERO];
        let mut expected = 1u64;
        for line in BufReader::new(r).lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("mean_value=") {
                    mean = T::parse_value(v)?;
                }
                continue;
            }
            if line == "n,value" {
                continue;
            }
            let (ns, vs) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected n,value row, got {line:?}")))?;
            let n: u64 = ns
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {ns:?}: {e}")))?;
            if n != expected {
                return Err(Error::Parse(format!(
                    "rows must cover n consecutively; expected {expected}, got {n}"
                )));
            }
            values.push(T::parse_value(vs)?);
            expected += 1;
        }
        if values.len() < 2 {
            return Err(Error::Parse("table is empty".into()));
        }
        Ok(FunctionTable {
            values,
            mean_value: mean,
        })
    }

    pub fn read_csv_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_csv(f)
    }
}

impl FunctionTable<i64> {
    /// Random table with entries uniform in `lo..=hi` (exact integer path).
    pub fn random_uniform(n_max: u64, lo: i64, hi: i64, rng: &mut impl Rng) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("empty value range".into()));
        }
        Self::from_fn(n_max, |_| rng.gen_range(lo..=hi))
    }

    /// Random table with entries drawn from `{-1, +1}`.
    pub fn random_sign(n_max: u64, rng: &mut impl Rng) -> Result<Self> {
        Self::from_fn(n_max, |_| if rng.gen::<bool>() { 1 } else { -1 })
    }
}
