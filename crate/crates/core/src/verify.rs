//! Identity checkers and empirical bound fitters.
//!
//! The exact checks (`lemma0_check`, `lemma1_check`, `star_identity_check`)
//! compare two integer-path quantities and report the residual together
//! with a remainder budget; nothing is rounded, so a residual is meaningful
//! down to the last bit. `spectral_form_check` verifies an exact
//! rearrangement whose right-hand side is trigonometric, so only there does
//! a (round-off sized) tolerance appear. The asymptotic claims have no
//! constants to check against; they are falsified, if at all, by growth
//! trends, so the harnesses fit log-log slopes over parameter grids and
//! compare them with a pinned tolerance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::correlate::{
    mixed_symmetry_integral, symmetry_integral, trivial_bound, weighted_correlation_sum,
};
use crate::error::{Error, Result};
use crate::expsum::{check_nonneg_farey, cos_table, exp_sums_for_modulus, minimal_mean_value};
use crate::sieve::{dirichlet_convolve, restricted_divisor, SieveBasis};
use crate::table::FunctionTable;
use crate::window::{dft_weight_with_cos_table, WindowWeight};

fn ser_i128<S: Serializer>(v: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    // integers verbatim while they fit a JSON-safe i64; decimal string past that
    match i64::try_from(*v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.collect_str(v),
    }
}

/// Outcome of a checked comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A precondition failed; the claim was not exercised.
    NotApplicable,
}

/// Exact two-sided comparison with a remainder budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "ser_i128")]
    pub lhs: i128,
    #[serde(serialize_with = "ser_i128")]
    pub rhs: i128,
    /// `lhs - rhs`, exact.
    #[serde(serialize_with = "ser_i128")]
    pub residual: i128,
    /// Remainder envelope with unit constants.
    #[serde(serialize_with = "ser_i128")]
    pub budget: i128,
    /// `residual / budget`.
    pub ratio: f64,
}

impl IdentityReport {
    fn new(lhs: i128, rhs: i128, budget: i128) -> Self {
        let residual = lhs - rhs;
        IdentityReport {
            lhs,
            rhs,
            residual,
            budget,
            ratio: residual as f64 / budget as f64,
        }
    }
}

/// Boundary-shifted correlation check: compares
/// `sum_{2h < n < N-h, 2h < n-a < N-h} f1(n) f2(n-a)` against the
/// correlation at lag `a`. The two ranges differ in O(h) terms, so the
/// budget is `8 h max|f1| max|f2|`.
pub fn lemma0_check(
    f1: &FunctionTable<i64>,
    f2: &FunctionTable<i64>,
    big_n: u64,
    h: u64,
    a: i64,
) -> Result<IdentityReport> {
    if a == 0 || a.abs() > 2 * h as i64 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < |a| <= 2h, got a={a}, h={h}"
        )));
    }
    if f1.n_max() < big_n || f2.n_max() < big_n {
        return Err(Error::OutOfRange {
            index: big_n as i64,
            n_max: f1.n_max().min(f2.n_max()),
        });
    }
    let (top, hh) = (big_n as i64, h as i64);
    let lo = (2 * hh + 1).max(2 * hh + 1 + a).max(1);
    let hi = (top - hh - 1).min(top - hh - 1 + a).min(top);
    let mut lhs = 0i128;
    for n in lo..=hi {
        lhs += f1.values()[n as usize] as i128 * f2.values()[(n - a) as usize] as i128;
    }
    let rhs = crate::correlate::correlation(f1, f2, a, big_n)?;
    let budget = 8 * h as i128 * f1.max_abs() as i128 * f2.max_abs() as i128;
    Ok(IdentityReport::new(lhs, rhs, budget.max(1)))
}

/// Window identity check: the exact symmetry integral against the
/// window-weighted correlation sum. Budget `h^3 max|f1| max|f2|`.
pub fn lemma1_check(
    f1: &FunctionTable<i64>,
    f2: &FunctionTable<i64>,
    big_n: u64,
    h: u64,
) -> Result<IdentityReport> {
    let lhs = mixed_symmetry_integral(f1, f2, big_n, h)?.value;
    let rhs = weighted_correlation_sum(f1, f2, big_n, h)?;
    let budget = (h as i128).pow(3) * f1.max_abs() as i128 * f2.max_abs() as i128;
    Ok(IdentityReport::new(lhs, rhs, budget.max(1)))
}

/// One-sided residue sums of `f` over `1..=N` in exact integers.
fn residue_sums_exact(f: &FunctionTable<i64>, q: u64, big_n: u64) -> Vec<i128> {
    let q = q as usize;
    let mut acc = vec![0i128; q];
    let mut r = 1 % q;
    for &x in &f.values()[1..=big_n as usize] {
        acc[r] += x as i128;
        r += 1;
        if r == q {
            r = 0;
        }
    }
    acc
}

/// Sieve-expansion check of the mixed integral `I_{f, g*1}`. The right-hand
/// side is the window-weighted congruence sum over `0 <= n <= N` (the `n=0`
/// class contributes `f(0)` when `q | a`), minus the two boundary
/// corrections
/// `(sum_q g(q)) (sum_{a>0} W(a) f(a))` and
/// `f(0) sum_a W(a) sum_{q|a} g(q)`.
/// Budget `h^3 + f(0) h^2 + M h f(0) + M h^2` with unit constants.
pub fn star_identity_check(
    f: &FunctionTable<i64>,
    g: &SieveBasis<i64>,
    big_n: u64,
    h: u64,
) -> Result<IdentityReport> {
    let m = g.support_max();
    if m == 0 {
        return Err(Error::InvalidArgument("empty basis".into()));
    }
    if f.n_max() < big_n + h - 1 {
        return Err(Error::OutOfRange {
            index: (big_n + h - 1) as i64,
            n_max: f.n_max(),
        });
    }
    let conv = dirichlet_convolve(g, big_n + h - 1)?;
    let lhs = mixed_symmetry_integral(f, &conv, big_n, h)?.value;

    let w = WindowWeight::new(h);
    let f0 = f.mean_value() as i128;
    let mut main = 0i128;
    for q in 1..=m {
        let gq = g.coeff(q) as i128;
        if gq == 0 {
            continue;
        }
        let sums = residue_sums_exact(f, q, big_n);
        for (a, wa) in w.iter() {
            if wa == 0 {
                continue;
            }
            let r = a.rem_euclid(q as i64) as usize;
            let mut s = sums[r];
            if r == 0 {
                s += f0;
            }
            main += wa as i128 * gq * s;
        }
    }

    let gsum = g.sum()? as i128;
    let mut weighted_f: i128 = 0;
    for a in 1..=2 * h {
        weighted_f += w.get(a as i64) as i128 * f.values()[a as usize] as i128;
    }
    let corr_diagonal = gsum * weighted_f;

    let mut corr_mean = 0i128;
    for (a, wa) in w.iter() {
        if wa == 0 {
            continue;
        }
        let mut dsum = 0i128;
        for q in 1..=m {
            if a == 0 || a.unsigned_abs() % q == 0 {
                dsum += g.coeff(q) as i128;
            }
        }
        corr_mean += wa as i128 * dsum;
    }
    let corr_mean = f0 * corr_mean;

    let rhs = main - corr_diagonal - corr_mean;
    let (h, m) = (h as i128, m as i128);
    let budget = h.pow(3) + f0 * h * h + m * h * f0 + m * h * h;
    Ok(IdentityReport::new(lhs, rhs, budget.max(1)))
}

/// Character-orthogonality check, float side only where trigonometry
/// forces it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralReport {
    /// Window-weighted congruence sum over `0 <= |n| <= N` (`f` evenly
    /// extended, the `n = 0` term counted once as `f(0)`), computed
    /// exactly and rendered to f64.
    pub lhs: f64,
    /// `sum_q (g(q)/q) sum_{j mod q} What(j/q) T_f(-j/q)` with
    /// `T_f(alpha) = sum_{0<=|n|<=N} f(n) e(n alpha)`.
    pub rhs: f64,
    pub residual: f64,
    /// `|residual| / max(1, |lhs|, |rhs|)`; round-off only.
    pub rel_residual: f64,
}

/// Verify the exact character-orthogonality rearrangement of the
/// window-weighted congruence sum into modulus/frequency form.
pub fn spectral_form_check(
    f: &FunctionTable<i64>,
    g: &SieveBasis<i64>,
    big_n: u64,
    h: u64,
) -> Result<SpectralReport> {
    let m = g.support_max();
    if m == 0 {
        return Err(Error::InvalidArgument("empty basis".into()));
    }
    if f.n_max() < big_n {
        return Err(Error::OutOfRange {
            index: big_n as i64,
            n_max: f.n_max(),
        });
    }
    let w = WindowWeight::new(h);
    let f0 = f.mean_value() as i128;

    let mut lhs = 0i128;
    let mut rhs = 0.0f64;
    for q in 1..=m {
        let gq = g.coeff(q);
        if gq == 0 {
            continue;
        }
        let sums = residue_sums_exact(f, q, big_n);
        // two-sided class sums: n and -n both land in the class
        let class = |r: usize| -> i128 {
            let mirrored = (q as usize - r) % q as usize;
            let mut s = sums[r] + sums[mirrored];
            if r == 0 {
                s += f0;
            }
            s
        };
        for (a, wa) in w.iter() {
            if wa == 0 {
                continue;
            }
            lhs += wa as i128 * gq as i128 * class(a.rem_euclid(q as i64) as usize);
        }

        let ctab = cos_table(q);
        let mut spectral_q = 0.0;
        for j in 0..q {
            let what = dft_weight_with_cos_table(j, q, h, &ctab);
            let mut transform = f0 as f64;
            for (r, &s) in sums.iter().enumerate() {
                transform += 2.0 * s as f64 * ctab[(j * r as u64 % q) as usize];
            }
            spectral_q += what * transform;
        }
        rhs += gq as f64 / q as f64 * spectral_q;
    }

    let lhs = lhs as f64;
    let residual = lhs - rhs;
    Ok(SpectralReport {
        lhs,
        rhs,
        residual,
        rel_residual: residual.abs() / lhs.abs().max(rhs.abs()).max(1.0),
    })
}

/// Termwise majorization check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma2Report {
    pub lhs: f64,
    pub rhs: f64,
    pub gmax: f64,
    /// Minimum of `S_f(j/q)` seen during the precondition scan.
    pub min_exp_sum: f64,
    /// Largest violation of `|g(q)| X_q <= gmax X_q` over moduli, after
    /// the round-off allowance; nonpositive when the check holds.
    pub worst_term_excess: f64,
    pub status: CheckStatus,
}

/// Check that the modulus-weighted spectral sum is majorized by its
/// `|g| <= gmax` companion: termwise
/// `|g(q) X_q| <= gmax X_q` where
/// `X_q = (1/q) sum_{j mod q} What(j/q) S_f(-j/q)`, valid because the
/// transform is nonnegative and `S_f >= 0` on every Farey point `q <= Q`.
/// A failed precondition yields `NotApplicable`, never a pass.
pub fn lemma2_check(
    g: &SieveBasis<f64>,
    f: &FunctionTable<f64>,
    big_n: u64,
    h: u64,
    max_q: u64,
) -> Result<Lemma2Report> {
    if max_q == 0 {
        return Err(Error::InvalidArgument("Q must be positive".into()));
    }
    if g.support_max() > max_q {
        return Err(Error::InvalidArgument(format!(
            "basis support {} exceeds Q = {max_q}",
            g.support_max()
        )));
    }
    let scale: f64 = f.mean_value().abs()
        + f.values()[1..=big_n as usize]
            .iter()
            .map(|v| v.abs())
            .sum::<f64>();

    let mut min_sf = f64::INFINITY;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    let mut worst = f64::NEG_INFINITY;
    let gmax = g.max_abs();

    for q in 1..=max_q {
        let s = exp_sums_for_modulus(f, q, big_n)?;
        let ctab = cos_table(q);
        let mut x_q = 0.0;
        let mut x_abs = 0.0;
        for (j, &sj) in s.iter().enumerate() {
            min_sf = min_sf.min(sj);
            let what = dft_weight_with_cos_table(j as u64, q, h, &ctab);
            x_q += what * sj;
            x_abs += what * sj.abs();
        }
        x_q /= q as f64;
        x_abs /= q as f64;
        let gq = g.coeff(q);
        lhs += gq * x_q;
        rhs += x_q;
        let allowance = 1e-9 * x_abs * gmax.max(1.0) + 1e-12;
        worst = worst.max((gq * x_q).abs() - gmax * x_q - allowance);
    }

    let status = if min_sf < -1e-9 * scale {
        CheckStatus::NotApplicable
    } else if worst <= 0.0 {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(Lemma2Report {
        lhs,
        rhs,
        gmax,
        min_exp_sum: min_sf,
        worst_term_excess: worst,
        status,
    })
}

/// One grid point of a majorization-ratio experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub n: u64,
    pub h: u64,
    pub q: u64,
    pub f0: f64,
    pub i_f: f64,
    /// `I_{f, d_Q}`; absent for the corollary form.
    pub i_mixed: Option<f64>,
    pub denominator: f64,
    /// `I_f / denominator`; absent when the positivity precondition failed.
    pub ratio: Option<f64>,
    /// Minimum of the Farey positivity scan.
    pub farey_min: f64,
    pub status: CheckStatus,
}

fn require_matches_convolution(
    f: &FunctionTable<f64>,
    g: &SieveBasis<f64>,
    upto: u64,
) -> Result<()> {
    let conv = dirichlet_convolve(g, upto)?;
    for n in 1..=upto as usize {
        let a = f.values()[n];
        let b = conv.values()[n];
        if (a - b).abs() > 1e-9 * a.abs().max(b.abs()).max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "table is not g * 1: mismatch at n = {n} ({a} vs {b})"
            )));
        }
    }
    Ok(())
}

/// Ratio of `I_f` to the majorization envelope
/// `I_{f,d_Q} + h^3 + f(0) h^2 + Q h f(0) + Q h^2`. Requires
/// `supp(g) <= Q`, `f = g * 1`, and the Farey positivity of `f`; a failed
/// positivity scan yields `NotApplicable`, never a silent pass.
pub fn theorem_bound_check(
    f: &FunctionTable<f64>,
    g: &SieveBasis<f64>,
    big_n: u64,
    h: u64,
    max_q: u64,
) -> Result<BoundPoint> {
    if g.support_max() > max_q {
        return Err(Error::InvalidArgument(format!(
            "basis support {} exceeds Q = {max_q}",
            g.support_max()
        )));
    }
    require_matches_convolution(f, g, big_n + h - 1)?;
    let farey = check_nonneg_farey(f, max_q, big_n)?;
    let f0 = f.mean_value();
    let i_f = symmetry_integral(f, big_n, h)?.value;
    let d_q = restricted_divisor(big_n + h - 1, max_q)?.to_real();
    let i_mixed = mixed_symmetry_integral(f, &d_q, big_n, h)?.value;
    let (hf, qf) = (h as f64, max_q as f64);
    let denominator = i_mixed + hf.powi(3) + f0 * hf * hf + qf * hf * f0 + qf * hf * hf;
    let status = if farey.pass {
        CheckStatus::Pass
    } else {
        CheckStatus::NotApplicable
    };
    Ok(BoundPoint {
        n: big_n,
        h,
        q: max_q,
        f0,
        i_f,
        i_mixed: Some(i_mixed),
        denominator,
        ratio: farey.pass.then(|| i_f / denominator),
        farey_min: farey.min,
        status,
    })
}

/// Ratio of `I_f` to `N h^{3/2} + Q h f(0) + Q h^2`, under the guards
/// `h^2 <= Q` and `log h / log N < 1/2`.
pub fn corollary_bound_check(
    f: &FunctionTable<f64>,
    big_n: u64,
    h: u64,
    max_q: u64,
) -> Result<BoundPoint> {
    if h * h > max_q {
        return Err(Error::InvalidArgument(format!(
            "corollary needs h^2 <= Q, got h^2 = {} > Q = {max_q}",
            h * h
        )));
    }
    let theta = (h as f64).ln() / (big_n as f64).ln();
    if theta >= 0.5 {
        return Err(Error::InvalidArgument(format!(
            "corollary needs log h / log N < 1/2, got {theta:.3}"
        )));
    }
    let farey = check_nonneg_farey(f, max_q, big_n)?;
    let f0 = f.mean_value();
    let i_f = symmetry_integral(f, big_n, h)?.value;
    let (hf, qf) = (h as f64, max_q as f64);
    let denominator = big_n as f64 * hf.powf(1.5) + qf * hf * f0 + qf * hf * hf;
    let status = if farey.pass {
        CheckStatus::Pass
    } else {
        CheckStatus::NotApplicable
    };
    Ok(BoundPoint {
        n: big_n,
        h,
        q: max_q,
        f0,
        i_f,
        i_mixed: None,
        denominator,
        ratio: farey.pass.then(|| i_f / denominator),
        farey_min: farey.min,
        status,
    })
}

/// Least-squares log-log fit of measurements against a claimed exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundFit {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Least-squares slope of `ln y` against `ln x`.
    pub slope: f64,
    /// `max_i y_i / x_i^claim`.
    pub constant: f64,
    pub claim_exponent: f64,
    pub tolerance: f64,
    /// `slope <= claim_exponent + tolerance`.
    pub pass: bool,
}

impl BoundFit {
    pub fn fit(xs: &[f64], ys: &[f64], claim_exponent: f64, tolerance: f64) -> Result<BoundFit> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidArgument("xs and ys lengths differ".into()));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidArgument(
                "slope undefined: need at least two grid points".into(),
            ));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) || xs[0] <= 0.0 {
            return Err(Error::InvalidArgument(
                "xs must be positive and strictly increasing".into(),
            ));
        }
        if ys.iter().any(|&y| y < 0.0 || !y.is_finite()) {
            return Err(Error::InvalidArgument("ys must be finite and >= 0".into()));
        }
        // zero measurements satisfy any upper bound; drop them from the fit
        let pts: Vec<(f64, f64)> = xs
            .iter()
            .zip(ys)
            .filter(|(_, &y)| y > 0.0)
            .map(|(&x, &y)| (x.ln(), y.ln()))
            .collect();
        if pts.len() < 2 {
            return Err(Error::InvalidArgument(
                "need at least two positive measurements".into(),
            ));
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let slope = sxy / sxx;
        let constant = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| y / x.powf(claim_exponent))
            .fold(0.0, f64::max);
        Ok(BoundFit {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            slope,
            constant,
            claim_exponent,
            tolerance,
            pass: slope <= claim_exponent + tolerance,
        })
    }

    /// `|slope - claim| <= tolerance`; the form the scaling experiment
    /// uses.
    pub fn two_sided_pass(&self) -> bool {
        (self.slope - self.claim_exponent).abs() <= self.tolerance
    }
}

/// `N` values `2^e` over an inclusive exponent range.
pub fn exponent_grid(start: f64, end: f64, steps: u32) -> Result<Vec<u64>> {
    if steps == 0 || end < start {
        return Err(Error::InvalidArgument("bad exponent grid".into()));
    }
    if steps == 1 {
        return Ok(vec![(2f64).powf(start).round() as u64]);
    }
    Ok((0..steps)
        .map(|i| {
            let e = start + (end - start) * i as f64 / (steps - 1) as f64;
            (2f64).powf(e).round() as u64
        })
        .collect())
}

fn grid_h(n: u64, theta: f64) -> u64 {
    ((n as f64).powf(theta).floor() as u64).max(1)
}

/// Deterministic, platform-stable RNG for randomized verification tables.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn case_rng(seed: u64, point: usize, sample: u32) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((point as u64) << 20)
        .wrapping_add(sample as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

/// One point of a residual grid: the mean `|residual| / budget` over the
/// seeded samples at this size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub n: u64,
    pub h: u64,
    pub mean_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualGrid {
    pub points: Vec<ResidualPoint>,
    pub fit: BoundFit,
}

/// Window-identity residuals over random sign tables, fitted against `h`.
/// The remainder claim is cubic in `h`; the fit checks that
/// `|residual| / h^3` shows no growth trend (slope tolerance 0.2).
pub fn lemma1_residual_grid(
    ns: &[u64],
    theta: f64,
    samples: u32,
    seed: u64,
) -> Result<ResidualGrid> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut points = Vec::with_capacity(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let h = grid_h(n, theta);
        let mut acc = 0.0;
        let mut worst = 0.0f64;
        for s in 0..samples {
            let mut rng = case_rng(seed, i, s);
            let f1 = FunctionTable::random_sign(n + h - 1, &mut rng)?;
            let f2 = FunctionTable::random_sign(n + h - 1, &mut rng)?;
            let rep = lemma1_check(&f1, &f2, n, h)?;
            acc += rep.ratio.abs();
            worst = worst.max(rep.ratio.abs());
        }
        points.push(ResidualPoint {
            n,
            h,
            mean_ratio: acc / samples as f64,
            max_ratio: worst,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.h as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean_ratio).collect();
    let fit = BoundFit::fit(&xs, &ys, 0.0, 0.2)?;
    Ok(ResidualGrid { points, fit })
}

/// Sieve-expansion residuals over random tables and bases, fitted against
/// `N` (slope tolerance 0.1). Sample tables take values in `{-3..3}`, the
/// basis support is `min(2h, 20)`, and the mean value is fixed at 2.
pub fn star_residual_grid(ns: &[u64], theta: f64, samples: u32, seed: u64) -> Result<ResidualGrid> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut points = Vec::with_capacity(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let h = grid_h(n, theta);
        let support = (2 * h).min(20);
        let mut acc = 0.0;
        let mut worst = 0.0f64;
        for s in 0..samples {
            let mut rng = case_rng(seed, i, s);
            let f = FunctionTable::random_uniform(n + h - 1, -3, 3, &mut rng)?.with_mean_value(2);
            let mut g = SieveBasis::random_uniform(support, -3, 3, &mut rng)?;
            while g.support_max() == 0 {
                g = SieveBasis::random_uniform(support, -3, 3, &mut rng)?;
            }
            let rep = star_identity_check(&f, &g, n, h)?;
            acc += rep.ratio.abs();
            worst = worst.max(rep.ratio.abs());
        }
        points.push(ResidualPoint {
            n,
            h,
            mean_ratio: acc / samples as f64,
            max_ratio: worst,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean_ratio).collect();
    let fit = BoundFit::fit(&xs, &ys, 0.0, 0.1)?;
    Ok(ResidualGrid { points, fit })
}

/// Seeded random spectral-identity cases (sizes up to N = 500, bases up to
/// support 20).
pub fn spectral_cases(count: u32, seed: u64) -> Result<Vec<SpectralReport>> {
    use rand::Rng;
    let mut out = Vec::with_capacity(count as usize);
    for c in 0..count {
        let mut rng = case_rng(seed, c as usize, 0);
        let n = rng.gen_range(50..=500u64);
        let h = rng.gen_range(2..=8u64);
        let support = rng.gen_range(1..=20u64);
        let f0 = rng.gen_range(0..=5i64);
        let f = FunctionTable::random_uniform(n, -3, 3, &mut rng)?.with_mean_value(f0);
        let mut g = SieveBasis::random_uniform(support, -3, 3, &mut rng)?;
        while g.support_max() == 0 {
            g = SieveBasis::random_uniform(support, -3, 3, &mut rng)?;
        }
        out.push(spectral_form_check(&f, &g, n, h)?);
    }
    Ok(out)
}

/// Seeded random majorization cases over a fixed positivity-certified `f`.
pub fn lemma2_cases(
    count: u32,
    seed: u64,
    big_n: u64,
    h: u64,
    max_q: u64,
) -> Result<Vec<Lemma2Report>> {
    let g0 = SieveBasis::<i64>::indicator(max_q);
    let r = minimal_mean_value(&g0, big_n, max_q)?;
    let f = dirichlet_convolve(&g0, big_n)?
        .to_real()
        .with_mean_value(r.f0);
    let mut out = Vec::with_capacity(count as usize);
    for c in 0..count {
        let mut rng = case_rng(seed, c as usize, 1);
        let g = SieveBasis::random_uniform(max_q, -3, 3, &mut rng)?.to_real();
        out.push(lemma2_check(&g, &f, big_n, h, max_q)?);
    }
    Ok(out)
}

/// Family of tables for the scaling experiment.
pub enum ScalingFamily<'a> {
    /// `d_Q` with `Q = h^2` (the minimal admissible support).
    RestrictedDivisor,
    /// Caller-provided integer-path builder `(n_max, h) -> table`.
    Custom(&'a dyn Fn(u64, u64) -> Result<FunctionTable<i64>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub n: u64,
    pub h: u64,
    pub q: u64,
    pub integral: f64,
    /// `I / (N h)`.
    pub ratio: f64,
    /// `I` over the crude estimate; at most 1.
    pub trivial_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingOutcome {
    pub points: Vec<ScalingPoint>,
    pub fit: BoundFit,
}

/// Growth-trend run for `I(N, h) / (N h)` with `h = floor(N^theta)`,
/// fitted against `N` with claim exponent 0 and tolerance 0.15 (the
/// scaling pass is two-sided: see [`BoundFit::two_sided_pass`]).
pub fn scaling_experiment(
    family: ScalingFamily<'_>,
    theta: f64,
    n_grid: &[u64],
) -> Result<ScalingOutcome> {
    if !(theta > 0.0 && theta <= 0.45) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, 0.45], got {theta}"
        )));
    }
    if n_grid.len() < 2 {
        return Err(Error::InvalidArgument(
            "slope undefined: need at least two grid points".into(),
        ));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "N grid must be strictly increasing".into(),
        ));
    }
    let mut points = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let h = grid_h(n, theta);
        let q = h * h;
        let f = match &family {
            ScalingFamily::RestrictedDivisor => restricted_divisor(n + h - 1, q)?,
            ScalingFamily::Custom(build) => build(n + h - 1, h)?,
        };
        let integral = symmetry_integral(&f, n, h)?.value;
        let crude = trivial_bound(&f, n, h)?;
        points.push(ScalingPoint {
            n,
            h,
            q,
            integral: integral as f64,
            ratio: integral as f64 / (n as f64 * h as f64),
            trivial_ratio: integral as f64 / crude as f64,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ratio).collect();
    let fit = BoundFit::fit(&xs, &ys, 0.0, 0.15)?;
    Ok(ScalingOutcome { points, fit })
}

/// Joint theorem/corollary ratio grid: `Q = h^2`, the mean value set to
/// the minimal admissible choice per point, positivity re-verified from
/// the table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorantGrid {
    pub theorem_points: Vec<BoundPoint>,
    pub corollary_points: Vec<BoundPoint>,
    pub theorem_fit: BoundFit,
    pub corollary_fit: BoundFit,
    /// False as soon as any point failed its positivity precondition.
    pub all_applicable: bool,
}

pub fn theorem_corollary_grid(ns: &[u64], theta: f64) -> Result<MajorantGrid> {
    if !(theta > 0.0 && theta <= 0.45) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, 0.45], got {theta}"
        )));
    }
    let mut theorem_points = Vec::with_capacity(ns.len());
    let mut corollary_points = Vec::with_capacity(ns.len());
    let mut all_applicable = true;
    for &n in ns {
        let h = grid_h(n, theta);
        let q = h * h;
        let g = SieveBasis::<i64>::indicator(q);
        let r = minimal_mean_value(&g, n, q)?;
        let f = dirichlet_convolve(&g, n + h - 1)?
            .to_real()
            .with_mean_value(r.f0);
        let tp = theorem_bound_check(&f, &g.to_real(), n, h, q)?;
        let cp = corollary_bound_check(&f, n, h, q)?;
        all_applicable &= tp.status == CheckStatus::Pass && cp.status == CheckStatus::Pass;
        theorem_points.push(tp);
        corollary_points.push(cp);
    }
    let xs: Vec<f64> = theorem_points.iter().map(|p| p.n as f64).collect();
    let t_ys: Vec<f64> = theorem_points
        .iter()
        .map(|p| p.ratio.unwrap_or(f64::NAN))
        .collect();
    let c_ys: Vec<f64> = corollary_points
        .iter()
        .map(|p| p.ratio.unwrap_or(f64::NAN))
        .collect();
    let theorem_fit = BoundFit::fit(&xs, &t_ys, 0.0, 0.15)?;
    let corollary_fit = BoundFit::fit(&xs, &c_ys, 0.0, 0.15)?;
    Ok(MajorantGrid {
        theorem_points,
        corollary_points,
        theorem_fit,
        corollary_fit,
        all_applicable,
    })
}
