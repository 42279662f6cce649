//! Property tests for the exact integer pipelines.

use majorant::correlate::{
    correlation_all_fft, correlation_all_naive, mixed_symmetry_integral, symmetry_integral,
};
use majorant::sieve::{dirichlet_convolve, mobius_invert, SieveBasis};
use majorant::table::FunctionTable;
use majorant::verify::lemma0_check;
use proptest::prelude::*;

fn small_basis() -> impl Strategy<Value = SieveBasis<i64>> {
    prop::collection::vec(-5i64..=5, 1..60).prop_map(|mut v| {
        v.insert(0, 0);
        SieveBasis::from_coeffs(v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Convolve then invert reproduces the basis exactly; invert then
    /// convolve reproduces the table exactly.
    #[test]
    fn mobius_round_trip(g in small_basis(), n_max in 64u64..800) {
        prop_assume!(g.support_max() <= n_max);
        let f = dirichlet_convolve(&g, n_max).unwrap();
        let g_back = mobius_invert(&f).unwrap();
        prop_assert_eq!(&g_back, &g);
        let f_back = dirichlet_convolve(&g_back, n_max).unwrap();
        prop_assert_eq!(f_back, f);
    }

    /// FFT and naive correlations agree on every lag, bit for bit, on the
    /// integer path.
    #[test]
    fn fft_equals_naive(seed in 0u64..1_000_000, n in 16u64..260, h in 1u64..24) {
        prop_assume!(2 * h < n);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f1 = FunctionTable::random_uniform(n + h, -3, 3, &mut rng).unwrap();
        let f2 = FunctionTable::random_uniform(n + h, -3, 3, &mut rng).unwrap();
        let a = correlation_all_naive(&f1, &f2, n, h).unwrap();
        let b = correlation_all_fft(&f1, &f2, n, h).unwrap();
        for (lag, va) in a.iter() {
            prop_assert_eq!(va, b.get(lag));
        }
    }

    /// Cauchy-Schwarz holds exactly: I_{f1,f2}^2 <= I_{f1} I_{f2}, and
    /// plain integrals are nonnegative.
    #[test]
    fn cauchy_schwarz(seed in 0u64..1_000_000, n in 32u64..300, h in 1u64..12) {
        prop_assume!(h < n / 4);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f1 = FunctionTable::random_uniform(n + h - 1, -3, 3, &mut rng).unwrap();
        let f2 = FunctionTable::random_uniform(n + h - 1, -3, 3, &mut rng).unwrap();
        let m = mixed_symmetry_integral(&f1, &f2, n, h).unwrap().value;
        let a = symmetry_integral(&f1, n, h).unwrap().value;
        let b = symmetry_integral(&f2, n, h).unwrap().value;
        prop_assert!(a >= 0 && b >= 0);
        prop_assert!(m.checked_mul(m).unwrap() <= a.checked_mul(b).unwrap());
    }

    /// The boundary-shifted correlation residual never exceeds its budget.
    #[test]
    fn lemma0_budget(seed in 0u64..1_000_000, n in 100u64..400, h in 1u64..16, a in -32i64..=32) {
        prop_assume!(a != 0 && a.unsigned_abs() <= 2 * h && 4 * h < n);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f1 = FunctionTable::random_uniform(n, -3, 3, &mut rng).unwrap();
        let f2 = FunctionTable::random_uniform(n, -3, 3, &mut rng).unwrap();
        let rep = lemma0_check(&f1, &f2, n, h, a).unwrap();
        prop_assert!(rep.residual.abs() <= rep.budget);
    }

    /// CSV round trip is lossless on the integer path.
    #[test]
    fn csv_round_trip(vals in prop::collection::vec(-1_000_000i64..=1_000_000, 1..80), mean in 0i64..100) {
        let n_max = vals.len() as u64;
        let f = FunctionTable::from_fn(n_max, |n| vals[(n - 1) as usize])
            .unwrap()
            .with_mean_value(mean);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let g = FunctionTable::<i64>::read_csv(&buf[..]).unwrap();
        prop_assert_eq!(f, g);
    }
}
