use hermicode_core::counting::{self, alpha_roots, sigma_threshold, threshold_quadratic};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn qpow(q: u64, e: i64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

#[test]
fn c_nj_recurrence() {
    for q in QS {
        for n in 1..=6i64 {
            assert_eq!(counting::c_nj(n, -1, q).unwrap(), counting::generator_count(n, q).unwrap());
            for j in 0..=n {
                let lhs = BigInt::from(counting::c_nj(n, j, q).unwrap());
                let sign = if (2 * n - j + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let rhs = BigInt::from(counting::c_nj(n - 1, j - 1, q).unwrap()) * qpow(q, j) * (qpow(q, 2 * n - j + 1) - sign);
                assert_eq!(lhs, rhs, "n={n} j={j} q={q}");
            }
        }
    }
}

#[test]
fn n_recurrence() {
    for q in QS {
        for n in 2..=6i64 {
            for i in 0..=n - 2 {
                let lhs = counting::N_ni(n, i, q).unwrap();
                let rhs = counting::N_ni(n - 1, i - 1, q).unwrap() * BigUint::from(q).pow((2 * n - 3) as u32);
                assert_eq!(lhs, rhs, "n={n} i={i} q={q}");
            }
        }
        for n in 1..=4i64 {
            for i in -1..=n {
                assert_eq!(counting::N_prime(n, i, q).unwrap(), counting::N_ni(n + 2, i, q).unwrap());
            }
        }
    }
}

#[test]
fn root_sum_is_sigma() {
    let deltas = [BigRational::new(1.into(), 2.into()), BigRational::one(), BigRational::from_integer(2.into())];
    for q in QS {
        for n in 1..=6i64 {
            for i in -1..=n - 2 {
                let sigma = sigma_threshold(n, i, q).unwrap();
                for d in &deltas {
                    let pair = alpha_roots(n, i, q, d).unwrap();
                    assert_eq!(pair.sum(), sigma, "n={n} i={i} q={q} delta={d}");
                    // Vieta: the sum is b/a of the displayed quadratic
                    let (a, b, _) = threshold_quadratic(n, i, q, d).unwrap();
                    assert_eq!(&b / &a, sigma);
                }
            }
        }
    }
}

#[test]
fn sigma_excess_is_lower_order() {
    for q in QS {
        for n in 1..=6i64 {
            let lead = BigRational::from_integer(qpow(q, 2 * n - 1) * 2);
            let scale = BigRational::from_integer(qpow(q, 2 * n - 2) * 6);
            for i in -1..=n - 2 {
                let f = sigma_threshold(n, i, q).unwrap() - &lead;
                assert!(f > BigRational::zero() && f <= scale, "n={n} i={i} q={q} f={f}");
            }
        }
    }
}

#[test]
fn roots_satisfy_quadratic() {
    for (n, i, q) in [(2, -1, 2), (2, 0, 2), (3, -1, 3), (3, 1, 2), (4, 0, 5)] {
        let d = BigRational::one();
        let pair = alpha_roots(n, i, q, &d).unwrap();
        assert!(pair.discriminant_nonneg);
        let (a, b, c) = threshold_quadratic(n, i, q, &d).unwrap();
        let (a, b, c) = (ratio(&a), ratio(&b), ratio(&c));
        for y in [pair.alpha_f64(), pair.alpha_prime_f64()] {
            let v = a * y * y - b * y + c;
            assert!((v / (b * y).abs().max(1.0)).abs() < 1e-9, "n={n} i={i} q={q} y={y} residual={v}");
        }
    }
}

fn ratio(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap()
}

#[test]
fn smallest_weight_at_n_minus_3() {
    for q in 2..=9u64 {
        for n in 2..=6i64 {
            let weights: Vec<(i64, BigUint)> =
                (-1..=n - 2).map(|i| (i, counting::pair_word_weight(n, i, q).unwrap())).collect();
            let min = weights.iter().map(|(_, w)| w).min().unwrap();
            let at = weights.iter().find(|(i, _)| *i == (n - 3).max(-1)).unwrap();
            assert_eq!(&at.1, min, "n={n} q={q}");
            assert_eq!(*min, counting::min_pair_weight(n, q).unwrap());
        }
    }
}
