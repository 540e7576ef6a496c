use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use goe_core::algebra::{
    cyclotomic, disk_root_counts, expand_factors, factor_rational, root_of_unity_divisors, totient,
    unit_circle_root_count, IntegerMatrix, IntegerPolynomial, DEFAULT_DEGREE_BOUND,
};

fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |flat| {
            let rows: Vec<Vec<BigInt>> = flat.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            IntegerMatrix::from_rows(rows).unwrap()
        })
    })
}

fn shifted(a: &IntegerMatrix, t: i64) -> IntegerMatrix {
    IntegerMatrix::scalar(a.dim(), t).sub(a).unwrap()
}

/// Normalizes sign so that the leading coefficient is positive.
fn positive(p: IntegerPolynomial) -> IntegerPolynomial {
    if p.leading().is_some_and(|c| c.is_negative()) {
        IntegerPolynomial::new(p.coeffs().iter().map(|c| -c).collect())
    } else {
        p
    }
}

fn has_rational_root(p: &IntegerPolynomial) -> bool {
    let lead = p.leading().unwrap().abs();
    let constant = p.coeff(0).abs();
    if constant.is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while &d <= n {
            if n.is_multiple_of(&d) {
                out.push(d.clone());
            }
            d += 1;
        }
        out
    };
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            for sign in [BigInt::from(1), BigInt::from(-1)] {
                // p(num/den)·den^deg
                let deg = p.degree().unwrap();
                let value: BigInt = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * (&num * &sign).pow(i as u32) * den.pow((deg - i) as u32))
                    .sum();
                if value.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn char_poly_is_monic_with_determinant_constant(a in matrix_strategy()) {
        let chi = a.char_poly();
        let n = a.dim();
        prop_assert_eq!(chi.degree(), Some(n));
        prop_assert!(chi.is_monic());
        let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        prop_assert_eq!(chi.coeff(0), sign * a.det());
    }

    #[test]
    fn char_poly_matches_shifted_determinants(a in matrix_strategy()) {
        let chi = a.char_poly();
        for t in -3i64..=3 {
            prop_assert_eq!(chi.eval_i64(t), shifted(&a, t).det());
        }
    }
}

fn small_factor() -> impl Strategy<Value = IntegerPolynomial> {
    (1usize..=3).prop_flat_map(|deg| {
        (prop::collection::vec(-3i64..=3, deg), 1i64..=2).prop_map(move |(low, lead)| {
            let mut coeffs = low;
            if coeffs[0] == 0 {
                coeffs[0] = 1;
            }
            coeffs.push(lead);
            IntegerPolynomial::from_i64(&coeffs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reconstructs_input(parts in prop::collection::vec(small_factor(), 1..=3)) {
        let product = parts.iter().fold(IntegerPolynomial::one(), |acc, f| &acc * f);
        prop_assume!(product.degree().unwrap() <= DEFAULT_DEGREE_BOUND);
        let factors = factor_rational(&product, DEFAULT_DEGREE_BOUND).unwrap();
        let rebuilt = positive(expand_factors(&factors).primitive_part());
        prop_assert_eq!(rebuilt, positive(product.primitive_part()));
        for f in &factors {
            let deg = f.factor.degree().unwrap();
            prop_assert!(deg >= 1);
            if (2..=3).contains(&deg) {
                prop_assert!(!has_rational_root(&f.factor), "factor {} has a rational root", f.factor);
            }
        }
    }
}

/// Factors with every root strictly inside, on, or outside the unit circle.
fn located_factors() -> [(Vec<i64>, [usize; 3]); 12] {
    [
        (vec![-1, 2], [1, 0, 0]),
        (vec![1, 3], [1, 0, 0]),
        (vec![1, 0, 2], [2, 0, 0]),
        (vec![1, 1, 3], [2, 0, 0]),
        (vec![-1, 1], [0, 1, 0]),
        (vec![1, 1], [0, 1, 0]),
        (vec![1, 0, 1], [0, 2, 0]),
        (vec![1, 1, 1], [0, 2, 0]),
        (vec![-2, 1], [0, 0, 1]),
        (vec![3, 1], [0, 0, 1]),
        (vec![-3, 0, 1], [0, 0, 2]),
        (vec![1, -3, 1], [1, 0, 1]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn disk_counts_follow_factor_locations(picks in prop::collection::vec(0usize..12, 1..=4)) {
        let table = located_factors();
        let mut product = IntegerPolynomial::one();
        let mut expected = [0usize; 3];
        for &i in &picks {
            product = &product * &IntegerPolynomial::from_i64(&table[i].0);
            for j in 0..3 {
                expected[j] += table[i].1[j];
            }
        }
        let counts = disk_root_counts(&product).unwrap();
        prop_assert_eq!([counts.inside, counts.on_circle, counts.outside], expected);
        prop_assert_eq!(counts.inside + counts.on_circle + counts.outside, product.degree().unwrap());
        prop_assert_eq!(unit_circle_root_count(&product).unwrap(), expected[1]);
        let reversed = disk_root_counts(&product.reversal()).unwrap();
        prop_assert_eq!(reversed.inside, counts.outside);
        prop_assert_eq!(reversed.outside, counts.inside);
        prop_assert_eq!(reversed.on_circle, counts.on_circle);
    }
}

#[test]
fn cyclotomic_degree_and_divisibility() {
    for d in 1..=30u64 {
        let phi = cyclotomic(d);
        let by_gcd = (1..=d).filter(|k| k.gcd(&d) == 1).count();
        assert_eq!(phi.degree(), Some(by_gcd), "degree of Φ_{d}");
        assert_eq!(totient(d) as usize, by_gcd);
        let quotient = IntegerPolynomial::x_pow_minus_one(d as usize).div_exact(&phi);
        assert!(quotient.is_some(), "Φ_{d} does not divide x^{d} - 1");
    }
}

#[test]
fn ergodic_quartic_has_circle_roots_but_no_roots_of_unity() {
    let p = IntegerPolynomial::from_i64(&[1, -2, 1, -2, 1]);
    assert!(root_of_unity_divisors(&p).unwrap().is_empty());
    assert_eq!(unit_circle_root_count(&p).unwrap(), 2);
}
