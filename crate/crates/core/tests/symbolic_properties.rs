use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use goe_core::symbolic::{
    even_shift_system, golden_mean_shift, image_presentation, language_equal, periodic_point_count,
    pre_injective_code, surjective_on, surjective_on_full_shift, SlidingBlockCode, SoficPresentation,
};

/// Surjective codes on the full shift are balanced: every word of length
/// `len` has exactly `q^(window-1)` preimages.
fn balanced_up_to(code: &SlidingBlockCode, max_len: usize) -> bool {
    let extra = code.window_len() - 1;
    (1..=max_len).all(|len| {
        let mut counts = vec![0u32; 1 << len];
        for word in 0usize..1 << (len + extra) {
            let bits: Vec<usize> = (0..len + extra).map(|i| word >> i & 1).collect();
            let image = code.apply(&bits).unwrap();
            counts[image.iter().rev().fold(0, |acc, &s| acc << 1 | s)] += 1;
        }
        counts.iter().all(|&c| c == 1 << extra)
    })
}

#[test]
fn moore_myhill_on_random_radius_two_rules() {
    let full = SoficPresentation::full_shift(2);
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut surjective_seen = 0;
    for _ in 0..500 {
        let table: Vec<usize> = (0..32).map(|_| rng.random_range(0..2)).collect();
        let code = SlidingBlockCode::new(2, 2, 2, 2, table).unwrap();
        let surjective = surjective_on_full_shift(&code).unwrap();
        let pre_injective = pre_injective_code(&code, &full).unwrap().pre_injective;
        assert_eq!(surjective, pre_injective, "{:?}", code.table());
        if surjective {
            surjective_seen += 1;
            assert!(balanced_up_to(&code, 6));
        }
    }
    // random tables are rarely surjective; permutive ones always are
    let left_permutive = SlidingBlockCode::from_fn(2, 2, 2, 2, |w| w[0] ^ (w[2] & w[3])).unwrap();
    assert!(surjective_on_full_shift(&left_permutive).unwrap());
    assert!(pre_injective_code(&left_permutive, &full).unwrap().pre_injective);
    assert!(surjective_seen < 500);
}

#[test]
fn golden_periodic_counts_are_lucas_numbers() {
    let golden = golden_mean_shift();
    let (mut prev, mut cur) = (2u128, 1u128);
    for p in 1..=12 {
        assert_eq!(periodic_point_count(&golden, p).unwrap(), cur, "period {p}");
        (prev, cur) = (cur, prev + cur);
    }
}

#[test]
fn image_identities() {
    let golden = golden_mean_shift();
    let full = SoficPresentation::full_shift(2);
    let image = image_presentation(&SlidingBlockCode::identity(2), &golden).unwrap();
    assert!(language_equal(&image, &golden, 10).unwrap());
    let shifted = image_presentation(&SlidingBlockCode::shift(2), &golden).unwrap();
    assert!(language_equal(&shifted, &golden, 10).unwrap());
    assert!(surjective_on(&SlidingBlockCode::shift(2), &golden).unwrap());
    let xor = image_presentation(&SlidingBlockCode::xor(), &full).unwrap();
    assert!(language_equal(&xor, &full, 10).unwrap());
    let constant = SlidingBlockCode::constant(2, 0).unwrap();
    assert!(!surjective_on_full_shift(&constant).unwrap());
    assert!(!pre_injective_code(&constant, &full).unwrap().pre_injective);
}

/// A golden-mean word of length `len` continuing from `prev`.
fn golden_word(rng: &mut ChaCha8Rng, mut prev: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            prev = if prev == 1 { 0 } else { rng.random_range(0..2) };
            prev
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn asymptotic_pairs_map_to_asymptotic_pairs(seed in any::<u64>(), middle in 1usize..=12) {
        let sys = even_shift_system().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = golden_word(&mut rng, 1, 16);
        let last = *left.last().unwrap();
        let (mid1, mid2) = (golden_word(&mut rng, last, middle), golden_word(&mut rng, last, middle));
        // a 0 after each middle keeps both sides compatible with the common tail
        let tail = {
            let mut t = vec![0];
            t.extend(golden_word(&mut rng, 0, 15));
            t
        };
        let first: Vec<usize> = [left.clone(), mid1, tail.clone()].concat();
        let second: Vec<usize> = [left.clone(), mid2, tail].concat();
        prop_assert!(sys.golden.accepts(&first) && sys.golden.accepts(&second));
        let (u, v) = (sys.label_code.apply(&first).unwrap(), sys.label_code.apply(&second).unwrap());
        prop_assert!(sys.even.accepts(&u) && sys.even.accepts(&v));
        // output i reads inputs i and i+1, so only outputs touching the middle may differ
        let from = left.len() - 1;
        let to = left.len() + middle;
        for i in (0..u.len()).filter(|i| *i < from || *i >= to) {
            prop_assert_eq!(u[i], v[i], "position {}", i);
        }
    }

    #[test]
    fn distinct_periodic_points_are_not_almost_equal(p in 1usize..=6, q in 1usize..=6, a in 0u32..64, b in 0u32..64) {
        let x: Vec<usize> = (0..p).map(|i| (a >> i) as usize & 1).collect();
        let y: Vec<usize> = (0..q).map(|i| (b >> i) as usize & 1).collect();
        let periodic_golden = |w: &[usize]| (0..w.len()).all(|i| !(w[i] == 1 && w[(i + 1) % w.len()] == 1));
        prop_assume!(periodic_golden(&x) && periodic_golden(&y));
        let block = p * q;
        let agree_everywhere = (0..block).all(|i| x[i % p] == y[i % q]);
        let differ_somewhere = (0..block).any(|i| x[i % p] != y[i % q]);
        // distinct points differ in every period block, hence infinitely often
        prop_assert!(agree_everywhere != differ_somewhere);
        if differ_somewhere {
            for shift in 0..5 {
                let start = shift * block;
                prop_assert!((start..start + block).any(|i| x[i % p] != y[i % q]));
            }
        }
    }
}
