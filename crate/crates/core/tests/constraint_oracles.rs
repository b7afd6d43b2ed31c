mod common;

use concount::spectral::{
    krawtchouk, krawtchouk_by_sum, self_convolution_counts, weight_class_sums, wht, IntSpectrum,
};
use concount::{orbit_structure, weight_distribution, BigInt, BitWord, ConstraintSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn membership_matches_definition() {
    for n in 1..=10 {
        for spec in common::specs_for(n) {
            let c = spec.at(n).unwrap();
            for x in common::all_words(n) {
                assert_eq!(c.member(&x), common::member(spec, &x), "{spec} n={n} x={x}");
            }
        }
    }
}

#[test]
fn cardinality_and_enumeration_match_definition() {
    for n in 1..=10 {
        for spec in common::specs_for(n) {
            let mut brute = common::members(spec, n);
            assert_eq!(
                spec.cardinality(n).unwrap(),
                BigInt::from(brute.len()),
                "{spec} n={n}"
            );
            brute.sort_by_key(|x| x.to_string());
            assert_eq!(spec.enumerate_members(n).unwrap(), brute, "{spec} n={n}");
        }
    }
}

#[test]
fn char_sum_matches_brute_sum() {
    for n in 1..=9 {
        for spec in common::specs_for(n) {
            let c = spec.at(n).unwrap();
            let m = common::members(spec, n);
            for s in common::all_words(n) {
                assert_eq!(
                    c.char_sum(&s),
                    common::char_sum(&m, &s),
                    "{spec} n={n} s={s}"
                );
            }
        }
    }
}

#[test]
fn two_charge_cardinality_closed_form() {
    for n in 1..=14 {
        let card = ConstraintSpec::TwoCharge.cardinality(n).unwrap();
        assert_eq!(card, BigInt::one() << (n / 2));
    }
}

#[test]
fn orbits_partition_and_share_character_sums() {
    let cases = [
        (ConstraintSpec::TwoCharge, 7),
        (ConstraintSpec::TwoCharge, 8),
        (ConstraintSpec::TwoCharge, 9),
        (ConstraintSpec::Subblock { p: 2, z: 1 }, 8),
        (ConstraintSpec::Subblock { p: 3, z: 1 }, 9),
        (ConstraintSpec::Subblock { p: 2, z: 2 }, 6),
    ];
    for (spec, n) in cases {
        let orb = orbit_structure(spec, n).unwrap();
        let total: BigInt = orb.sizes.iter().sum();
        assert_eq!(total, BigInt::one() << n);
        let mut seen = vec![BigInt::zero(); orb.len()];
        for x in common::all_words(n) {
            seen[orb.index_of(&x)] += 1;
        }
        assert_eq!(seen, orb.sizes, "{spec} n={n}");
        let m = common::members(spec, n);
        let words: Vec<BitWord> = common::all_words(n).collect();
        for s in &words {
            let f = common::char_sum(&m, s);
            let rep = &orb.reps[orb.index_of(s)];
            assert_eq!(
                f,
                common::char_sum(&m, rep),
                "{spec}: F not constant on the orbit of {s}"
            );
            let direct: Vec<BigInt> = {
                let mut acc = vec![0i64; orb.len()];
                for x in &words {
                    acc[orb.index_of(x)] += if x.dot(s) { -1 } else { 1 };
                }
                acc.into_iter().map(BigInt::from).collect()
            };
            assert_eq!(orb.char_sums_at(s).unwrap(), direct, "{spec} n={n} s={s}");
        }
    }
}

#[test]
fn self_convolution_matches_pair_count() {
    for (spec, n) in [
        (ConstraintSpec::Rll { d: 1 }, 8),
        (ConstraintSpec::TwoCharge, 9),
        (ConstraintSpec::EvenStrict, 7),
    ] {
        let m = common::members(spec, n);
        let v = self_convolution_counts(n, |x| common::member(spec, x)).unwrap();
        for x in common::all_words(n) {
            let pairs = m.iter().filter(|z| common::member(spec, &x.xor(z))).count();
            assert_eq!(v[x.to_index() as usize], pairs as i128);
        }
    }
}

#[test]
fn weight_distribution_matches_histogram() {
    for n in [7, 8, 10, 11] {
        for spec in common::specs_for(n) {
            let mut h = vec![BigInt::zero(); n + 1];
            for x in common::members(spec, n) {
                h[x.weight()] += 1;
            }
            assert_eq!(
                weight_distribution(spec, n).unwrap().counts,
                h,
                "{spec} n={n}"
            );
        }
    }
}

#[test]
fn parseval_and_plancherel() {
    for n in [6, 9, 12] {
        let specs = common::specs_for(n);
        for a in &specs {
            let ca = a.at(n).unwrap();
            let fa: Vec<BigInt> = common::all_words(n).map(|s| ca.char_sum(&s)).collect();
            let sq: BigInt = fa.iter().map(|f| f * f).sum();
            assert_eq!(sq, a.cardinality(n).unwrap() << n, "{a} n={n}");
            for b in &specs {
                let cb = b.at(n).unwrap();
                let inner: BigInt = common::all_words(n)
                    .zip(&fa)
                    .map(|(s, f)| f * cb.char_sum(&s))
                    .sum();
                let both = common::all_words(n)
                    .filter(|x| ca.member(x) && cb.member(x))
                    .count();
                assert_eq!(inner, BigInt::from(both) << n, "{a} x {b} n={n}");
            }
        }
    }
}

#[test]
fn krawtchouk_orthogonality_and_weight_sums() {
    for n in 1..=12usize {
        for i in 0..=n {
            for j in 0..=n {
                let k = krawtchouk(n, i, j).unwrap();
                assert_eq!(k, krawtchouk_by_sum(n, i, j));
                let mut acc = BigInt::zero();
                for l in 0..=n {
                    acc += krawtchouk(n, i, l).unwrap() * krawtchouk(n, l, j).unwrap();
                }
                let expect = if i == j {
                    BigInt::one() << n
                } else {
                    BigInt::zero()
                };
                assert_eq!(acc, expect, "K·K at n={n} ({i},{j})");
            }
        }
    }
    // The weight-class sums of a weight-i indicator are the Krawtchouk values times the class sizes.
    let n = 8;
    let spec = ConstraintSpec::FixedWeight { i: 3 };
    let c = spec.at(n).unwrap();
    let w = weight_class_sums(n, |s| Ok(c.char_sum(s))).unwrap();
    for (j, v) in w.iter().enumerate() {
        let size = (0..1u64 << n)
            .filter(|s| s.count_ones() as usize == j)
            .count();
        assert_eq!(*v, krawtchouk(n, 3, j).unwrap() * size);
    }
}

proptest! {
    #[test]
    fn transform_twice_scales(n in 1usize..=10, seed in any::<u64>()) {
        let mut state = seed;
        let vals: Vec<BigInt> = (0..1usize << n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                BigInt::from((state >> 40) as i64 - (1 << 23))
            })
            .collect();
        let f = IntSpectrum::new(n, vals.clone()).unwrap();
        let back = wht(&wht(&f));
        let scaled: Vec<BigInt> = vals.iter().map(|v| v << n).collect();
        prop_assert_eq!(back.values(), &scaled[..]);
    }

    #[test]
    fn transform_of_indicator_is_char_sum(n in 2usize..=10, pick in 0usize..7) {
        let specs = common::specs_for(n);
        let spec = specs[pick % specs.len()];
        let ind: Vec<BigInt> = common::all_words(n).map(|x| BigInt::from(common::member(spec, &x) as i32)).collect();
        let hat = wht(&IntSpectrum::new(n, ind).unwrap());
        let c = spec.at(n).unwrap();
        for s in common::all_words(n) {
            prop_assert_eq!(hat.at(&s), &c.char_sum(&s));
        }
    }

    #[test]
    fn char_sum_sampled_at_longer_lengths(n in 13usize..=16, idx in any::<u64>()) {
        // Beyond exhaustive range: sample one s and compare to the member list.
        let s = BitWord::from_index(n, idx & ((1 << n) - 1));
        for spec in [ConstraintSpec::Rll { d: 1 }, ConstraintSpec::EvenStrict, ConstraintSpec::TwoCharge] {
            let m = spec.enumerate_members(n).unwrap();
            prop_assert_eq!(spec.char_sum(&s).unwrap(), common::char_sum(&m, &s));
        }
    }
}
