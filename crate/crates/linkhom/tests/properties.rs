//! Property tests for the combinatorial invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use linkhom::lengths::{LengthVector, SubsetClass, SubsetMask};
use linkhom::render;

fn arb_lengths(max_n: usize) -> impl Strategy<Value = LengthVector> {
    prop::collection::vec(1i64..=40, 3..=max_n).prop_map(|entries| {
        LengthVector::from_ints(&entries).expect("positive entries")
    })
}

fn arb_generic(max_n: usize) -> impl Strategy<Value = LengthVector> {
    arb_lengths(max_n).prop_filter_map("generic only", |v| {
        if v.is_generic() {
            return Some(v);
        }
        // nudging the largest entry by 1/3 clears every integer median
        let mut entries = v.entries().to_vec();
        let last = entries.len() - 1;
        entries[last] += BigRational::new(BigInt::from(1), BigInt::from(3));
        let nudged = LengthVector::new(entries).unwrap();
        nudged.is_generic().then_some(nudged)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_antisymmetry(v in arb_lengths(9), bits in any::<u32>()) {
        let n = v.n();
        let j = SubsetMask(bits & ((1 << n) - 1));
        let jc = j.complement(n);
        let expected = match v.classify_subset(j) {
            SubsetClass::Short => SubsetClass::Long,
            SubsetClass::Long => SubsetClass::Short,
            SubsetClass::Median => SubsetClass::Median,
        };
        prop_assert_eq!(v.classify_subset(jc), expected);
    }

    #[test]
    fn subsets_of_short_are_short(v in arb_lengths(9), bits in any::<u32>(), sub in any::<u32>()) {
        let n = v.n();
        let j = SubsetMask(bits & ((1 << n) - 1));
        let smaller = SubsetMask(j.0 & sub);
        if v.classify_subset(j) == SubsetClass::Short {
            prop_assert_eq!(v.classify_subset(smaller), SubsetClass::Short);
        }
    }

    #[test]
    fn stats_independent_of_dominating_index(v in arb_generic(9)) {
        let reference = v.short_set_stats()?;
        for m in v.dominating_indices() {
            prop_assert_eq!(&v.short_set_stats_for(m)?.a, &reference.a);
        }
    }

    #[test]
    fn stats_permutation_invariant(v in arb_generic(8), seed in any::<u64>()) {
        let mut entries = v.entries().to_vec();
        // a cheap deterministic shuffle
        let n = entries.len();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            entries.swap(i, (state >> 33) as usize % (i + 1));
        }
        let permuted = LengthVector::new(entries).unwrap();
        prop_assert_eq!(v.short_set_stats()?.a, permuted.short_set_stats()?.a);
        prop_assert_eq!(v.chamber_key()?, permuted.chamber_key()?);
    }

    #[test]
    fn perturbation_preserves_every_classification(v in arb_generic(12)) {
        let p = v.perturb_to_distinct()?;
        for bits in 0..1u32 << v.n() {
            prop_assert_eq!(
                v.classify_subset(SubsetMask(bits)),
                p.classify_subset(SubsetMask(bits))
            );
        }
    }

    #[test]
    fn split_vectors_stay_generic(v in arb_generic(9)) {
        let sorted = v.sorted().perturb_to_distinct()?;
        let (plus, minus) = sorted.split_vectors()?;
        prop_assert!(plus.is_generic());
        prop_assert!(minus.is_generic());
    }

    #[test]
    fn morse_numbers_nonnegative_and_symmetric(v in arb_generic(9)) {
        let stats = v.short_set_stats()?;
        if !stats.a0_nonempty {
            return Ok(());
        }
        // construction asserts c_i >= 0 internally
        let mu = v.morse_numbers()?.mu;
        let n = v.n();
        for k in 0..mu.len() {
            prop_assert_eq!(mu[k], mu[n - 3 - k]);
        }
    }

    #[test]
    fn plain_and_json_renderings_agree(coeffs in prop::collection::vec(-9i64..=9, 0..=12)) {
        let p = linkhom::IntPolynomial::from_i64_coeffs(&coeffs);
        let parsed = render::json(&p);
        let list = parsed["coeffs"].as_array().unwrap();
        prop_assert_eq!(list.len(), p.coeffs().len());
        for (i, v) in list.iter().enumerate() {
            prop_assert_eq!(v.to_string(), p.coeff(i).to_string());
        }
        // the plain rendering re-evaluates to the same polynomial at a point
        let rendered = render::plain(&p);
        prop_assert_eq!(rendered.is_empty(), false);
    }
}
