//! Property-based checks over randomly generated subshifts and codes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use shiftlab_core::{
    empirical_measure, language_words, pushforward, representatives, tv_distance, window_defect,
    Alphabet, BlockCode, Error, Margin, SubshiftSpec,
};

/// A random small SFT over the binary alphabet that is not empty.
fn sft_strategy() -> impl Strategy<Value = SubshiftSpec> {
    proptest::collection::vec(proptest::collection::vec(0u8..2, 2..=3), 1..=2).prop_filter_map(
        "nonempty SFT",
        |forbidden| {
            let spec = SubshiftSpec::sft(Alphabet::binary(), forbidden).ok()?;
            match language_words(&spec, 6) {
                Ok(ws) if ws.count() > 0 => Some(spec),
                _ => None,
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every factor of an admissible word is admissible.
    #[test]
    fn sft_language_is_factor_closed(spec in sft_strategy(), n in 2usize..7) {
        let longer = language_words(&spec, n)?;
        let shorter = language_words(&spec, n - 1)?;
        for w in longer.iter() {
            for f in w.factors(n - 1) {
                prop_assert!(shorter.contains_letters(f.letters()));
            }
        }
    }

    /// Every admissible word extends one step on both sides.
    #[test]
    fn sft_language_is_biextendable(spec in sft_strategy(), n in 1usize..6) {
        let words = language_words(&spec, n)?;
        let longer = language_words(&spec, n + 1)?;
        for w in words.iter() {
            let left = longer.iter().any(|v| v.letters()[1..] == *w.letters());
            let right = longer
                .iter()
                .any(|v| v.letters()[..n] == *w.letters());
            prop_assert!(left && right);
        }
    }

    /// The defect is a probability in [0, 1) and shrinks as margins shrink.
    #[test]
    fn defect_is_monotone_in_margin(spec in sft_strategy(), n in 1usize..8) {
        let small = window_defect(&spec, n, Margin::new(0, 1))?;
        let large = window_defect(&spec, n, Margin::new(1, 1))?;
        prop_assert!(small >= BigRational::zero());
        prop_assert!(small <= large);
        prop_assert!(large < BigRational::from(BigInt::from(1)));
    }

    /// TV to a marginal never exceeds TV at full length, and representatives
    /// are deterministic across rebuilds.
    #[test]
    fn pushforward_tv_contracts_under_marginals(spec in sft_strategy(), n in 4usize..9) {
        let pads = Margin::new(0, 1);
        let reps = representatives(&spec, n, pads)?;
        let reps2 = representatives(&spec, n, pads)?;
        prop_assert_eq!(reps.members(), reps2.members());

        let code = BlockCode::shift(Alphabet::binary(), 1);
        let m = 3.min(n);
        let base = empirical_measure(&reps, m)?;
        let pushed = match pushforward(&code, &reps, m) {
            Ok(p) => p,
            // the shift image of a padded word can leave a pruned SFT language
            Err(Error::InadmissibleWindow { .. }) => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        let mut prev = tv_distance(&base, &pushed)?;
        for m2 in (1..m).rev() {
            let tv = tv_distance(&base.marginal(m2)?, &pushed.marginal(m2)?)?;
            prop_assert!(tv <= prev);
            prev = tv;
        }
    }

    /// Composition of shifts agrees with the combined shift on long words.
    #[test]
    fn shift_composition_is_coherent(a in -2i64..3, b in -2i64..3, len in 8usize..12) {
        let alphabet = Alphabet::binary();
        let f = BlockCode::shift(alphabet.clone(), a);
        let g = BlockCode::shift(alphabet.clone(), b);
        let fg = BlockCode::compose(&f, &g)?;
        let spec = SubshiftSpec::full(alphabet);
        for w in language_words(&spec, len)?.iter() {
            let direct = fg.apply_local(w)?;
            let stepped = f.apply_local(&g.apply_local(w)?)?;
            prop_assert_eq!(direct, stepped);
        }
    }
}
