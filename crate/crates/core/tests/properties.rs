use lexlevel::ml::auc;
use lexlevel::textproc::{tokenize, FrequencySpectrum};
use lexlevel_testkit::oracles;
use proptest::prelude::*;

proptest! {
    #[test]
    fn tokenizing_is_idempotent(text in "\\PC{0,120}") {
        let tt = tokenize(&text, true);
        let again = tokenize(&tt.word_tokens().join(" "), true);
        prop_assert_eq!(again.word_tokens(), tt.word_tokens());
    }

    #[test]
    fn spectrum_accounts_for_every_token(tokens in prop::collection::vec("[a-dA-D]{1,3}", 0..80)) {
        let fs = FrequencySpectrum::from_tokens(&tokens);
        prop_assert_eq!(fs.freq_of_freq.iter().map(|(x, f)| x * f).sum::<usize>(), tokens.len());
        prop_assert_eq!(fs.freq_of_freq.values().sum::<usize>(), fs.types);
    }

    #[test]
    fn auc_matches_pairs_and_ignores_monotone_maps(
        pairs in prop::collection::vec((0u8..6, 0u8..2), 2..50)
    ) {
        let scores: Vec<f64> = pairs.iter().map(|p| f64::from(p.0)).collect();
        let labels: Vec<u8> = pairs.iter().map(|p| p.1).collect();
        prop_assume!(labels.contains(&0) && labels.contains(&1));
        let a = auc(&scores, &labels).unwrap();
        prop_assert!((a - oracles::auc_pairs(&scores, &labels)).abs() <= 1e-12);
        let mapped: Vec<f64> = scores.iter().map(|s| s.powi(3) - 40.0).collect();
        prop_assert_eq!(a, auc(&mapped, &labels).unwrap());
    }
}
