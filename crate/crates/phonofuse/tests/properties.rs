//! Randomized invariants for normalization, pruning and numeral
//! spelling.

use proptest::prelude::*;

use phonofuse::phonology::{prune, ClassSet, PatternSymbol, PhonemeClass};
use phonofuse::pronlex::BaseSymbol;
use phonofuse::text_normalize::{
    normalize, number_to_words, NormalizeConfig, Token,
};

fn arb_symbols() -> impl Strategy<Value = Vec<BaseSymbol>> {
    prop::collection::vec(
        prop::sample::select(BaseSymbol::ALL.to_vec()),
        0..40,
    )
}

fn arb_class_set() -> impl Strategy<Value = ClassSet> {
    prop::collection::btree_set(
        prop::sample::select(PhonemeClass::ALL.to_vec()),
        1..=7,
    )
    .prop_map(|classes| ClassSet::new(classes).unwrap())
}

proptest! {
    #[test]
    fn normalize_is_idempotent(text in ".{0,200}") {
        let config = NormalizeConfig::default();
        let once = normalize(&text, &config, "p");
        let words: Vec<&str> = once.tokens.iter().map(Token::as_str).collect();
        let twice = normalize(&words.join(" "), &config, "p");
        prop_assert_eq!(once.tokens, twice.tokens);
    }

    #[test]
    fn normalize_output_is_clean(text in ".{0,200}") {
        let config = NormalizeConfig::default();
        let transcript = normalize(&text, &config, "p");
        for token in &transcript.tokens {
            prop_assert!(token.as_str().bytes().all(|b| b.is_ascii_lowercase()));
            prop_assert!(!config.stop_words.contains(token.as_str()));
            prop_assert!(!config.remove_marker_tokens.contains(token.as_str()));
        }
    }

    #[test]
    fn normalize_preserves_order_of_surviving_words(
        words in prop::collection::vec("[a-z]{1,12}", 0..30),
    ) {
        let config = NormalizeConfig::default();
        let transcript = normalize(&words.join(" "), &config, "p");
        // Output must be the input word sequence with some words removed.
        let mut it = words.iter();
        for token in &transcript.tokens {
            prop_assert!(
                it.any(|w| w == token.as_str()),
                "{} out of order", token
            );
        }
    }

    #[test]
    fn prune_is_an_ordered_projection(
        symbols in arb_symbols(),
        classes in arb_class_set(),
    ) {
        let pattern = prune(&symbols, &classes);
        prop_assert!(pattern.len() <= symbols.len());
        // Each output symbol corresponds, in order, to an input symbol.
        let mut it = symbols.iter();
        for sym in &pattern.symbols {
            let matches_source = |s: &BaseSymbol| match sym {
                PatternSymbol::Consonant(c) => s == c,
                PatternSymbol::Vowel(v) =>
                    s.is_vowel() && s.as_str().starts_with(*v),
            };
            let found = it.any(|s| matches_source(s));
            prop_assert!(found);
        }
    }

    #[test]
    fn prune_is_monotone_in_the_class_set(
        symbols in arb_symbols(),
        classes in arb_class_set(),
        extra in prop::sample::select(PhonemeClass::ALL.to_vec()),
    ) {
        let small = prune(&symbols, &classes);
        let mut widened: Vec<PhonemeClass> =
            PhonemeClass::ALL.iter().copied()
                .filter(|c| classes.contains(*c) || *c == extra)
                .collect();
        let wide = prune(&symbols, &ClassSet::new(widened.drain(..)).unwrap());
        prop_assert!(small.len() <= wide.len());
    }

    #[test]
    fn number_to_words_matches_reference(n in 0u64..10_000) {
        // Independent oracle built from positional composition rather
        // than the recursive grouping the library uses.
        fn small(n: u64) -> Vec<String> {
            const ONES: [&str; 20] = [
                "zero", "one", "two", "three", "four", "five", "six",
                "seven", "eight", "nine", "ten", "eleven", "twelve",
                "thirteen", "fourteen", "fifteen", "sixteen",
                "seventeen", "eighteen", "nineteen",
            ];
            const TENS: [&str; 10] = [
                "", "", "twenty", "thirty", "forty", "fifty", "sixty",
                "seventy", "eighty", "ninety",
            ];
            match n {
                0..=19 => vec![ONES[n as usize].to_string()],
                20..=99 => {
                    let mut v = vec![TENS[(n / 10) as usize].to_string()];
                    if n % 10 != 0 {
                        v.push(ONES[(n % 10) as usize].to_string());
                    }
                    v
                }
                _ => unreachable!(),
            }
        }
        let mut expected = Vec::new();
        if n >= 1000 {
            expected.extend(small(n / 1000));
            expected.push("thousand".to_string());
        }
        let rem = n % 1000;
        if rem >= 100 {
            expected.extend(small(rem / 100));
            expected.push("hundred".to_string());
        }
        if rem % 100 != 0 || n == 0 {
            expected.extend(small(rem % 100));
        }
        let got: Vec<String> = number_to_words(&n.to_string())
            .unwrap()
            .into_iter()
            .map(|t| t.as_str().to_string())
            .collect();
        prop_assert_eq!(got, expected);
    }
}
