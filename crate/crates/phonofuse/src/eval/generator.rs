//! Deterministic synthetic corpus generator. Takes clean sentences
//! containing keywords and applies scripted corruptions (suffix swap
//! -ed/-ing, plural insertion, consonant substitution preserving
//! vowels) so channel-ordering properties can be exercised from a
//! fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CategoryTexts;

const KEYWORDS: [&str; 8] = [
    "announced",
    "agreement",
    "affairs",
    "significant",
    "president",
    "absolutely",
    "decision",
    "minister",
];

const FILLERS: [&str; 22] = [
    "deal", "word", "yet", "banana", "take", "signed", "made", "today",
    "body", "onion", "pasta", "egg", "foreign", "ended", "nothing",
    "happened", "vice", "about", "announce", "affair", "significance",
    "absolute",
];

const NOISE: [&str; 7] = ["the", "a", "i", "am", "null", "they", "was"];

const CONSONANTS: &[u8] = b"bcdfghjklmnpqrstvwxz";

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub categories: Vec<CategoryTexts>,
}

fn corrupt(word: &str, rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..3) {
        0 => {
            // suffix swap
            if let Some(stem) = word.strip_suffix("ed") {
                format!("{stem}ing")
            } else if let Some(stem) = word.strip_suffix("ing") {
                format!("{stem}ed")
            } else {
                format!("{word}ing")
            }
        }
        1 => format!("{word}s"), // plural insertion
        _ => {
            // consonant substitution, vowels untouched
            let mut bytes = word.as_bytes().to_vec();
            let cons_positions: Vec<usize> = bytes
                .iter()
                .enumerate()
                .filter(|(_, b)| !b"aeiou".contains(b))
                .map(|(i, _)| i)
                .collect();
            if let Some(&pos) = cons_positions.choose(rng) {
                bytes[pos] = *CONSONANTS.choose(rng).unwrap();
            }
            String::from_utf8(bytes).unwrap()
        }
    }
}

fn sample_text(keyword: &str, rng: &mut ChaCha8Rng) -> String {
    let mut words: Vec<String> = Vec::new();
    let n_fillers = rng.gen_range(3..=8);
    for _ in 0..n_fillers {
        let w = *FILLERS.choose(rng).unwrap();
        if rng.gen_bool(0.3) {
            words.push(corrupt(w, rng));
        } else {
            words.push(w.to_string());
        }
        if rng.gen_bool(0.25) {
            words.push(NOISE.choose(rng).unwrap().to_string());
        }
    }
    if rng.gen_bool(0.7) {
        let kw = if rng.gen_bool(0.5) {
            corrupt(keyword, rng)
        } else {
            keyword.to_string()
        };
        let pos = rng.gen_range(0..=words.len());
        words.insert(pos, kw);
    }
    if rng.gen_bool(0.2) {
        words.push(format!("{}", rng.gen_range(0..200)));
    }
    let mut text = words.join(" ");
    if rng.gen_bool(0.3) {
        text.push('.');
    }
    text
}

/// Build a corpus of `n_categories` keyword categories with
/// `samples_per_category` noisy transcripts each. Fully determined by
/// the seed.
pub fn generate_corpus(
    seed: u64,
    n_categories: usize,
    samples_per_category: usize,
) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let categories = (0..n_categories)
        .map(|i| {
            let keyword = KEYWORDS[i % KEYWORDS.len()].to_string();
            let samples = (0..samples_per_category)
                .map(|j| {
                    let id = format!("{keyword}/{j:03}");
                    (id, sample_text(&keyword, &mut rng))
                })
                .collect();
            (keyword, samples)
        })
        .collect();
    SyntheticCorpus { categories }
}
