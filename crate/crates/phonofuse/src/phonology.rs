//! Articulatory classification of ARPAbet symbols and class-based
//! pruning of phoneme streams into compact patterns.
//!
//! Pruning keeps only symbols of the requested classes. Kept vowels are
//! rendered as their first letter (AH -> A, IY -> I); kept consonants
//! keep their full ARPAbet symbol so SH stays distinct from S.

use std::collections::BTreeSet;
use std::fmt;

use crate::pronlex::{phonemize_tokens, BaseSymbol, Lexicon};
use crate::text_normalize::NormalizedTranscript;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhonemeClass {
    Vowel,
    Plosive,
    Fricative,
    Affricate,
    Nasal,
    Liquid,
    Glide,
}

impl PhonemeClass {
    pub const ALL: [PhonemeClass; 7] = [
        PhonemeClass::Vowel,
        PhonemeClass::Plosive,
        PhonemeClass::Fricative,
        PhonemeClass::Affricate,
        PhonemeClass::Nasal,
        PhonemeClass::Liquid,
        PhonemeClass::Glide,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PhonemeClass::Vowel => "vowel",
            PhonemeClass::Plosive => "plosive",
            PhonemeClass::Fricative => "fricative",
            PhonemeClass::Affricate => "affricate",
            PhonemeClass::Nasal => "nasal",
            PhonemeClass::Liquid => "liquid",
            PhonemeClass::Glide => "glide",
        }
    }

    pub fn from_name(name: &str) -> Option<PhonemeClass> {
        PhonemeClass::ALL.iter().copied().find(|c| c.name() == name)
    }
}

/// Total classification table over the 39 base symbols.
pub fn classify(symbol: BaseSymbol) -> PhonemeClass {
    use BaseSymbol::*;
    match symbol {
        AA | AE | AH | AO | AW | AY | EH | ER | EY | IH | IY | OW | OY
        | UH | UW => PhonemeClass::Vowel,
        P | B | T | D | K | G => PhonemeClass::Plosive,
        F | V | TH | DH | S | Z | SH | ZH | HH => PhonemeClass::Fricative,
        CH | JH => PhonemeClass::Affricate,
        M | N | NG => PhonemeClass::Nasal,
        L | R => PhonemeClass::Liquid,
        W | Y => PhonemeClass::Glide,
    }
}

/// The first letter of a vowel symbol: AA,AE,AH,AO,AW,AY -> A and so on.
/// Panics on non-vowel input; callers must classify first.
pub fn vowel_letter(symbol: BaseSymbol) -> char {
    assert!(
        classify(symbol) == PhonemeClass::Vowel,
        "vowel_letter called on non-vowel {symbol}"
    );
    symbol.as_str().as_bytes()[0] as char
}

/// A non-empty set of phoneme classes used for pruning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet(BTreeSet<PhonemeClass>);

impl ClassSet {
    pub fn new(classes: impl IntoIterator<Item = PhonemeClass>) -> Option<ClassSet> {
        let set: BTreeSet<PhonemeClass> = classes.into_iter().collect();
        if set.is_empty() {
            None
        } else {
            Some(ClassSet(set))
        }
    }

    /// Stage I of two-way pruning: vowels and plosives.
    pub fn vowel_plosive() -> ClassSet {
        ClassSet::new([PhonemeClass::Vowel, PhonemeClass::Plosive]).unwrap()
    }

    /// Stage II of two-way pruning: vowels and fricatives.
    pub fn vowel_fricative() -> ClassSet {
        ClassSet::new([PhonemeClass::Vowel, PhonemeClass::Fricative]).unwrap()
    }

    pub fn contains(&self, class: PhonemeClass) -> bool {
        self.0.contains(&class)
    }

    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// One symbol of a pruned pattern: a vowel letter or a consonant
/// ARPAbet symbol. Matched as whole symbols, never as characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternSymbol {
    Vowel(char),
    Consonant(BaseSymbol),
}

impl fmt::Display for PatternSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSymbol::Vowel(c) => write!(f, "{c}"),
            PatternSymbol::Consonant(b) => f.write_str(b.as_str()),
        }
    }
}

/// Ordered symbols surviving class filtering. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrunedPattern {
    pub symbols: Vec<PatternSymbol>,
}

impl PrunedPattern {
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Space-separated rendering, e.g. `A G I A T`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for PrunedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Keep, in order, exactly the symbols whose class is in `classes`.
pub fn prune(symbols: &[BaseSymbol], classes: &ClassSet) -> PrunedPattern {
    let kept = symbols
        .iter()
        .filter(|s| classes.contains(classify(**s)))
        .map(|&s| {
            if classify(s) == PhonemeClass::Vowel {
                PatternSymbol::Vowel(vowel_letter(s))
            } else {
                PatternSymbol::Consonant(s)
            }
        })
        .collect();
    PrunedPattern { symbols: kept }
}

/// Whole-transcript concatenated phoneme stream plus OOV count.
pub fn phonemize_stream(
    transcript: &NormalizedTranscript,
    lexicon: &Lexicon,
) -> (Vec<BaseSymbol>, usize) {
    phonemize_tokens(&transcript.tokens, lexicon)
}
