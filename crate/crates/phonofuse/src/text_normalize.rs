//! Transcript normalization: lowercasing, contraction expansion,
//! tokenization, numeral spelling and stop-word removal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// One lowercase word of a normalized transcript. Letters a-z only,
/// never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token(String);

impl Token {
    pub fn new(surface: impl Into<String>) -> Result<Self, NormalizeError> {
        let surface = surface.into();
        if surface.is_empty() {
            return Err(NormalizeError::InvalidToken {
                surface,
                reason: "empty".into(),
            });
        }
        if !surface.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(NormalizeError::InvalidToken {
                reason: "must contain only lowercase ascii letters".into(),
                surface,
            });
        }
        Ok(Token(surface))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A cleaned token sequence together with the identifier of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTranscript {
    pub source_id: String,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error("invalid token {surface:?}: {reason}")]
    InvalidToken { surface: String, reason: String },
    #[error("numeral {0:?} contains a non-digit character")]
    NonDigitNumeral(String),
    #[error("numeral {0:?} is out of range (max 999999999)")]
    NumeralOutOfRange(String),
    #[error("bad contraction line {line}: {reason}")]
    BadContractionLine { line: usize, reason: String },
    #[error("bad stop-word line {line}: {reason}")]
    BadStopWordLine { line: usize, reason: String },
}

const DEFAULT_STOP_WORDS: &str = include_str!("../data/stopwords.txt");
const DEFAULT_CONTRACTIONS: &str = include_str!("../data/contractions.tsv");

/// Normalization configuration: stop words, contraction table and
/// ASR failure markers ("null") that are dropped from token streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizeConfig {
    pub stop_words: BTreeSet<String>,
    pub contractions: BTreeMap<String, String>,
    pub remove_marker_tokens: BTreeSet<String>,
}

impl Default for NormalizeConfig {
    fn default() -> Self {
        let stop_words = parse_stop_word_file(DEFAULT_STOP_WORDS)
            .expect("embedded stop-word list is well formed");
        let contractions = parse_contraction_file(DEFAULT_CONTRACTIONS)
            .expect("embedded contraction table is well formed");
        let mut remove_marker_tokens = BTreeSet::new();
        remove_marker_tokens.insert("null".to_string());
        NormalizeConfig {
            stop_words,
            contractions,
            remove_marker_tokens,
        }
    }
}

impl NormalizeConfig {
    /// Hex SHA-256 over a canonical rendering of the configuration.
    /// Recorded in evaluation reports so runs are attributable to the
    /// exact stop-word/contraction/marker sets in effect.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(b"stopwords\n");
        for w in &self.stop_words {
            hasher.update(w.as_bytes());
            hasher.update(b"\n");
        }
        hasher.update(b"markers\n");
        for w in &self.remove_marker_tokens {
            hasher.update(w.as_bytes());
            hasher.update(b"\n");
        }
        hasher.update(b"contractions\n");
        for (k, v) in &self.contractions {
            hasher.update(k.as_bytes());
            hasher.update(b"\t");
            hasher.update(v.as_bytes());
            hasher.update(b"\n");
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Parse a stop-word override file: one lowercase word per line,
/// '#' comment lines ignored.
pub fn parse_stop_word_file(text: &str) -> Result<BTreeSet<String>, NormalizeError> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !line.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(NormalizeError::BadStopWordLine {
                line: i + 1,
                reason: format!("{line:?} is not a single lowercase word"),
            });
        }
        out.insert(line.to_string());
    }
    Ok(out)
}

/// Parse a contraction override file: `contracted<TAB>expansion` lines,
/// '#' comment lines ignored. Keys must contain an apostrophe and
/// expansions must not.
pub fn parse_contraction_file(
    text: &str,
) -> Result<BTreeMap<String, String>, NormalizeError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, expansion) = line.split_once('\t').ok_or_else(|| {
            NormalizeError::BadContractionLine {
                line: i + 1,
                reason: "missing tab separator".into(),
            }
        })?;
        if !key.contains('\'') {
            return Err(NormalizeError::BadContractionLine {
                line: i + 1,
                reason: format!("key {key:?} has no apostrophe"),
            });
        }
        if expansion.contains('\'') {
            return Err(NormalizeError::BadContractionLine {
                line: i + 1,
                reason: format!("expansion {expansion:?} has an apostrophe"),
            });
        }
        out.insert(key.to_lowercase(), expansion.to_lowercase());
    }
    Ok(out)
}

/// Largest integer the numeral converter spells out; longer digit runs
/// are spelled digit by digit.
pub const MAX_SPELLED_NUMERAL: u64 = 999_999_999;

const ONES: [&str; 20] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen",
];
const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety",
];

fn push_below_thousand(n: u64, words: &mut Vec<&'static str>) {
    debug_assert!(n < 1000);
    let mut n = n;
    if n >= 100 {
        words.push(ONES[(n / 100) as usize]);
        words.push("hundred");
        n %= 100;
        if n == 0 {
            return;
        }
    }
    if n >= 20 {
        words.push(TENS[(n / 10) as usize]);
        n %= 10;
        if n == 0 {
            return;
        }
    }
    words.push(ONES[n as usize]);
}

/// Spell a digit string as English cardinal words, lowercase, no
/// hyphens, no "and". Accepts integers in [0, 999999999].
pub fn number_to_words(numeral: &str) -> Result<Vec<Token>, NormalizeError> {
    if numeral.is_empty() || !numeral.bytes().all(|b| b.is_ascii_digit()) {
        return Err(NormalizeError::NonDigitNumeral(numeral.to_string()));
    }
    let n: u64 = numeral
        .parse()
        .map_err(|_| NormalizeError::NumeralOutOfRange(numeral.to_string()))?;
    if n > MAX_SPELLED_NUMERAL {
        return Err(NormalizeError::NumeralOutOfRange(numeral.to_string()));
    }
    let mut words = Vec::new();
    if n == 0 {
        words.push("zero");
    } else {
        let millions = n / 1_000_000;
        let thousands = (n / 1000) % 1000;
        let rest = n % 1000;
        if millions > 0 {
            push_below_thousand(millions, &mut words);
            words.push("million");
        }
        if thousands > 0 {
            push_below_thousand(thousands, &mut words);
            words.push("thousand");
        }
        if rest > 0 {
            push_below_thousand(rest, &mut words);
        }
    }
    Ok(words
        .into_iter()
        .map(|w| Token(w.to_string()))
        .collect())
}

fn expand_contractions(lowered: &str, config: &NormalizeConfig) -> String {
    let mut out = String::with_capacity(lowered.len());
    let mut chunk = String::new();
    let flush = |chunk: &mut String, out: &mut String| {
        if chunk.is_empty() {
            return;
        }
        match config.contractions.get(chunk.as_str()) {
            Some(expansion) => out.push_str(expansion),
            None => out.push_str(chunk),
        }
        chunk.clear();
    };
    for c in lowered.chars() {
        if c.is_ascii_alphanumeric() || c == '\'' {
            chunk.push(c);
        } else {
            flush(&mut chunk, &mut out);
            out.push(c);
        }
    }
    flush(&mut chunk, &mut out);
    out
}

/// Lowercase, expand contractions, then split into tokens. Maximal
/// letter runs become tokens; digit runs are spelled as number words
/// (digit by digit past [`MAX_SPELLED_NUMERAL`]); every other character
/// is a separator.
pub fn tokenize(raw_text: &str, config: &NormalizeConfig) -> Vec<Token> {
    let lowered = raw_text.to_lowercase().replace('\u{2019}', "'");
    let expanded = expand_contractions(&lowered, config);

    let mut tokens = Vec::new();
    let mut letters = String::new();
    let mut digits = String::new();
    let flush_letters = |letters: &mut String, tokens: &mut Vec<Token>| {
        if !letters.is_empty() {
            tokens.push(Token(std::mem::take(letters)));
        }
    };
    let flush_digits = |digits: &mut String, tokens: &mut Vec<Token>| {
        if digits.is_empty() {
            return;
        }
        match number_to_words(digits) {
            Ok(words) => tokens.extend(words),
            // out of spelling range: one word per digit
            Err(_) => {
                for d in digits.bytes() {
                    let mut one = String::new();
                    one.push(d as char);
                    tokens.extend(number_to_words(&one).expect("single digit"));
                }
            }
        }
        digits.clear();
    };
    for c in expanded.chars() {
        if c.is_ascii_lowercase() {
            flush_digits(&mut digits, &mut tokens);
            letters.push(c);
        } else if c.is_ascii_digit() {
            flush_letters(&mut letters, &mut tokens);
            digits.push(c);
        } else {
            flush_letters(&mut letters, &mut tokens);
            flush_digits(&mut digits, &mut tokens);
        }
    }
    flush_letters(&mut letters, &mut tokens);
    flush_digits(&mut digits, &mut tokens);
    tokens
}

/// Drop stop words and marker tokens, preserving order.
pub fn remove_stop_words(tokens: Vec<Token>, config: &NormalizeConfig) -> Vec<Token> {
    tokens
        .into_iter()
        .filter(|t| {
            !config.stop_words.contains(t.as_str())
                && !config.remove_marker_tokens.contains(t.as_str())
        })
        .collect()
}

/// Full normalization pipeline: tokenize then remove stop words.
pub fn normalize(
    raw_text: &str,
    config: &NormalizeConfig,
    source_id: impl Into<String>,
) -> NormalizedTranscript {
    let tokens = remove_stop_words(tokenize(raw_text, config), config);
    NormalizedTranscript {
        source_id: source_id.into(),
        tokens,
    }
}
