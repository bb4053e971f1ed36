//! CMU pronouncing dictionary parsing and word-to-phoneme lookup.
//!
//! Accepts the published `cmudict-0.7b` line format (`WORD  PH PH ...`,
//! alternates as `WORD(2)`, comments starting `;;;`) as well as the
//! lowercase single-space variant shipped with newer releases.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::str::FromStr;

use thiserror::Error;

use crate::text_normalize::Token;

/// The 39 ARPAbet base symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum BaseSymbol {
    AA, AE, AH, AO, AW, AY, B, CH, D, DH, EH, ER, EY, F, G, HH, IH, IY,
    JH, K, L, M, N, NG, OW, OY, P, R, S, SH, T, TH, UH, UW, V, W, Y, Z, ZH,
}

impl BaseSymbol {
    pub const ALL: [BaseSymbol; 39] = [
        BaseSymbol::AA, BaseSymbol::AE, BaseSymbol::AH, BaseSymbol::AO,
        BaseSymbol::AW, BaseSymbol::AY, BaseSymbol::B, BaseSymbol::CH,
        BaseSymbol::D, BaseSymbol::DH, BaseSymbol::EH, BaseSymbol::ER,
        BaseSymbol::EY, BaseSymbol::F, BaseSymbol::G, BaseSymbol::HH,
        BaseSymbol::IH, BaseSymbol::IY, BaseSymbol::JH, BaseSymbol::K,
        BaseSymbol::L, BaseSymbol::M, BaseSymbol::N, BaseSymbol::NG,
        BaseSymbol::OW, BaseSymbol::OY, BaseSymbol::P, BaseSymbol::R,
        BaseSymbol::S, BaseSymbol::SH, BaseSymbol::T, BaseSymbol::TH,
        BaseSymbol::UH, BaseSymbol::UW, BaseSymbol::V, BaseSymbol::W,
        BaseSymbol::Y, BaseSymbol::Z, BaseSymbol::ZH,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaseSymbol::AA => "AA", BaseSymbol::AE => "AE", BaseSymbol::AH => "AH",
            BaseSymbol::AO => "AO", BaseSymbol::AW => "AW", BaseSymbol::AY => "AY",
            BaseSymbol::B => "B", BaseSymbol::CH => "CH", BaseSymbol::D => "D",
            BaseSymbol::DH => "DH", BaseSymbol::EH => "EH", BaseSymbol::ER => "ER",
            BaseSymbol::EY => "EY", BaseSymbol::F => "F", BaseSymbol::G => "G",
            BaseSymbol::HH => "HH", BaseSymbol::IH => "IH", BaseSymbol::IY => "IY",
            BaseSymbol::JH => "JH", BaseSymbol::K => "K", BaseSymbol::L => "L",
            BaseSymbol::M => "M", BaseSymbol::N => "N", BaseSymbol::NG => "NG",
            BaseSymbol::OW => "OW", BaseSymbol::OY => "OY", BaseSymbol::P => "P",
            BaseSymbol::R => "R", BaseSymbol::S => "S", BaseSymbol::SH => "SH",
            BaseSymbol::T => "T",
            BaseSymbol::TH => "TH", BaseSymbol::UH => "UH", BaseSymbol::UW => "UW",
            BaseSymbol::V => "V", BaseSymbol::W => "W", BaseSymbol::Y => "Y",
            BaseSymbol::Z => "Z", BaseSymbol::ZH => "ZH",
        }
    }

    /// The 15 vowel symbols carry stress digits in dictionary entries.
    pub fn is_vowel(&self) -> bool {
        matches!(
            self,
            BaseSymbol::AA | BaseSymbol::AE | BaseSymbol::AH | BaseSymbol::AO
                | BaseSymbol::AW | BaseSymbol::AY | BaseSymbol::EH | BaseSymbol::ER
                | BaseSymbol::EY | BaseSymbol::IH | BaseSymbol::IY | BaseSymbol::OW
                | BaseSymbol::OY | BaseSymbol::UH | BaseSymbol::UW
        )
    }
}

impl FromStr for BaseSymbol {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        BaseSymbol::ALL
            .iter()
            .copied()
            .find(|b| b.as_str() == s)
            .ok_or(())
    }
}

impl fmt::Display for BaseSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Stress level attached to vowel symbols: 0 none, 1 primary, 2 secondary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stress {
    None,
    Primary,
    Secondary,
}

impl Stress {
    fn from_digit(d: u8) -> Option<Stress> {
        match d {
            b'0' => Some(Stress::None),
            b'1' => Some(Stress::Primary),
            b'2' => Some(Stress::Secondary),
            _ => None,
        }
    }

    pub fn digit(&self) -> char {
        match self {
            Stress::None => '0',
            Stress::Primary => '1',
            Stress::Secondary => '2',
        }
    }
}

/// One ARPAbet phoneme: a base symbol plus, for vowels, a stress digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phoneme {
    pub base: BaseSymbol,
    pub stress: Option<Stress>,
}

impl Phoneme {
    pub fn new(base: BaseSymbol, stress: Option<Stress>) -> Option<Phoneme> {
        if stress.is_some() && !base.is_vowel() {
            return None;
        }
        Some(Phoneme { base, stress })
    }
}

impl FromStr for Phoneme {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let bytes = s.as_bytes();
        if let Some(&last) = bytes.last() {
            if last.is_ascii_digit() {
                let base: BaseSymbol = s[..s.len() - 1].parse()?;
                let stress = Stress::from_digit(last).ok_or(())?;
                return Phoneme::new(base, Some(stress)).ok_or(());
            }
        }
        let base: BaseSymbol = s.parse()?;
        Ok(Phoneme { base, stress: None })
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.as_str())?;
        if let Some(s) = self.stress {
            write!(f, "{}", s.digit())?;
        }
        Ok(())
    }
}

/// One pronunciation variant of a word. Variant 1 is the primary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pronunciation {
    pub word: String,
    pub variant: u32,
    pub phonemes: Vec<Phoneme>,
}

impl Pronunciation {
    /// Canonical dictionary line form, e.g. `ABOUT  AH0 B AW1 T`.
    pub fn to_dict_line(&self) -> String {
        let mut line = self.word.to_uppercase();
        if self.variant > 1 {
            line.push_str(&format!("({})", self.variant));
        }
        line.push_str("  ");
        let syms: Vec<String> = self.phonemes.iter().map(|p| p.to_string()).collect();
        line.push_str(&syms.join(" "));
        line
    }
}

/// Counts from a parse run. Malformed lines are skipped, never fatal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub headwords: usize,
    pub pronunciations: usize,
    pub comment_lines: usize,
    pub skipped_lines: usize,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read dictionary: {0}")]
    Io(#[from] std::io::Error),
    #[error("empty lexicon: no entries could be parsed")]
    EmptyLexicon,
}

/// In-memory pronunciation lexicon, immutable after construction.
#[derive(Debug)]
pub struct Lexicon {
    entries: HashMap<String, Vec<Pronunciation>>,
}

impl Lexicon {
    /// Parse dictionary text from a byte stream.
    pub fn parse(reader: impl Read) -> Result<(Lexicon, ParseReport), LexiconError> {
        let mut report = ParseReport::default();
        let mut entries: HashMap<String, Vec<Pronunciation>> = HashMap::new();

        let mut reader = BufReader::new(reader);
        let mut buf = Vec::new();
        loop {
            buf.clear();
            let n = reader.read_until(b'\n', &mut buf)?;
            if n == 0 {
                break;
            }
            // decode permissively per line: undecodable lines are skipped
            let line = match std::str::from_utf8(&buf) {
                Ok(s) => s.trim_end_matches(['\n', '\r']),
                Err(_) => {
                    report.skipped_lines += 1;
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with(";;;") {
                report.comment_lines += 1;
                continue;
            }
            // a few releases carry trailing "# ..." annotations
            let line = match line.find(" #") {
                Some(pos) => &line[..pos],
                None => line,
            };
            match parse_entry_line(line, &entries) {
                Some(pron) => {
                    report.pronunciations += 1;
                    let variants = entries.entry(pron.word.clone()).or_default();
                    if variants.is_empty() {
                        report.headwords += 1;
                    }
                    variants.push(pron);
                }
                None => report.skipped_lines += 1,
            }
        }
        if entries.is_empty() {
            return Err(LexiconError::EmptyLexicon);
        }
        Ok((Lexicon { entries }, report))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    /// Primary (variant 1) pronunciation, or `None` when out of
    /// vocabulary.
    pub fn lookup(&self, word: &str) -> Option<&Pronunciation> {
        self.entries.get(word).and_then(|v| v.first())
    }

    /// All parsed variants of a word, primary first.
    pub fn variants(&self, word: &str) -> Option<&[Pronunciation]> {
        self.entries.get(word).map(|v| v.as_slice())
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }
}

/// Parse one `WORD(n)  PH PH ...` line. Returns `None` for malformed
/// lines: unknown phoneme symbols, stress on consonants, bad alternate
/// indices, alternates without a base entry, or non-ASCII headwords.
fn parse_entry_line(
    line: &str,
    entries: &HashMap<String, Vec<Pronunciation>>,
) -> Option<Pronunciation> {
    let mut fields = line.split_whitespace();
    let headword = fields.next()?;
    if !headword.is_ascii() {
        return None;
    }
    let (word, variant) = match headword.find('(') {
        Some(pos) => {
            let idx = headword[pos..]
                .strip_prefix('(')?
                .strip_suffix(')')?
                .parse::<u32>()
                .ok()?;
            if idx < 2 {
                return None;
            }
            (headword[..pos].to_lowercase(), idx)
        }
        None => (headword.to_lowercase(), 1),
    };
    if word.is_empty() {
        return None;
    }
    let existing = entries.get(&word);
    match existing {
        // alternates must follow a base entry and use a fresh index
        Some(v) => {
            if v.iter().any(|p| p.variant == variant) {
                return None;
            }
        }
        None => {
            if variant != 1 {
                return None;
            }
        }
    }
    let mut phonemes = Vec::new();
    for field in fields {
        phonemes.push(field.parse::<Phoneme>().ok()?);
    }
    if phonemes.is_empty() {
        return None;
    }
    Some(Pronunciation {
        word,
        variant,
        phonemes,
    })
}

/// Drop stress digits, keeping base symbols in order.
pub fn strip_stress(phonemes: &[Phoneme]) -> Vec<BaseSymbol> {
    phonemes.iter().map(|p| p.base).collect()
}

/// Concatenated base-symbol stream for a token sequence, plus the count
/// of out-of-vocabulary tokens (which contribute nothing).
pub fn phonemize_tokens(tokens: &[Token], lexicon: &Lexicon) -> (Vec<BaseSymbol>, usize) {
    let mut stream = Vec::new();
    let mut oov = 0;
    for token in tokens {
        match lexicon.lookup(token.as_str()) {
            Some(pron) => stream.extend(strip_stress(&pron.phonemes)),
            None => oov += 1,
        }
    }
    (stream, oov)
}
