//! phonofuse: keyword recognition in highly imperfect speech
//! transcripts.
//!
//! Recognition fuses three unsupervised channels over a normalized
//! transcript: Porter-stem matching and two phoneme-pruning stages
//! (vowel+plosive and vowel+fricative patterns looked up through the
//! CMU pronouncing dictionary). A keyword counts as recognized when any
//! channel detects it; an exact-token sliding-window baseline is
//! reported alongside for comparison.

pub mod cli;
pub mod eval;
pub mod matcher;
pub mod phonology;
pub mod pronlex;
pub mod stemmer;
pub mod text_normalize;

pub use matcher::{detect, detect_raw, Channel, ChannelResult, DetectionOutcome};
pub use phonology::{classify, prune, ClassSet, PhonemeClass, PrunedPattern};
pub use pronlex::{BaseSymbol, Lexicon, Phoneme, Pronunciation};
pub use stemmer::{stem, Stem};
pub use text_normalize::{normalize, NormalizeConfig, NormalizedTranscript, Token};
