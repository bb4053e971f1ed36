//! Detection channels and their decision-level fusion.
//!
//! Four channels run per transcript/keyword pair: the exact-token
//! sliding-window baseline, stem matching, and the two phoneme-pruning
//! stages (vowel+plosive, vowel+fricative). Fusion is the OR of the
//! three non-baseline channels; the baseline is reported alongside for
//! comparison.

use std::fmt;

use thiserror::Error;

use crate::phonology::{phonemize_stream, prune, ClassSet, PrunedPattern};
use crate::pronlex::{strip_stress, Lexicon};
use crate::stemmer::stem;
use crate::text_normalize::{
    normalize, NormalizeConfig, NormalizedTranscript, Token,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Baseline,
    Stem,
    VowelPlosive,
    VowelFricative,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::Baseline,
        Channel::Stem,
        Channel::VowelPlosive,
        Channel::VowelFricative,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Channel::Baseline => "baseline",
            Channel::Stem => "stem",
            Channel::VowelPlosive => "vowel_plosive",
            Channel::VowelFricative => "vowel_fricative",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One channel's verdict. `available == false` forces count 0 and
/// detected false (a phoneme channel is unavailable when the keyword is
/// OOV or its pruned needle is empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelResult {
    pub channel: Channel,
    pub count: usize,
    pub detected: bool,
    pub available: bool,
}

impl ChannelResult {
    fn hit(channel: Channel, count: usize) -> ChannelResult {
        ChannelResult {
            channel,
            count,
            detected: count >= 1,
            available: true,
        }
    }

    fn unavailable(channel: Channel) -> ChannelResult {
        ChannelResult {
            channel,
            count: 0,
            detected: false,
            available: false,
        }
    }
}

/// Per-transcript detection result across all channels plus fusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionOutcome {
    pub keyword: String,
    pub source_id: String,
    pub baseline: ChannelResult,
    pub stem: ChannelResult,
    pub vowel_plosive: ChannelResult,
    pub vowel_fricative: ChannelResult,
    pub fused_detected: bool,
    pub oov_count: usize,
}

impl DetectionOutcome {
    pub fn channel(&self, channel: Channel) -> &ChannelResult {
        match channel {
            Channel::Baseline => &self.baseline,
            Channel::Stem => &self.stem,
            Channel::VowelPlosive => &self.vowel_plosive,
            Channel::VowelFricative => &self.vowel_fricative,
        }
    }
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("invalid keyword {keyword:?}: {reason}")]
    InvalidKeyword { keyword: String, reason: String },
}

/// Number of tokens exactly equal to the keyword.
pub fn baseline_count(tokens: &[Token], keyword: &str) -> usize {
    tokens.iter().filter(|t| t.as_str() == keyword).count()
}

/// Number of tokens sharing the keyword's Porter stem.
pub fn stem_count(transcript: &NormalizedTranscript, keyword: &str) -> usize {
    let target = stem(keyword);
    transcript
        .tokens
        .iter()
        .filter(|t| stem(t.as_str()) == target)
        .count()
}

/// Non-overlapping occurrences of `needle` as a contiguous symbol run
/// in `stream`, scanning left to right and resuming after each match.
pub fn pattern_count(stream: &PrunedPattern, needle: &PrunedPattern) -> usize {
    if needle.is_empty() {
        return 0;
    }
    let hay = &stream.symbols;
    let pat = &needle.symbols;
    let mut count = 0;
    let mut i = 0;
    while i + pat.len() <= hay.len() {
        if &hay[i..i + pat.len()] == pat.as_slice() {
            count += 1;
            i += pat.len();
        } else {
            i += 1;
        }
    }
    count
}

/// Normalize a raw keyword through the same lowercase/contraction path
/// as transcripts. Rejects keywords that vanish, split into several
/// tokens, or land in the stop-word set.
pub fn normalize_keyword(
    raw: &str,
    config: &NormalizeConfig,
) -> Result<Token, MatchError> {
    let err = |reason: &str| MatchError::InvalidKeyword {
        keyword: raw.to_string(),
        reason: reason.to_string(),
    };
    let tokens = crate::text_normalize::tokenize(raw, config);
    match tokens.as_slice() {
        [] => Err(err("normalizes to no tokens")),
        [token] => {
            if config.stop_words.contains(token.as_str())
                || config.remove_marker_tokens.contains(token.as_str())
            {
                Err(err("normalizes to a stop word or marker"))
            } else {
                Ok(token.clone())
            }
        }
        _ => Err(err("normalizes to more than one token")),
    }
}

/// Run all four channels and fuse the three non-baseline decisions.
pub fn detect(
    transcript: &NormalizedTranscript,
    keyword: &str,
    lexicon: &Lexicon,
    config: &NormalizeConfig,
) -> Result<DetectionOutcome, MatchError> {
    let keyword = normalize_keyword(keyword, config)?;

    let baseline =
        ChannelResult::hit(Channel::Baseline, baseline_count(&transcript.tokens, keyword.as_str()));
    let stem_res = ChannelResult::hit(Channel::Stem, stem_count(transcript, keyword.as_str()));

    let (stream, oov_count) = phonemize_stream(transcript, lexicon);
    let keyword_bases = lexicon
        .lookup(keyword.as_str())
        .map(|pron| strip_stress(&pron.phonemes));

    let stage = |channel: Channel, classes: &ClassSet| match &keyword_bases {
        None => ChannelResult::unavailable(channel),
        Some(bases) => {
            let needle = prune(bases, classes);
            if needle.is_empty() {
                ChannelResult::unavailable(channel)
            } else {
                let haystack = prune(&stream, classes);
                ChannelResult::hit(channel, pattern_count(&haystack, &needle))
            }
        }
    };
    let vowel_plosive = stage(Channel::VowelPlosive, &ClassSet::vowel_plosive());
    let vowel_fricative = stage(Channel::VowelFricative, &ClassSet::vowel_fricative());

    let fused_detected =
        stem_res.detected || vowel_plosive.detected || vowel_fricative.detected;

    Ok(DetectionOutcome {
        keyword: keyword.as_str().to_string(),
        source_id: transcript.source_id.clone(),
        baseline,
        stem: stem_res,
        vowel_plosive,
        vowel_fricative,
        fused_detected,
        oov_count,
    })
}

/// Convenience: normalize raw text then detect.
pub fn detect_raw(
    raw_text: &str,
    keyword: &str,
    lexicon: &Lexicon,
    config: &NormalizeConfig,
    source_id: &str,
) -> Result<DetectionOutcome, MatchError> {
    let transcript = normalize(raw_text, config, source_id);
    detect(&transcript, keyword, lexicon, config)
}
