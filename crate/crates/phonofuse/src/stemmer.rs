//! Classic Porter suffix-stripping stemmer (the 1980 rule set, all
//! steps 1a through 5b). Words of length <= 2 pass through unchanged.

/// A stemmed word. Always lowercase; never longer than its source for
/// inputs longer than two letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stem(String);

impl Stem {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for Stem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_consonant(word: &[u8], i: usize) -> bool {
    match word[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(word, i - 1),
        _ => true,
    }
}

/// Porter's m: the number of VC sequences in the word's [C](VC)^m[V]
/// consonant/vowel form.
pub fn measure(word: &str) -> usize {
    measure_bytes(word.as_bytes())
}

fn measure_bytes(word: &[u8]) -> usize {
    let mut m = 0;
    let mut in_vowel_run = false;
    for i in 0..word.len() {
        let cons = is_consonant(word, i);
        if in_vowel_run && cons {
            m += 1;
        }
        in_vowel_run = !cons;
    }
    m
}

fn contains_vowel(word: &[u8]) -> bool {
    (0..word.len()).any(|i| !is_consonant(word, i))
}

fn ends_double_consonant(word: &[u8]) -> bool {
    let n = word.len();
    n >= 2 && word[n - 1] == word[n - 2] && is_consonant(word, n - 1)
}

/// *o: ends consonant-vowel-consonant where the final consonant is not
/// w, x or y.
fn ends_cvc(word: &[u8]) -> bool {
    let n = word.len();
    n >= 3
        && is_consonant(word, n - 3)
        && !is_consonant(word, n - 2)
        && is_consonant(word, n - 1)
        && !matches!(word[n - 1], b'w' | b'x' | b'y')
}

#[derive(Clone, Copy)]
enum Cond {
    Always,
    MeasureGt0,
    MeasureGt1,
    /// m > 1 and the stem ends in s or t (step 4's "ion" rule)
    MeasureGt1EndsST,
}

impl Cond {
    fn holds(self, stem: &[u8]) -> bool {
        match self {
            Cond::Always => true,
            Cond::MeasureGt0 => measure_bytes(stem) > 0,
            Cond::MeasureGt1 => measure_bytes(stem) > 1,
            Cond::MeasureGt1EndsST => {
                measure_bytes(stem) > 1
                    && matches!(stem.last(), Some(b's') | Some(b't'))
            }
        }
    }
}

/// Apply the longest-matching rule of a step. Per Porter, if the
/// longest matching suffix fails its condition no other rule in the
/// step fires.
fn apply_rules(word: &mut Vec<u8>, rules: &[(&str, &str, Cond)]) {
    let mut hit: Option<(&str, &str, Cond)> = None;
    for &(suffix, repl, cond) in rules {
        if word.ends_with(suffix.as_bytes())
            && hit.map_or(true, |(s, _, _)| suffix.len() > s.len())
        {
            hit = Some((suffix, repl, cond));
        }
    }
    if let Some((suffix, repl, cond)) = hit {
        let stem_len = word.len() - suffix.len();
        if cond.holds(&word[..stem_len]) {
            word.truncate(stem_len);
            word.extend_from_slice(repl.as_bytes());
        }
    }
}

fn step_1a(word: &mut Vec<u8>) {
    apply_rules(
        word,
        &[
            ("sses", "ss", Cond::Always),
            ("ies", "i", Cond::Always),
            ("ss", "ss", Cond::Always),
            ("s", "", Cond::Always),
        ],
    );
}

fn step_1b(word: &mut Vec<u8>) {
    if word.ends_with(b"eed") {
        if measure_bytes(&word[..word.len() - 3]) > 0 {
            word.pop();
        }
        return;
    }
    let fired = if word.ends_with(b"ed") && contains_vowel(&word[..word.len() - 2]) {
        word.truncate(word.len() - 2);
        true
    } else if word.ends_with(b"ing") && contains_vowel(&word[..word.len() - 3]) {
        word.truncate(word.len() - 3);
        true
    } else {
        false
    };
    if !fired {
        return;
    }
    if word.ends_with(b"at") || word.ends_with(b"bl") || word.ends_with(b"iz") {
        word.push(b'e');
    } else if ends_double_consonant(word)
        && !matches!(word.last(), Some(b'l') | Some(b's') | Some(b'z'))
    {
        word.pop();
    } else if measure_bytes(word) == 1 && ends_cvc(word) {
        word.push(b'e');
    }
}

fn step_1c(word: &mut Vec<u8>) {
    if word.ends_with(b"y") && contains_vowel(&word[..word.len() - 1]) {
        let n = word.len();
        word[n - 1] = b'i';
    }
}

fn step_2(word: &mut Vec<u8>) {
    apply_rules(
        word,
        &[
            ("ational", "ate", Cond::MeasureGt0),
            ("tional", "tion", Cond::MeasureGt0),
            ("enci", "ence", Cond::MeasureGt0),
            ("anci", "ance", Cond::MeasureGt0),
            ("izer", "ize", Cond::MeasureGt0),
            ("abli", "able", Cond::MeasureGt0),
            ("alli", "al", Cond::MeasureGt0),
            ("entli", "ent", Cond::MeasureGt0),
            ("eli", "e", Cond::MeasureGt0),
            ("ousli", "ous", Cond::MeasureGt0),
            ("ization", "ize", Cond::MeasureGt0),
            ("ation", "ate", Cond::MeasureGt0),
            ("ator", "ate", Cond::MeasureGt0),
            ("alism", "al", Cond::MeasureGt0),
            ("iveness", "ive", Cond::MeasureGt0),
            ("fulness", "ful", Cond::MeasureGt0),
            ("ousness", "ous", Cond::MeasureGt0),
            ("aliti", "al", Cond::MeasureGt0),
            ("iviti", "ive", Cond::MeasureGt0),
            ("biliti", "ble", Cond::MeasureGt0),
        ],
    );
}

fn step_3(word: &mut Vec<u8>) {
    apply_rules(
        word,
        &[
            ("icate", "ic", Cond::MeasureGt0),
            ("ative", "", Cond::MeasureGt0),
            ("alize", "al", Cond::MeasureGt0),
            ("iciti", "ic", Cond::MeasureGt0),
            ("ical", "ic", Cond::MeasureGt0),
            ("ful", "", Cond::MeasureGt0),
            ("ness", "", Cond::MeasureGt0),
        ],
    );
}

fn step_4(word: &mut Vec<u8>) {
    apply_rules(
        word,
        &[
            ("al", "", Cond::MeasureGt1),
            ("ance", "", Cond::MeasureGt1),
            ("ence", "", Cond::MeasureGt1),
            ("er", "", Cond::MeasureGt1),
            ("ic", "", Cond::MeasureGt1),
            ("able", "", Cond::MeasureGt1),
            ("ible", "", Cond::MeasureGt1),
            ("ant", "", Cond::MeasureGt1),
            ("ement", "", Cond::MeasureGt1),
            ("ment", "", Cond::MeasureGt1),
            ("ent", "", Cond::MeasureGt1),
            ("ion", "", Cond::MeasureGt1EndsST),
            ("ou", "", Cond::MeasureGt1),
            ("ism", "", Cond::MeasureGt1),
            ("ate", "", Cond::MeasureGt1),
            ("iti", "", Cond::MeasureGt1),
            ("ous", "", Cond::MeasureGt1),
            ("ive", "", Cond::MeasureGt1),
            ("ize", "", Cond::MeasureGt1),
        ],
    );
}

fn step_5a(word: &mut Vec<u8>) {
    if word.ends_with(b"e") {
        let stem = &word[..word.len() - 1];
        let m = measure_bytes(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            word.pop();
        }
    }
}

fn step_5b(word: &mut Vec<u8>) {
    if measure_bytes(word) > 1
        && ends_double_consonant(word)
        && word.ends_with(b"l")
    {
        word.pop();
    }
}

/// Stem a lowercase word. Assumes clean letter-only input (enforced
/// upstream by the token invariant).
pub fn stem(word: &str) -> Stem {
    debug_assert!(word.bytes().all(|b| b.is_ascii_lowercase()));
    if word.len() <= 2 {
        return Stem(word.to_string());
    }
    let mut w = word.as_bytes().to_vec();
    step_1a(&mut w);
    step_1b(&mut w);
    step_1c(&mut w);
    step_2(&mut w);
    step_3(&mut w);
    step_4(&mut w);
    step_5a(&mut w);
    step_5b(&mut w);
    Stem(String::from_utf8(w).expect("ascii transformations"))
}
