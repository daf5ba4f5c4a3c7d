//! Text normalization: sentence segmentation, word tokenization, syllable
//! counting, surface statistics and frequency spectra.
//!
//! Everything here is rule-based and deterministic. Type/token measures work on
//! case-folded tokens; character counts for readability use the raw tokens.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};

/// Abbreviations whose trailing period does not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "e.g", "i.e", "cf", "mt", "approx",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-' | '\u{2010}')
}

/// Splits raw text into sentences on `.`, `!` or `?` followed by whitespace or
/// end of input. A lone period after a known abbreviation is not a boundary.
/// A trailing fragment without a terminator is kept as the last sentence.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (_, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        let run_start = i;
        while i < chars.len() && is_terminator(chars[i].1) {
            i += 1;
        }
        let run_len = i - run_start;
        while i < chars.len() && is_closer(chars[i].1) {
            i += 1;
        }
        let at_boundary = i == chars.len() || chars[i].1.is_whitespace();
        if !at_boundary {
            continue;
        }
        if run_len == 1 && chars[run_start].1 == '.' && follows_abbreviation(text, chars[run_start].0) {
            continue;
        }
        let end = if i == chars.len() { text.len() } else { chars[i].0 };
        push_trimmed(&mut sentences, &text[start..end]);
        start = end;
    }
    push_trimmed(&mut sentences, &text[start..]);
    sentences
}

fn push_trimmed(out: &mut Vec<String>, piece: &str) {
    let piece = piece.trim();
    if !piece.is_empty() {
        out.push(piece.to_string());
    }
}

fn follows_abbreviation(text: &str, period_byte: usize) -> bool {
    let before = &text[..period_byte];
    let word = before
        .rsplit(|c: char| c.is_whitespace() || c == '(' || c == '"')
        .next()
        .unwrap_or("");
    if word.is_empty() {
        return false;
    }
    let lower = word.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

/// Word tokens grouped by sentence, with per-sentence punctuation counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedText {
    tokens: Vec<String>,
    sentence_lengths: Vec<usize>,
    punctuation: Vec<usize>,
    case_folded: bool,
}

impl TokenizedText {
    /// Builds a tokenized text from pre-split sentences. Empty sentences are dropped.
    pub fn from_sentences<S: AsRef<str>>(sentences: &[Vec<S>], case_folded: bool) -> Self {
        let mut tokens = Vec::new();
        let mut sentence_lengths = Vec::new();
        for sentence in sentences {
            let words: Vec<String> = sentence
                .iter()
                .map(|w| w.as_ref().to_string())
                .filter(|w| !w.is_empty())
                .collect();
            if words.is_empty() {
                continue;
            }
            sentence_lengths.push(words.len());
            tokens.extend(words);
        }
        let punctuation = vec![0; sentence_lengths.len()];
        TokenizedText {
            tokens,
            sentence_lengths,
            punctuation,
            case_folded,
        }
    }

    /// All word tokens, in text order.
    pub fn word_tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn sentences(&self) -> impl Iterator<Item = &[String]> + '_ {
        let mut offset = 0;
        self.sentence_lengths.iter().map(move |&len| {
            let s = &self.tokens[offset..offset + len];
            offset += len;
            s
        })
    }

    pub fn sentence_count(&self) -> usize {
        self.sentence_lengths.len()
    }

    pub fn punctuation_per_sentence(&self) -> &[usize] {
        &self.punctuation
    }

    pub fn punctuation_count(&self) -> usize {
        self.punctuation.iter().sum()
    }

    pub fn is_case_folded(&self) -> bool {
        self.case_folded
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Tokenizes raw text into words: maximal runs of letters and digits, with
/// apostrophes and hyphens kept when they sit between two such characters.
/// Every other non-space character counts as punctuation for its sentence.
pub fn tokenize(text: &str, case_fold: bool) -> TokenizedText {
    let mut tokens = Vec::new();
    let mut sentence_lengths = Vec::new();
    let mut punctuation: Vec<usize> = Vec::new();
    let mut orphan_punct = 0usize;

    for sentence in split_sentences(text) {
        let (words, punct) = tokenize_sentence(&sentence, case_fold);
        if words.is_empty() {
            match punctuation.last_mut() {
                Some(last) => *last += punct,
                None => orphan_punct += punct,
            }
            continue;
        }
        sentence_lengths.push(words.len());
        punctuation.push(punct + std::mem::take(&mut orphan_punct));
        tokens.extend(words);
    }

    TokenizedText {
        tokens,
        sentence_lengths,
        punctuation,
        case_folded: case_fold,
    }
}

fn tokenize_sentence(sentence: &str, case_fold: bool) -> (Vec<String>, usize) {
    let chars: Vec<char> = sentence.chars().collect();
    let mut words = Vec::new();
    let mut punct = 0usize;
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            push_char(&mut current, c, case_fold);
        } else if is_joiner(c) && !current.is_empty() && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()) {
            current.push(c);
        } else {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            if !c.is_whitespace() {
                punct += 1;
            }
        }
    }
    if !current.is_empty() {
        words.push(current);
    }
    (words, punct)
}

// Lowercasing can introduce combining marks (e.g. U+0130); only word
// characters are kept so folded tokens re-tokenize to themselves.
fn push_char(out: &mut String, c: char, case_fold: bool) {
    if case_fold {
        out.extend(c.to_lowercase().filter(|l| l.is_alphanumeric()));
    } else {
        out.push(c);
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count: vowel groups (a, e, i, o, u, y), minus one for a
/// silent final `e` unless the word ends in consonant + `le`. Never below 1.
pub fn count_syllables(word: &str) -> usize {
    let lower: Vec<char> = word.to_lowercase().chars().collect();
    let mut groups = 0usize;
    let mut in_group = false;
    for &c in &lower {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
            }
            in_group = true;
        } else {
            in_group = false;
        }
    }

    let n = lower.len();
    let is_consonant = |c: char| c.is_alphabetic() && !is_vowel(c);
    if n >= 2 && lower[n - 1] == 'e' && is_consonant(lower[n - 2]) {
        let consonant_le = lower[n - 2] == 'l' && n >= 3 && is_consonant(lower[n - 3]);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    groups.max(1)
}

/// Type and token counts plus the frequency-of-frequency table of a text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencySpectrum {
    pub tokens: usize,
    pub types: usize,
    pub freq_of_type: BTreeMap<String, usize>,
    /// Frequency X -> number of types occurring exactly X times.
    pub freq_of_freq: BTreeMap<usize, usize>,
}

impl FrequencySpectrum {
    /// Counts case-folded tokens.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Self {
        let mut freq_of_type: BTreeMap<String, usize> = BTreeMap::new();
        for t in tokens {
            *freq_of_type.entry(t.as_ref().to_lowercase()).or_default() += 1;
        }
        let mut freq_of_freq: BTreeMap<usize, usize> = BTreeMap::new();
        for &count in freq_of_type.values() {
            *freq_of_freq.entry(count).or_default() += 1;
        }
        FrequencySpectrum {
            tokens: tokens.len(),
            types: freq_of_type.len(),
            freq_of_type,
            freq_of_freq,
        }
    }
}

pub fn frequency_spectrum(tt: &TokenizedText) -> FrequencySpectrum {
    FrequencySpectrum::from_tokens(tt.word_tokens())
}

/// A case-folded word list, one word per line in its file form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordList {
    words: HashSet<String>,
}

impl WordList {
    /// Parses the plain-text list format: one word per line, `#` lines ignored.
    pub fn parse(contents: &str) -> Self {
        let words = contents
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        WordList { words }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&contents))
    }

    /// Small list of very common English words shipped with the crate.
    pub fn basic_english() -> Self {
        Self::parse(include_str!("../data/basic_words.txt"))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for WordList {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        WordList {
            words: iter.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }
}

/// Counts feeding the readability formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SurfaceStats {
    pub words: usize,
    pub sentences: usize,
    pub characters_in_words: usize,
    pub syllables: usize,
    pub one_syllable_words: usize,
    pub words_gt6_chars: usize,
    pub words_gt2_syllables: usize,
    /// Words outside the Dale-Chall familiar list.
    pub difficult_words: usize,
    /// Words outside the Spache familiar list.
    pub unfamiliar_words: usize,
}

pub fn surface_stats(tt: &TokenizedText, dale_familiar: &WordList, spache_familiar: &WordList) -> SurfaceStats {
    let mut stats = SurfaceStats {
        words: tt.len(),
        sentences: tt.sentence_count(),
        ..Default::default()
    };
    for word in tt.word_tokens() {
        let chars = word.chars().filter(|c| c.is_alphanumeric()).count();
        let syllables = count_syllables(word);
        stats.characters_in_words += chars;
        stats.syllables += syllables;
        if syllables == 1 {
            stats.one_syllable_words += 1;
        }
        if syllables > 2 {
            stats.words_gt2_syllables += 1;
        }
        if chars > 6 {
            stats.words_gt6_chars += 1;
        }
        if !dale_familiar.contains(word) {
            stats.difficult_words += 1;
        }
        if !spache_familiar.contains(word) {
            stats.unfamiliar_words += 1;
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_terminators() {
        assert_eq!(split_sentences("I run. You run!"), vec!["I run.", "You run!"]);
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   ").is_empty());
    }

    #[test]
    fn abbreviation_guard() {
        let s = split_sentences("Mr. Smith left. He ran.");
        assert_eq!(s, vec!["Mr. Smith left.", "He ran."]);
    }

    #[test]
    fn trailing_fragment_and_decimals() {
        assert_eq!(
            split_sentences("It costs 3.5 euros. and then"),
            vec!["It costs 3.5 euros.", "and then"]
        );
        assert_eq!(split_sentences("Really?! Yes."), vec!["Really?!", "Yes."]);
        assert_eq!(
            split_sentences("He said \"stop.\" Then left."),
            vec!["He said \"stop.\"", "Then left."]
        );
    }

    #[test]
    fn tokenizer_rules() {
        let tt = tokenize("Don't stop.", true);
        assert_eq!(tt.word_tokens(), ["don't", "stop"]);
        assert_eq!(tokenize("state-of-the-art", false).word_tokens(), ["state-of-the-art"]);
        let tt = tokenize("Hello, world!!", false);
        assert_eq!(tt.len(), 2);
        assert_eq!(tt.punctuation_count(), 3);
    }

    #[test]
    fn leading_and_trailing_joiners_are_punctuation() {
        let tt = tokenize("'quoted' -dash- rock-", false);
        assert_eq!(tt.word_tokens(), ["quoted", "dash", "rock"]);
        assert_eq!(tt.punctuation_count(), 5);
    }

    #[test]
    fn numerals_are_words() {
        let tt = tokenize("In 2019 it cost 25 euros.", false);
        assert_eq!(tt.len(), 6);
    }

    #[test]
    fn punctuation_only_sentences_fold_into_neighbours() {
        let tt = tokenize("Yes. !!! No.", false);
        assert_eq!(tt.sentence_count(), 2);
        assert_eq!(tt.punctuation_per_sentence(), [4, 1]);
    }

    #[test]
    fn syllables() {
        assert_eq!(count_syllables("cat"), 1);
        assert_eq!(count_syllables("little"), 2);
        assert_eq!(count_syllables("readable"), 3);
        assert_eq!(count_syllables("the"), 1);
        assert_eq!(count_syllables("make"), 1);
        assert_eq!(count_syllables("smile"), 1);
        assert_eq!(count_syllables("agree"), 2);
        assert_eq!(count_syllables("rhythm"), 1);
        assert_eq!(count_syllables("2019"), 1);
        assert_eq!(count_syllables("Beautiful"), 3);
    }

    #[test]
    fn spectrum_examples() {
        let fs = FrequencySpectrum::from_tokens(&["a", "b", "a"]);
        assert_eq!((fs.tokens, fs.types), (3, 2));
        assert_eq!(fs.freq_of_freq, BTreeMap::from([(1, 1), (2, 1)]));

        let empty: [&str; 0] = [];
        let fs = FrequencySpectrum::from_tokens(&empty);
        assert_eq!((fs.tokens, fs.types), (0, 0));

        let distinct: Vec<String> = (0..100).map(|i| format!("w{i}")).collect();
        let fs = FrequencySpectrum::from_tokens(&distinct);
        assert_eq!(fs.freq_of_freq, BTreeMap::from([(1, 100)]));
    }

    #[test]
    fn spectrum_folds_case() {
        let fs = FrequencySpectrum::from_tokens(&["The", "the", "THE"]);
        assert_eq!(fs.types, 1);
    }

    #[test]
    fn word_list_format() {
        let list = WordList::parse("# header\nthe\n\n  Cat \n#dog\n");
        assert_eq!(list.len(), 2);
        assert!(list.contains("CAT"));
        assert!(!list.contains("dog"));
        assert!(WordList::basic_english().contains("the"));
    }

    #[test]
    fn surface_word_list_counts() {
        let familiar: WordList = ["the", "cat"].into_iter().collect();
        let ss = surface_stats(&tokenize("The cat.", false), &familiar, &familiar);
        assert_eq!(ss.difficult_words, 0);

        let familiar: WordList = ["the"].into_iter().collect();
        let ss = surface_stats(&tokenize("xylophone", false), &familiar, &familiar);
        assert_eq!(ss.difficult_words, 1);
        assert_eq!(ss.unfamiliar_words, 1);
    }

    #[test]
    fn surface_counts_match_membership() {
        let text = "The big dog saw a red ball and the small cat ran.";
        let dale: WordList = ["the", "a", "and", "dog", "cat"].into_iter().collect();
        let spache: WordList = ["the", "big", "small"].into_iter().collect();
        let tt = tokenize(text, false);
        let ss = surface_stats(&tt, &dale, &spache);
        let dale_set = ["the", "a", "and", "dog", "cat"];
        let spache_set = ["the", "big", "small"];
        let lowered: Vec<String> = tt.word_tokens().iter().map(|w| w.to_lowercase()).collect();
        let difficult = lowered.iter().filter(|w| !dale_set.contains(&w.as_str())).count();
        let unfamiliar = lowered.iter().filter(|w| !spache_set.contains(&w.as_str())).count();
        assert_eq!(ss.words, 12);
        assert_eq!(ss.difficult_words, difficult);
        assert_eq!(ss.unfamiliar_words, unfamiliar);
        assert_eq!(difficult, 6);
        assert_eq!(unfamiliar, 8);
    }

    #[test]
    fn surface_raw_character_counts() {
        let ss = surface_stats(
            &tokenize("The cat sat. Dogs bark.", false),
            &WordList::default(),
            &WordList::default(),
        );
        assert_eq!((ss.words, ss.sentences, ss.characters_in_words), (5, 2, 17));
        assert_eq!(ss.one_syllable_words, 5);
    }
}
