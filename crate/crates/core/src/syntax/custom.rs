use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AnnotatedDoc;
use crate::error::{Error, Result};

/// The 17 universal part-of-speech tags.
pub const UPOS_TAGS: [&str; 17] = [
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN", "PUNCT", "SCONJ",
    "SYM", "VERB", "X",
];

/// The 37 universal dependency relations (subtypes fold into these).
pub const UD_RELATIONS: [&str; 37] = [
    "acl",
    "advcl",
    "advmod",
    "amod",
    "appos",
    "aux",
    "case",
    "cc",
    "ccomp",
    "clf",
    "compound",
    "conj",
    "cop",
    "csubj",
    "dep",
    "det",
    "discourse",
    "dislocated",
    "expl",
    "fixed",
    "flat",
    "goeswith",
    "iobj",
    "list",
    "mark",
    "nmod",
    "nsubj",
    "nummod",
    "obj",
    "obl",
    "orphan",
    "parataxis",
    "punct",
    "reparandum",
    "root",
    "vocative",
    "xcomp",
];

pub const ZIPF_BANDS: usize = 7;

/// Word -> Zipf-scale frequency, read from `word<TAB>zipf` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZipfLexicon {
    values: HashMap<String, f64>,
}

impl ZipfLexicon {
    pub fn parse(contents: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (i, line) in contents.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Line { line: i + 1, message };
            let (word, value) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected word<TAB>zipf".into()))?;
            let zipf: f64 = value
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad zipf value {value:?}")))?;
            if !zipf.is_finite() {
                return Err(bad(format!("non-finite zipf value {value:?}")));
            }
            values.insert(word.trim().to_lowercase(), zipf);
        }
        Ok(ZipfLexicon { values })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&contents)
    }

    pub fn get(&self, word: &str) -> Option<f64> {
        self.values.get(&word.to_lowercase()).copied()
    }

    /// Band 1..=7: the floor of the Zipf value, clamped.
    pub fn band(zipf: f64) -> usize {
        (zipf.floor() as i64).clamp(1, ZIPF_BANDS as i64) as usize
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for ZipfLexicon {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        ZipfLexicon {
            values: iter.into_iter().map(|(w, z)| (w.into().to_lowercase(), z)).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomFeatures {
    pub upos_counts: BTreeMap<String, usize>,
    pub dep_counts: BTreeMap<String, usize>,
    /// Index 0 holds band 1.
    pub zipf_band_counts: [usize; ZIPF_BANDS],
    pub zipf_oov: usize,
}

impl CustomFeatures {
    /// Fixed-width feature columns: one per UPOS tag, one per universal
    /// relation (subtypes folded), the seven Zipf bands and the miss bucket.
    pub fn named(&self) -> Vec<(String, Option<f64>)> {
        let mut out = Vec::with_capacity(UPOS_TAGS.len() + UD_RELATIONS.len() + ZIPF_BANDS + 1);
        for tag in UPOS_TAGS {
            let v = self.upos_counts.get(tag).copied().unwrap_or(0);
            out.push((format!("upos_{tag}"), Some(v as f64)));
        }
        let mut base: BTreeMap<&str, usize> = BTreeMap::new();
        for (rel, &count) in &self.dep_counts {
            *base.entry(rel.split(':').next().unwrap_or("")).or_default() += count;
        }
        for rel in UD_RELATIONS {
            let v = base.get(rel).copied().unwrap_or(0);
            out.push((format!("dep_{rel}"), Some(v as f64)));
        }
        for (i, &count) in self.zipf_band_counts.iter().enumerate() {
            out.push((format!("zipf_{}", i + 1), Some(count as f64)));
        }
        out.push(("zipf_oov".to_string(), Some(self.zipf_oov as f64)));
        out
    }
}

/// UPOS and relation counts over all tokens, and Zipf bands over non-PUNCT
/// tokens (case-folded lemma first, then form; misses go to `zipf_oov`).
pub fn custom_features(doc: &AnnotatedDoc, lexicon: &ZipfLexicon) -> CustomFeatures {
    let mut out = CustomFeatures::default();
    for token in doc.tokens() {
        *out.upos_counts.entry(token.upos.clone()).or_default() += 1;
        *out.dep_counts.entry(token.deprel.clone()).or_default() += 1;
        if token.is_punct() {
            continue;
        }
        let zipf = token
            .lemma
            .as_deref()
            .and_then(|l| lexicon.get(l))
            .or_else(|| lexicon.get(&token.form));
        match zipf {
            Some(z) => out.zipf_band_counts[ZipfLexicon::band(z) - 1] += 1,
            None => out.zipf_oov += 1,
        }
    }
    out
}

pub type NgramInventory = BTreeMap<Vec<String>, usize>;

/// Counts UPOS n-grams within sentences (never across a boundary). With
/// `include_punct` off, PUNCT tokens are removed before the window slides.
pub fn upos_ngram_inventory<'a, I>(docs: I, n: usize, include_punct: bool) -> Result<NgramInventory>
where
    I: IntoIterator<Item = &'a AnnotatedDoc>,
{
    if n == 0 {
        return Err(Error::InvalidParameter("n-gram size must be at least 1".into()));
    }
    let mut inventory = NgramInventory::new();
    for doc in docs {
        for sentence in &doc.sentences {
            let tags: Vec<&str> = sentence
                .tokens
                .iter()
                .filter(|t| include_punct || !t.is_punct())
                .map(|t| t.upos.as_str())
                .collect();
            for gram in tags.windows(n) {
                *inventory
                    .entry(gram.iter().map(|s| s.to_string()).collect())
                    .or_default() += 1;
            }
        }
    }
    Ok(inventory)
}

/// Descending count, then lexicographic n-gram.
pub fn ranked_ngrams(inventory: &NgramInventory) -> Vec<(Vec<String>, usize)> {
    let mut ranked: Vec<(Vec<String>, usize)> = inventory.iter().map(|(g, &c)| (g.clone(), c)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked
}
