//! Lexical diversity measures.
//!
//! The closed-form type/token transformations take a [`FrequencySpectrum`];
//! the segment- and window-based measures take the token sequence itself.
//! Tokens are compared case-folded. Natural logarithms throughout.
//!
//! A measure that is undefined for an input (e.g. Uber's index when every
//! token is distinct) is `None`, never `0.0`.

use std::collections::{BTreeSet, HashMap};

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::syntax::AnnotatedDoc;
use crate::textproc::{FrequencySpectrum, WordList};

pub const DEFAULT_MSTTR_SEGMENT: usize = 100;
pub const DEFAULT_MATTR_WINDOW: usize = 100;
pub const DEFAULT_MTLD_THRESHOLD: f64 = 0.72;
pub const DEFAULT_HDD_SAMPLE: usize = 42;

/// Maps case-folded tokens to dense ids in order of first appearance.
fn intern<S: AsRef<str>>(tokens: &[S]) -> (Vec<usize>, usize) {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let seq = tokens
        .iter()
        .map(|t| {
            let next = ids.len();
            *ids.entry(t.as_ref().to_lowercase()).or_insert(next)
        })
        .collect();
    (seq, ids.len())
}

fn types_in(ids: &[usize], n_types: usize) -> usize {
    let mut seen = vec![false; n_types];
    ids.iter()
        .filter(|&&id| !std::mem::replace(&mut seen[id], true))
        .count()
}

/// TTR and its closed-form transformations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TtrFamily {
    pub ttr: Option<f64>,
    pub herdan_c: Option<f64>,
    pub rttr: Option<f64>,
    pub cttr: Option<f64>,
    pub uber_u: Option<f64>,
    pub summer_s: Option<f64>,
    pub maas_a2: Option<f64>,
    pub maas_log: Option<f64>,
    pub yule_k: Option<f64>,
}

pub fn ttr_family(fs: &FrequencySpectrum) -> TtrFamily {
    let mut out = TtrFamily::default();
    if fs.tokens == 0 {
        return out;
    }
    let n = fs.tokens as f64;
    let v = fs.types as f64;
    out.ttr = Some(v / n);
    out.rttr = Some(v / n.sqrt());
    out.cttr = Some(v / (2.0 * n).sqrt());

    let sum_sq: f64 = fs
        .freq_of_freq
        .iter()
        .map(|(&x, &fx)| fx as f64 * (x as f64) * (x as f64))
        .sum();
    out.yule_k = Some(1e4 * (sum_sq - n) / (n * n));

    if fs.tokens >= 2 && fs.types >= 2 {
        let ln_n = n.ln();
        let ln_v = v.ln();
        out.herdan_c = Some(ln_v / ln_n);
        out.summer_s = Some(ln_v.ln() / ln_n.ln());
        out.maas_a2 = Some((ln_n - ln_v) / (ln_n * ln_n));
        if fs.types < fs.tokens {
            out.uber_u = Some(ln_n * ln_n / (ln_n - ln_v));
            let r = ln_v / ln_n;
            out.maas_log = Some(ln_v / (1.0 - r * r).sqrt());
        }
    }
    out
}

/// Mean TTR over consecutive disjoint segments; the trailing remainder is dropped.
pub fn msttr<S: AsRef<str>>(tokens: &[S], segment_size: usize) -> Result<f64> {
    if segment_size == 0 {
        return Err(Error::InvalidParameter("segment size must be positive".into()));
    }
    if tokens.len() < segment_size {
        return Err(Error::ShorterThanSegment {
            tokens: tokens.len(),
            segment: segment_size,
        });
    }
    let (ids, n_types) = intern(tokens);
    let segments: Vec<f64> = ids
        .chunks_exact(segment_size)
        .map(|seg| types_in(seg, n_types) as f64 / segment_size as f64)
        .collect();
    Ok(segments.iter().sum::<f64>() / segments.len() as f64)
}

/// Moving-average TTR over every window of `window` tokens. Texts shorter
/// than the window fall back to their whole-text TTR.
pub fn mattr<S: AsRef<str>>(tokens: &[S], window: usize) -> Result<f64> {
    if window == 0 {
        return Err(Error::InvalidParameter("window must be positive".into()));
    }
    if tokens.is_empty() {
        return Err(Error::DegenerateText("no tokens".into()));
    }
    let (ids, n_types) = intern(tokens);
    if ids.len() < window {
        return Ok(types_in(&ids, n_types) as f64 / ids.len() as f64);
    }
    let mut counts = vec![0usize; n_types];
    let mut distinct = 0usize;
    for &id in &ids[..window] {
        if counts[id] == 0 {
            distinct += 1;
        }
        counts[id] += 1;
    }
    let mut total = distinct as f64;
    for i in window..ids.len() {
        let out = ids[i - window];
        counts[out] -= 1;
        if counts[out] == 0 {
            distinct -= 1;
        }
        let inc = ids[i];
        if counts[inc] == 0 {
            distinct += 1;
        }
        counts[inc] += 1;
        total += distinct as f64;
    }
    let windows = ids.len() - window + 1;
    Ok(total / windows as f64 / window as f64)
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold > 0.0 && threshold < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "MTLD threshold {threshold} outside (0, 1)"
        )))
    }
}

/// Factor count of one directional MTLD pass, including the partial factor.
fn mtld_factors(ids: impl Iterator<Item = usize>, n_types: usize, threshold: f64) -> f64 {
    let mut counts = vec![0usize; n_types];
    let mut touched = Vec::new();
    let mut distinct = 0usize;
    let mut len = 0usize;
    let mut factors = 0.0;
    for id in ids {
        len += 1;
        if counts[id] == 0 {
            distinct += 1;
            touched.push(id);
        }
        counts[id] += 1;
        if distinct as f64 / len as f64 <= threshold {
            factors += 1.0;
            for t in touched.drain(..) {
                counts[t] = 0;
            }
            distinct = 0;
            len = 0;
        }
    }
    if len > 0 {
        let ttr = distinct as f64 / len as f64;
        factors += (1.0 - ttr) / (1.0 - threshold);
    }
    factors
}

/// Bidirectional MTLD: mean of the forward and backward token/factor ratios.
pub fn mtld<S: AsRef<str>>(tokens: &[S], threshold: f64) -> Result<Option<f64>> {
    check_threshold(threshold)?;
    if tokens.is_empty() {
        return Err(Error::DegenerateText("no tokens".into()));
    }
    let (ids, n_types) = intern(tokens);
    let n = ids.len() as f64;
    let forward = mtld_factors(ids.iter().copied(), n_types, threshold);
    let backward = mtld_factors(ids.iter().rev().copied(), n_types, threshold);
    let passes: Vec<f64> = [forward, backward]
        .into_iter()
        .filter(|&f| f > 0.0)
        .map(|f| n / f)
        .collect();
    if passes.is_empty() {
        return Ok(None);
    }
    Ok(Some(passes.iter().sum::<f64>() / passes.len() as f64))
}

/// Moving-average MTLD: from every start position, the number of tokens
/// needed for the running TTR to reach the threshold; averaged over the
/// start positions that complete a factor.
pub fn mtld_ma<S: AsRef<str>>(tokens: &[S], threshold: f64) -> Result<Option<f64>> {
    check_threshold(threshold)?;
    if tokens.is_empty() {
        return Err(Error::DegenerateText("no tokens".into()));
    }
    let (ids, n_types) = intern(tokens);
    let mut seen = vec![usize::MAX; n_types];
    let mut total = 0usize;
    let mut completed = 0usize;
    for start in 0..ids.len() {
        let mut distinct = 0usize;
        for (offset, &id) in ids[start..].iter().enumerate() {
            if seen[id] != start {
                seen[id] = start;
                distinct += 1;
            }
            let len = offset + 1;
            if distinct as f64 / len as f64 <= threshold {
                total += len;
                completed += 1;
                break;
            }
        }
    }
    if completed == 0 {
        return Ok(None);
    }
    Ok(Some(total as f64 / completed as f64))
}

/// HD-D: each type's probability of appearing in a random draw of
/// `sample_size` tokens without replacement, summed and divided by the
/// sample size.
pub fn hdd(fs: &FrequencySpectrum, sample_size: usize) -> Result<f64> {
    if sample_size == 0 {
        return Err(Error::InvalidParameter("sample size must be positive".into()));
    }
    if fs.tokens < sample_size {
        return Err(Error::ShorterThanSample {
            tokens: fs.tokens,
            sample: sample_size,
        });
    }
    let n = fs.tokens;
    let mut total = 0.0;
    for (&count, &n_types) in &fs.freq_of_freq {
        total += n_types as f64 * (1.0 - prob_absent(n, count, sample_size)) / sample_size as f64;
    }
    Ok(total)
}

/// P(a type with `count` occurrences is absent from a sample of `sample` out
/// of `n` tokens) = C(n - count, sample) / C(n, sample), as a running product.
fn prob_absent(n: usize, count: usize, sample: usize) -> f64 {
    if n - count < sample {
        return 0.0;
    }
    (0..sample).fold(1.0, |acc, i| acc * (n - count - i) as f64 / (n - i) as f64)
}

/// The full set of diversity measures for one text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LexDivProfile {
    pub ttr: Option<f64>,
    pub msttr: Option<f64>,
    pub herdan_c: Option<f64>,
    pub rttr: Option<f64>,
    pub cttr: Option<f64>,
    pub uber_u: Option<f64>,
    pub summer_s: Option<f64>,
    pub maas_a2: Option<f64>,
    pub maas_log: Option<f64>,
    pub yule_k: Option<f64>,
    pub mtld: Option<f64>,
    pub mtld_ma: Option<f64>,
    pub mattr: Option<f64>,
    pub hdd: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LexDivParams {
    pub msttr_segment: usize,
    pub mattr_window: usize,
    pub mtld_threshold: f64,
    pub hdd_sample: usize,
}

impl Default for LexDivParams {
    fn default() -> Self {
        LexDivParams {
            msttr_segment: DEFAULT_MSTTR_SEGMENT,
            mattr_window: DEFAULT_MATTR_WINDOW,
            mtld_threshold: DEFAULT_MTLD_THRESHOLD,
            hdd_sample: DEFAULT_HDD_SAMPLE,
        }
    }
}

impl LexDivProfile {
    /// Computes every measure; those a short or degenerate text cannot support are `None`.
    pub fn compute<S: AsRef<str>>(tokens: &[S], params: &LexDivParams) -> Result<Self> {
        check_threshold(params.mtld_threshold)?;
        let fs = FrequencySpectrum::from_tokens(tokens);
        let family = ttr_family(&fs);
        let nonempty = !tokens.is_empty();
        Ok(LexDivProfile {
            ttr: family.ttr,
            msttr: msttr(tokens, params.msttr_segment).ok(),
            herdan_c: family.herdan_c,
            rttr: family.rttr,
            cttr: family.cttr,
            uber_u: family.uber_u,
            summer_s: family.summer_s,
            maas_a2: family.maas_a2,
            maas_log: family.maas_log,
            yule_k: family.yule_k,
            mtld: if nonempty {
                mtld(tokens, params.mtld_threshold)?
            } else {
                None
            },
            mtld_ma: if nonempty {
                mtld_ma(tokens, params.mtld_threshold)?
            } else {
                None
            },
            mattr: if nonempty {
                Some(mattr(tokens, params.mattr_window)?)
            } else {
                None
            },
            hdd: hdd(&fs, params.hdd_sample).ok(),
        })
    }

    pub fn named(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("ttr", self.ttr),
            ("msttr", self.msttr),
            ("herdan_c", self.herdan_c),
            ("rttr", self.rttr),
            ("cttr", self.cttr),
            ("uber_u", self.uber_u),
            ("summer_s", self.summer_s),
            ("maas_a2", self.maas_a2),
            ("maas_log", self.maas_log),
            ("yule_k", self.yule_k),
            ("mtld", self.mtld),
            ("mtld_ma", self.mtld_ma),
            ("mattr", self.mattr),
            ("hdd", self.hdd),
        ]
    }
}

pub const NDW_SAMPLE: usize = 50;
pub const NDW_TRIALS: usize = 10;

/// LCA-style lexical sophistication and variation over a tagged document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LcaProfile {
    pub wordtokens: f64,
    pub wordtypes: f64,
    pub lextokens: f64,
    pub lextypes: f64,
    pub slextypes: f64,
    pub swordtypes: f64,
    pub ndwerz: Option<f64>,
    pub ls2: Option<f64>,
    pub vs1: Option<f64>,
    pub vs2: Option<f64>,
    pub svv1: Option<f64>,
    pub lv: Option<f64>,
    pub adjv: Option<f64>,
    pub modv: Option<f64>,
}

impl LcaProfile {
    pub fn named(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("wordtokens", Some(self.wordtokens)),
            ("wordtypes", Some(self.wordtypes)),
            ("lextokens", Some(self.lextokens)),
            ("lextypes", Some(self.lextypes)),
            ("slextypes", Some(self.slextypes)),
            ("swordtypes", Some(self.swordtypes)),
            ("ndwerz", self.ndwerz),
            ("ls2", self.ls2),
            ("vs1", self.vs1),
            ("vs2", self.vs2),
            ("svv1", self.svv1),
            ("lv", self.lv),
            ("adjv", self.adjv),
            ("modv", self.modv),
        ]
    }
}

const NON_WORD_UPOS: &[&str] = &["PUNCT", "SYM", "X"];

/// Adverbs count as lexical when they are -ly derivations.
fn is_lexical_adverb(form: &str) -> bool {
    form.len() > 3 && form.ends_with("ly")
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

/// Computes the LCA-style profile. Word tokens exclude PUNCT, SYM and X;
/// lexical words are NOUN, PROPN, ADJ, VERB and -ly adverbs; a type is
/// sophisticated when it is absent from `reference`. `ndwerz` averages the
/// distinct-word count of [`NDW_TRIALS`] random [`NDW_SAMPLE`]-token samples
/// drawn with a generator seeded by `seed`.
pub fn lca_profile(doc: &AnnotatedDoc, reference: &WordList, seed: u64) -> LcaProfile {
    let mut words: Vec<String> = Vec::new();
    let mut word_types = BTreeSet::new();
    let mut lex_types = BTreeSet::new();
    let mut verb_types = BTreeSet::new();
    let mut adj_types = BTreeSet::new();
    let mut adv_types = BTreeSet::new();
    let mut lextokens = 0usize;
    let mut verb_tokens = 0usize;

    for token in doc.tokens() {
        if NON_WORD_UPOS.contains(&token.upos.as_str()) {
            continue;
        }
        let form = token.form.to_lowercase();
        words.push(form.clone());
        word_types.insert(form.clone());
        let lexical = match token.upos.as_str() {
            "NOUN" | "PROPN" => true,
            "ADJ" => {
                adj_types.insert(form.clone());
                true
            }
            "VERB" => {
                verb_tokens += 1;
                verb_types.insert(form.clone());
                true
            }
            "ADV" if is_lexical_adverb(&form) => {
                adv_types.insert(form.clone());
                true
            }
            _ => false,
        };
        if lexical {
            lextokens += 1;
            lex_types.insert(form);
        }
    }

    let sophisticated = |set: &BTreeSet<String>| set.iter().filter(|w| !reference.contains(w)).count() as f64;
    let swordtypes = sophisticated(&word_types);
    let slextypes = sophisticated(&lex_types);
    let sverb_types = sophisticated(&verb_types);
    let n_verb_types = verb_types.len() as f64;
    let verb_tokens = verb_tokens as f64;
    let lextokens_f = lextokens as f64;

    LcaProfile {
        wordtokens: words.len() as f64,
        wordtypes: word_types.len() as f64,
        lextokens: lextokens_f,
        lextypes: lex_types.len() as f64,
        slextypes,
        swordtypes,
        ndwerz: ndw_random_samples(&words, seed),
        ls2: ratio(swordtypes, word_types.len() as f64),
        vs1: ratio(sverb_types, verb_tokens),
        vs2: ratio(sverb_types * sverb_types, verb_tokens),
        svv1: ratio(n_verb_types * n_verb_types, verb_tokens),
        lv: ratio(lex_types.len() as f64, lextokens_f),
        adjv: ratio(adj_types.len() as f64, lextokens_f),
        modv: ratio((adj_types.len() + adv_types.len()) as f64, lextokens_f),
    }
}

fn ndw_random_samples(words: &[String], seed: u64) -> Option<f64> {
    if words.len() < NDW_SAMPLE {
        return None;
    }
    let mut rng = seed::rng(seed);
    let total: usize = (0..NDW_TRIALS)
        .map(|_| {
            let picked: BTreeSet<&str> = index::sample(&mut rng, words.len(), NDW_SAMPLE)
                .iter()
                .map(|i| words[i].as_str())
                .collect();
            picked.len()
        })
        .sum();
    Some(total as f64 / NDW_TRIALS as f64)
}
