//! Generated corpora with known level structure, for tests and demos.
//!
//! Documents are built from pseudo-words together with a matching dependency
//! annotation. Higher levels draw from larger vocabularies of longer words
//! and attach more adverbial clauses (`because ...`) and adjectives.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Document, Level};
use crate::seed;
use crate::syntax::{AnnotatedDoc, AnnotatedSentence, Token};

const SYLLABLES: [&str; 10] = ["ba", "ko", "ri", "mu", "te", "lo", "sa", "ni", "du", "fe"];

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub levels: Vec<Level>,
    /// Topics are shared by all levels.
    pub topics: usize,
    pub docs_per_topic_and_level: usize,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    /// Two levels, 20 topics, 400 documents.
    fn default() -> Self {
        SyntheticSpec {
            levels: vec![Level::A1, Level::A2],
            topics: 20,
            docs_per_topic_and_level: 10,
            seed: 0,
        }
    }
}

struct LevelStyle {
    nouns: usize,
    verbs: usize,
    adjectives: usize,
    sentences: (usize, usize),
    p_clause: f64,
    p_adjective: f64,
}

fn style(level: Level) -> LevelStyle {
    let r = level.rank() as usize;
    LevelStyle {
        nouns: 10 * r * r,
        verbs: 5 * r * r,
        adjectives: 5 * r * r,
        sentences: (5 + r, 9 + r),
        p_clause: (0.05 + 0.15 * (r - 1) as f64).min(0.85),
        p_adjective: (0.05 + 0.12 * (r - 1) as f64).min(0.7),
    }
}

/// Pseudo-word for index `i`: one syllable per decimal digit plus a suffix.
fn pseudo_word(i: usize, suffix: &str) -> String {
    let mut word = String::new();
    let mut k = i;
    loop {
        word.insert_str(0, SYLLABLES[k % 10]);
        k /= 10;
        if k == 0 {
            break;
        }
    }
    word + suffix
}

/// Skewed draw from `0..n` so that low indices are frequent.
fn draw(rng: &mut ChaCha8Rng, n: usize) -> usize {
    let u: f64 = rng.gen();
    ((u * u * n as f64) as usize).min(n - 1)
}

struct Draft {
    form: String,
    upos: &'static str,
    finite: bool,
    head: Option<usize>,
    deprel: &'static str,
}

impl Draft {
    fn new(form: impl Into<String>, upos: &'static str) -> Self {
        Draft {
            form: form.into(),
            upos,
            finite: false,
            head: None,
            deprel: "",
        }
    }
}

/// `the [adj] noun`; returns the noun position.
fn noun_phrase(out: &mut Vec<Draft>, rng: &mut ChaCha8Rng, st: &LevelStyle, topic_noun: Option<&str>) -> usize {
    let adjective = rng.gen_bool(st.p_adjective);
    let noun = out.len() + 1 + usize::from(adjective);
    let mut det = Draft::new("the", "DET");
    det.head = Some(noun);
    det.deprel = "det";
    out.push(det);
    if adjective {
        let mut adj = Draft::new(pseudo_word(draw(rng, st.adjectives), "ic"), "ADJ");
        adj.head = Some(noun);
        adj.deprel = "amod";
        out.push(adj);
    }
    let form = match topic_noun {
        Some(t) => t.to_string(),
        None => pseudo_word(draw(rng, st.nouns), "on"),
    };
    out.push(Draft::new(form, "NOUN"));
    noun
}

/// `np verb np`; returns the verb position. The verb's head is left unset.
fn clause(out: &mut Vec<Draft>, rng: &mut ChaCha8Rng, st: &LevelStyle, topic_noun: &str) -> usize {
    let subject = noun_phrase(out, rng, st, None);
    let verb = out.len();
    let mut v = Draft::new(pseudo_word(draw(rng, st.verbs), "es"), "VERB");
    v.finite = true;
    out.push(v);
    let topical = rng.gen_bool(0.3).then_some(topic_noun);
    let object = noun_phrase(out, rng, st, topical);
    out[subject].head = Some(verb);
    out[subject].deprel = "nsubj";
    out[object].head = Some(verb);
    out[object].deprel = "obj";
    verb
}

fn sentence(rng: &mut ChaCha8Rng, st: &LevelStyle, topic_noun: &str) -> AnnotatedSentence {
    let mut drafts = Vec::new();
    let main = clause(&mut drafts, rng, st, topic_noun);
    drafts[main].deprel = "root";
    if rng.gen_bool(st.p_clause) {
        let mark = drafts.len();
        drafts.push(Draft::new("because", "SCONJ"));
        let sub = clause(&mut drafts, rng, st, topic_noun);
        drafts[sub].head = Some(main);
        drafts[sub].deprel = "advcl";
        drafts[mark].head = Some(sub);
        drafts[mark].deprel = "mark";
    }
    let mut stop = Draft::new(".", "PUNCT");
    stop.head = Some(main);
    stop.deprel = "punct";
    drafts.push(stop);

    let tokens = drafts
        .into_iter()
        .enumerate()
        .map(|(i, d)| Token {
            id: i + 1,
            lemma: Some(d.form.clone()),
            form: d.form,
            upos: d.upos.to_string(),
            feats: if d.finite {
                BTreeMap::from([("VerbForm".to_string(), "Fin".to_string())])
            } else {
                BTreeMap::new()
            },
            head: d.head.map_or(0, |h| h + 1),
            deprel: d.deprel.to_string(),
        })
        .collect();
    AnnotatedSentence { tokens }
}

fn render(sentences: &[AnnotatedSentence]) -> String {
    let rendered: Vec<String> = sentences
        .iter()
        .map(|s| {
            let mut text = String::new();
            for t in &s.tokens {
                if !t.is_punct() && !text.is_empty() {
                    text.push(' ');
                }
                text.push_str(&t.form);
            }
            text
        })
        .collect();
    rendered.join(" ")
}

/// Documents in level, topic, index order, each with its annotation attached.
/// Ids look like `A2-t07-003`; topics like `t07`.
pub fn synthetic_corpus(spec: &SyntheticSpec) -> Vec<Document> {
    let mut docs = Vec::new();
    for &level in &spec.levels {
        let st = style(level);
        for topic in 0..spec.topics {
            let topic_name = format!("t{topic:02}");
            let topic_noun = pseudo_word(topic, "ax");
            for k in 0..spec.docs_per_topic_and_level {
                let id = format!("{level}-{topic_name}-{k:03}");
                let mut rng = seed::rng(seed::derive(spec.seed, &format!("synthetic:{id}")));
                let n = rng.gen_range(st.sentences.0..=st.sentences.1);
                let sentences: Vec<AnnotatedSentence> = (0..n).map(|_| sentence(&mut rng, &st, &topic_noun)).collect();
                let mut doc = Document::new(id.clone(), render(&sentences), level, topic_name.clone())
                    .expect("generated text is non-empty");
                doc.annotation = Some(AnnotatedDoc { id, sentences });
                docs.push(doc);
            }
        }
    }
    docs
}
