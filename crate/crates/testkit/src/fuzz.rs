use rand::seq::SliceRandom;
use rand::Rng;

const UPOS: &[&str] = &[
    "NOUN", "PROPN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET", "ADP", "SCONJ", "CCONJ", "PART", "NUM", "PUNCT",
];
const DEPRELS: &[&str] = &[
    "nsubj",
    "obj",
    "obl",
    "advmod",
    "amod",
    "nmod",
    "det",
    "case",
    "mark",
    "cc",
    "conj",
    "cop",
    "aux",
    "aux:pass",
    "advcl",
    "ccomp",
    "csubj",
    "acl",
    "acl:relcl",
    "parataxis",
    "xcomp",
    "appos",
    "nummod",
    "punct",
];
const FEATS: &[&str] = &[
    "_",
    "_",
    "VerbForm=Fin",
    "VerbForm=Inf",
    "VerbForm=Part",
    "Mood=Ind|VerbForm=Fin",
];

/// A random but well-formed CoNLL-U document: every sentence is a tree with
/// one root, with random tags, relations and verb forms.
pub fn random_tree_conllu<R: Rng>(rng: &mut R, doc_id: &str, sentences: usize) -> String {
    let mut out = format!("# newdoc id = {doc_id}\n");
    for _ in 0..sentences {
        let n = rng.gen_range(1..=15);
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(rng);
        let mut head = vec![0usize; n + 1];
        for k in 1..n {
            head[order[k]] = order[rng.gen_range(0..k)];
        }
        for (id, &h) in head.iter().enumerate().skip(1) {
            let rel = if h == 0 { "root" } else { DEPRELS.choose(rng).unwrap() };
            out.push_str(&format!(
                "{id}\tw{id}\tw{id}\t{}\t_\t{}\t{}\t{rel}\t_\t_\n",
                UPOS.choose(rng).unwrap(),
                FEATS.choose(rng).unwrap(),
                h
            ));
        }
        out.push('\n');
    }
    out
}

const CHAR_POOL: &[char] = &[
    'a', 'b', 'e', 'k', 'o', 'y', 'A', 'Z', 'é', 'ß', 'İ', 'Ω', 'ж', '0', '7', '\'', '’', '-', '‐', '.', '!', '?', ',',
    ';', '"', '(', ')', ' ', ' ', ' ', '\n', '\t', '漢', '🙂', '_', '/',
];

/// A random string over a pool mixing ASCII, accented and non-Latin letters,
/// digits, joiners, punctuation and whitespace.
pub fn random_text<R: Rng>(rng: &mut R, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *CHAR_POOL.choose(rng).unwrap()).collect()
}

/// `n` tokens drawn from a vocabulary of `vocab` pseudo-words with a skew
/// towards the first entries.
pub fn random_tokens<R: Rng>(rng: &mut R, n: usize, vocab: usize) -> Vec<String> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            format!("w{}", (u * u * vocab as f64) as usize)
        })
        .collect()
}
