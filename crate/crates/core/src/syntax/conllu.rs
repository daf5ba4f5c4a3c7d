use std::collections::BTreeMap;
use std::path::Path;

use super::{AnnotatedDoc, AnnotatedSentence, Token};
use crate::error::{Error, Result};

/// Reads a CoNLL-U file; see [`parse_conllu`].
pub fn read_conllu(path: impl AsRef<Path>) -> Result<Vec<AnnotatedDoc>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_conllu(&text)
}

/// Parses CoNLL-U text into documents split on `# newdoc id = ...` comments.
///
/// Sentences before the first `newdoc` comment form a document with an empty
/// id. Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped.
pub fn parse_conllu(text: &str) -> Result<Vec<AnnotatedDoc>> {
    let mut docs: Vec<AnnotatedDoc> = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut sentence_no = 1usize;

    fn finish(tokens: &mut Vec<Token>, docs: &mut Vec<AnnotatedDoc>, sentence_no: &mut usize) -> Result<()> {
        if tokens.is_empty() {
            return Ok(());
        }
        let sentence = AnnotatedSentence {
            tokens: std::mem::take(tokens),
        };
        sentence.validate().map_err(|message| Error::Conllu {
            sentence: *sentence_no,
            message,
        })?;
        if docs.is_empty() {
            docs.push(AnnotatedDoc::default());
        }
        docs.last_mut().unwrap().sentences.push(sentence);
        *sentence_no += 1;
        Ok(())
    }

    for (line_idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            finish(&mut current, &mut docs, &mut sentence_no)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = newdoc_id(comment) {
                finish(&mut current, &mut docs, &mut sentence_no)?;
                docs.push(AnnotatedDoc {
                    id,
                    sentences: Vec::new(),
                });
            }
            continue;
        }
        let err = |message: String| Error::Conllu {
            sentence: sentence_no,
            message: format!("line {}: {message}", line_idx + 1),
        };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(err(format!("expected 10 tab-separated columns, found {}", cols.len())));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let id: usize = cols[0]
            .parse()
            .map_err(|_| err(format!("bad token id {:?}", cols[0])))?;
        if id != current.len() + 1 {
            return Err(err(format!("token id {id} out of sequence")));
        }
        let head: usize = cols[6].parse().map_err(|_| err(format!("bad head {:?}", cols[6])))?;
        current.push(Token {
            id,
            form: cols[1].to_string(),
            lemma: (cols[2] != "_").then(|| cols[2].to_string()),
            upos: cols[3].to_string(),
            feats: parse_feats(cols[5]),
            head,
            deprel: cols[7].to_string(),
        });
    }
    finish(&mut current, &mut docs, &mut sentence_no)?;
    Ok(docs)
}

fn newdoc_id(comment: &str) -> Option<String> {
    let rest = comment.trim().strip_prefix("newdoc")?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Some(String::new());
    }
    let value = rest.strip_prefix("id")?.trim().strip_prefix('=')?;
    Some(value.trim().to_string())
}

fn parse_feats(col: &str) -> BTreeMap<String, String> {
    if col == "_" {
        return BTreeMap::new();
    }
    col.split('|')
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// Serializes documents as CoNLL-U with one `# newdoc id` comment each.
pub fn write_conllu(docs: &[AnnotatedDoc]) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&format!("# newdoc id = {}\n", doc.id));
        for sentence in &doc.sentences {
            for t in &sentence.tokens {
                let feats = if t.feats.is_empty() {
                    "_".to_string()
                } else {
                    t.feats
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join("|")
                };
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t_\t{}\t{}\t{}\t_\t_\n",
                    t.id,
                    t.form,
                    t.lemma.as_deref().unwrap_or("_"),
                    t.upos,
                    feats,
                    t.head,
                    t.deprel
                ));
            }
            out.push('\n');
        }
    }
    out
}
