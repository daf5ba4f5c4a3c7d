use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::FeatureMatrix;
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::textproc::tokenize;

/// Term vocabulary fitted on a set of documents. Terms are case-folded word
/// tokens, kept when their document frequency is at least
/// `min_doc_frac × documents`, and ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfVocabulary {
    pub min_doc_frac: f64,
    pub fitted_on: usize,
    pub terms: Vec<String>,
}

fn term_counts(doc: &Document) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for t in tokenize(&doc.text, true).word_tokens() {
        *counts.entry(t.clone()).or_insert(0) += 1;
    }
    counts
}

impl TfVocabulary {
    pub fn fit(docs: &[&Document], min_doc_frac: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&min_doc_frac) {
            return Err(Error::InvalidParameter(format!(
                "min_doc_frac {min_doc_frac} outside [0, 1)"
            )));
        }
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for d in docs {
            let terms: BTreeSet<String> = tokenize(&d.text, true).word_tokens().iter().cloned().collect();
            for t in terms {
                *df.entry(t).or_insert(0) += 1;
            }
        }
        let cutoff = min_doc_frac * docs.len() as f64;
        let terms: Vec<String> = df
            .into_iter()
            .filter(|&(_, n)| n as f64 >= cutoff)
            .map(|(t, _)| t)
            .collect();
        if terms.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        Ok(TfVocabulary {
            min_doc_frac,
            fitted_on: docs.len(),
            terms,
        })
    }

    /// Count rows over the fitted terms; unseen terms are dropped.
    pub fn transform(&self, docs: &[&Document], labels: &[u8]) -> Result<FeatureMatrix> {
        let index: HashMap<&str, usize> = self.terms.iter().enumerate().map(|(j, t)| (t.as_str(), j)).collect();
        let rows = docs
            .iter()
            .map(|d| {
                let mut row = vec![0.0; self.terms.len()];
                for (t, n) in term_counts(d) {
                    if let Some(&j) = index.get(t.as_str()) {
                        row[j] = n as f64;
                    }
                }
                row
            })
            .collect();
        FeatureMatrix::new(
            self.terms.clone(),
            docs.iter().map(|d| d.id.clone()).collect(),
            rows,
            labels.to_vec(),
            docs.iter().map(|d| d.topic.clone()).collect(),
        )
    }
}

/// Fits the vocabulary on `docs` and returns their count matrix.
pub fn build_tf_matrix(docs: &[&Document], labels: &[u8], min_doc_frac: f64) -> Result<FeatureMatrix> {
    TfVocabulary::fit(docs, min_doc_frac)?.transform(docs, labels)
}
