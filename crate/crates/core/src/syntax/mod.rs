//! Dependency-annotated documents and the measures computed from them.

mod clauses;
mod conllu;
mod custom;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use clauses::{clause_inventory, syntactic_ratios, ClauseRoles, SyntacticCounts, SyntacticRatios};
pub use conllu::{parse_conllu, read_conllu, write_conllu};
pub use custom::{
    custom_features, ranked_ngrams, upos_ngram_inventory, CustomFeatures, NgramInventory, ZipfLexicon, UD_RELATIONS,
    UPOS_TAGS, ZIPF_BANDS,
};

/// One syntactic word of a CoNLL-U sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position in the sentence.
    pub id: usize,
    pub form: String,
    pub lemma: Option<String>,
    pub upos: String,
    pub feats: BTreeMap<String, String>,
    /// 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl Token {
    pub fn feat(&self, key: &str) -> Option<&str> {
        self.feats.get(key).map(String::as_str)
    }

    /// Relation label without its language-specific subtype (`acl:relcl` -> `acl`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }

    pub fn is_punct(&self) -> bool {
        self.upos == "PUNCT"
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub tokens: Vec<Token>,
}

impl AnnotatedSentence {
    /// Index (0-based) of the dependents of each token.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.tokens.len()];
        for (i, t) in self.tokens.iter().enumerate() {
            if t.head > 0 {
                children[t.head - 1].push(i);
            }
        }
        children
    }

    /// Checks the single-root, in-range, acyclic head structure.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.tokens.len();
        let mut roots = 0;
        for t in &self.tokens {
            if t.head > n {
                return Err(format!("head out of range: token {} has head {}", t.id, t.head));
            }
            if t.head == t.id {
                return Err(format!("cycle: token {} heads itself", t.id));
            }
            if t.head == 0 {
                roots += 1;
            }
        }
        if roots == 0 {
            return Err("missing root".into());
        }
        if roots > 1 {
            return Err(format!("{roots} roots"));
        }
        for start in 0..n {
            let mut steps = 0;
            let mut cur = self.tokens[start].head;
            while cur != 0 {
                steps += 1;
                if steps > n {
                    return Err(format!("cycle through token {}", start + 1));
                }
                cur = self.tokens[cur - 1].head;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDoc {
    pub id: String,
    pub sentences: Vec<AnnotatedSentence>,
}

impl AnnotatedDoc {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> + '_ {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }
}
