//! Corpus analysis and pairwise proficiency classification for learner essays.
//!
//! The crate is organised bottom-up:
//!
//! - [`textproc`]: sentence splitting, tokenization, syllables, frequency spectra.
//! - [`lexdiv`]: type/token diversity measures (TTR family, MSTTR, MATTR, MTLD,
//!   MTLD-MA, HD-D) and an LCA-style lexical profile over tagged text.
//! - [`readability`]: nine classic readability formulas.
//! - [`syntax`]: CoNLL-U ingestion, dependency-based clause/T-unit counting,
//!   UPOS/deprel/Zipf feature counts and UPOS n-gram inventories.
//! - [`corpus`]: documents, CEFR levels, adjacent-level tasks, topic-grouped splits.
//! - [`features`]: per-document metric profiles.
//! - [`ml`]: feature matrices, gradient-boosted trees, logistic elastic net,
//!   AUC and task evaluation.
//!
//! [`synthetic`] generates annotated fixture corpora with a controlled level signal.

pub mod corpus;
pub mod error;
pub mod features;
pub mod lexdiv;
pub mod ml;
pub mod readability;
pub mod seed;
pub mod syntax;
pub mod synthetic;
pub mod textproc;

pub use error::{Error, Result};
