//! Per-document metric profiles and the tabular form they are stored in.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Level};
use crate::error::{Error, Result};
use crate::lexdiv::{lca_profile, LexDivParams, LexDivProfile};
use crate::readability::readability_profile;
use crate::seed;
use crate::syntax::{clause_inventory, custom_features, syntactic_ratios, ZipfLexicon};
use crate::textproc::{surface_stats, tokenize, WordList};

const READABILITY_NAMES: [&str; 9] = [
    "ari",
    "lix",
    "rix",
    "flesch_kincaid",
    "fog",
    "forcast",
    "linsear_write",
    "dale_chall",
    "spache",
];

const CUSTOM_PREFIXES: [&str; 3] = ["upos_", "dep_", "zipf_"];

/// True for the UPOS, relation and Zipf-band count columns.
pub fn is_custom_feature(name: &str) -> bool {
    CUSTOM_PREFIXES.iter().any(|p| name.starts_with(p))
}

/// Word lists and lexicons the metrics are computed against.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    /// Familiar words for Dale-Chall; anything else is "difficult".
    pub dale_familiar: WordList,
    /// Familiar words for Spache.
    pub spache_familiar: WordList,
    /// Frequent-word list; types outside it are "sophisticated".
    pub reference: WordList,
    pub zipf: ZipfLexicon,
}

impl Resources {
    /// The bundled basic word list for all three lists and an empty Zipf lexicon.
    pub fn basic() -> Self {
        let basic = WordList::basic_english();
        Resources {
            dale_familiar: basic.clone(),
            spache_familiar: basic.clone(),
            reference: basic,
            zipf: ZipfLexicon::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub lexdiv: LexDivParams,
    /// Master seed; per-document sampling seeds are derived from it.
    pub seed: u64,
}

/// Named metric values for one document. `None` marks an undefined value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricProfile {
    pub values: BTreeMap<String, Option<f64>>,
}

impl MetricProfile {
    fn extend<K: Into<String>>(&mut self, named: impl IntoIterator<Item = (K, Option<f64>)>) {
        for (k, v) in named {
            self.values.insert(k.into(), v.filter(|x| x.is_finite()));
        }
    }
}

/// Computes lexical-diversity and readability metrics from the raw text and,
/// when the document carries an annotation, the syntactic counts and ratios,
/// the LCA profile and the UPOS/relation/Zipf counts.
pub fn compute_profile(doc: &Document, resources: &Resources, params: &MetricParams) -> Result<MetricProfile> {
    let tt = tokenize(&doc.text, false);
    let mut profile = MetricProfile::default();

    profile.extend(LexDivProfile::compute(tt.word_tokens(), &params.lexdiv)?.named());

    let ss = surface_stats(&tt, &resources.dale_familiar, &resources.spache_familiar);
    match readability_profile(&ss) {
        Ok(r) => profile.extend(r.named()),
        Err(_) => profile.extend(READABILITY_NAMES.iter().map(|&n| (n, None))),
    }

    if let Some(annotation) = &doc.annotation {
        let counts = clause_inventory(annotation);
        profile.extend(counts.named());
        profile.extend(syntactic_ratios(&counts).named());
        let ndw_seed = seed::derive(params.seed, &format!("ndwerz:{}", doc.id));
        profile.extend(lca_profile(annotation, &resources.reference, ndw_seed).named());
        profile.extend(custom_features(annotation, &resources.zipf).named());
    }
    Ok(profile)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub id: String,
    pub level: Level,
    pub topic: String,
    pub values: Vec<Option<f64>>,
}

/// Metric profiles of a corpus as a table. Columns are the union of all
/// profile names in sorted order; a name missing from a profile is null.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricTable {
    pub names: Vec<String>,
    pub rows: Vec<MetricRow>,
}

impl MetricTable {
    pub fn from_profiles(docs: &[Document], profiles: &[MetricProfile]) -> Result<Self> {
        if docs.len() != profiles.len() {
            return Err(Error::InvalidParameter(format!(
                "{} documents but {} profiles",
                docs.len(),
                profiles.len()
            )));
        }
        let mut names: Vec<String> = profiles.iter().flat_map(|p| p.values.keys().cloned()).collect();
        names.sort();
        names.dedup();
        let rows = docs
            .iter()
            .zip(profiles)
            .map(|(d, p)| MetricRow {
                id: d.id.clone(),
                level: d.level,
                topic: d.topic.clone(),
                values: names.iter().map(|n| p.values.get(n).copied().flatten()).collect(),
            })
            .collect();
        Ok(MetricTable { names, rows })
    }

    pub fn has_custom_features(&self) -> bool {
        self.names.iter().any(|n| is_custom_feature(n))
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// CSV with header `doc_id,level,topic,<names...>`; nulls are empty cells.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["doc_id".to_string(), "level".to_string(), "topic".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut record = vec![row.id.clone(), row.level.to_string(), row.topic.clone()];
            record.extend(row.values.iter().map(|v| v.map(|x| x.to_string()).unwrap_or_default()));
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }

    pub fn read_csv(input: impl Read) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        if header.len() < 3 || &header[0] != "doc_id" || &header[1] != "level" || &header[2] != "topic" {
            return Err(Error::Line {
                line: 1,
                message: "expected header doc_id,level,topic,...".into(),
            });
        }
        let names: Vec<String> = header.iter().skip(3).map(String::from).collect();
        let mut rows = Vec::new();
        for (i, record) in r.records().enumerate() {
            let record = record?;
            let line = i + 2;
            let bad = |message: String| Error::Line { line, message };
            let values = record
                .iter()
                .skip(3)
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse::<f64>()
                            .map(Some)
                            .map_err(|_| bad(format!("bad number {cell:?}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if values.len() != names.len() {
                return Err(bad(format!("expected {} values, found {}", names.len(), values.len())));
            }
            rows.push(MetricRow {
                id: record[0].to_string(),
                level: record[1].parse().map_err(|e: Error| bad(e.to_string()))?,
                topic: record[2].to_string(),
                values,
            });
        }
        Ok(MetricTable { names, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_conllu;

    #[test]
    fn plain_profile_has_lexdiv_and_readability() {
        let doc = Document::new("d", "The cat sat on the mat. The dog ran.", Level::A1, "t").unwrap();
        let p = compute_profile(&doc, &Resources::basic(), &MetricParams::default()).unwrap();
        assert!(p.values.contains_key("mtld"));
        assert!(p.values.contains_key("flesch_kincaid"));
        assert!(!p.values.contains_key("W"));
        assert_eq!(p.values["msttr"], None);
    }

    #[test]
    fn annotated_profile_adds_syntax_groups() {
        let mut doc = Document::new("d1", "I run.", Level::A1, "t").unwrap();
        let conllu = "# newdoc id = d1\n1\tI\tI\tPRON\t_\t_\t2\tnsubj\t_\t_\n2\trun\trun\tVERB\t_\tVerbForm=Fin\t0\troot\t_\t_\n3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n";
        doc.annotation = Some(parse_conllu(conllu).unwrap().remove(0));
        let p = compute_profile(&doc, &Resources::basic(), &MetricParams::default()).unwrap();
        assert_eq!(p.values["W"], Some(2.0));
        assert_eq!(p.values["C"], Some(1.0));
        assert_eq!(p.values["wordtokens"], Some(2.0));
        assert_eq!(p.values["upos_PUNCT"], Some(1.0));
        assert!(p.values.contains_key("zipf_oov"));
    }

    #[test]
    fn degenerate_text_gives_null_readability() {
        let doc = Document::new("d", "!!!", Level::A1, "t").unwrap();
        let p = compute_profile(&doc, &Resources::basic(), &MetricParams::default()).unwrap();
        assert_eq!(p.values["ari"], None);
        assert_eq!(p.values["ttr"], None);
    }

    #[test]
    fn csv_round_trip_keeps_nulls() {
        let docs = vec![
            Document::new("a", "One two three. Four.", Level::A1, "t1").unwrap(),
            Document::new("b", "Five six, seven eight nine.", Level::A2, "t2").unwrap(),
        ];
        let params = MetricParams::default();
        let profiles: Vec<_> = docs
            .iter()
            .map(|d| compute_profile(d, &Resources::basic(), &params).unwrap())
            .collect();
        let table = MetricTable::from_profiles(&docs, &profiles).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let back = MetricTable::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, table);
        assert!(back.rows[0].values.iter().any(Option::is_none));
    }
}
