use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::PairDataset;
use crate::error::{Error, Result};
use crate::features::{is_custom_feature, MetricTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSet {
    /// Lexical diversity, readability, syntactic counts/ratios and LCA profile.
    Metrics,
    /// `Metrics` plus UPOS, relation and Zipf-band counts.
    MetricsPlus,
    /// Term-frequency counts.
    TermFreq,
}

impl FeatureSet {
    pub fn label(self) -> &'static str {
        match self {
            FeatureSet::Metrics => "Metrics",
            FeatureSet::MetricsPlus => "Metrics+",
            FeatureSet::TermFreq => "Term Freq.",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            FeatureSet::Metrics => "metrics",
            FeatureSet::MetricsPlus => "metrics_plus",
            FeatureSet::TermFreq => "term_freq",
        }
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "metrics" => Ok(FeatureSet::Metrics),
            "metrics_plus" | "metrics+" => Ok(FeatureSet::MetricsPlus),
            "term_freq" | "tf" => Ok(FeatureSet::TermFreq),
            _ => Err(Error::InvalidParameter(format!("unknown feature set {s:?}"))),
        }
    }
}

/// Dense labelled design matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
    pub topics: Vec<String>,
}

impl FeatureMatrix {
    pub fn new(
        feature_names: Vec<String>,
        ids: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
        topics: Vec<String>,
    ) -> Result<Self> {
        let fm = FeatureMatrix {
            feature_names,
            ids,
            rows,
            labels,
            topics,
        };
        fm.validate()?;
        Ok(fm)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rows.len();
        if self.ids.len() != n || self.labels.len() != n || self.topics.len() != n {
            return Err(Error::InvalidParameter(
                "ids, labels and topics must match the row count".into(),
            ));
        }
        let width = self.feature_names.len();
        for row in &self.rows {
            if row.len() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: row.len(),
                });
            }
        }
        if let Some(l) = self.labels.iter().find(|&&l| l > 1) {
            return Err(Error::InvalidParameter(format!("label {l} not in {{0, 1}}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.feature_names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidParameter(format!("duplicate feature name {dup}")));
        }
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            topics: indices.iter().map(|&i| self.topics[i].clone()).collect(),
        }
    }

    /// CSV with header `doc_id,label,topic,<features...>`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["doc_id".to_string(), "label".to_string(), "topic".to_string()];
        header.extend(self.feature_names.iter().cloned());
        w.write_record(&header)?;
        for i in 0..self.n_rows() {
            let mut record = vec![self.ids[i].clone(), self.labels[i].to_string(), self.topics[i].clone()];
            record.extend(self.rows[i].iter().map(|v| v.to_string()));
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }

    pub fn read_csv(input: impl Read) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        if header.len() < 3 || &header[0] != "doc_id" || &header[1] != "label" || &header[2] != "topic" {
            return Err(Error::Line {
                line: 1,
                message: "expected header doc_id,label,topic,...".into(),
            });
        }
        let feature_names: Vec<String> = header.iter().skip(3).map(String::from).collect();
        let (mut ids, mut rows, mut labels, mut topics) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (i, record) in r.records().enumerate() {
            let record = record?;
            let bad = |message: String| Error::Line { line: i + 2, message };
            ids.push(record[0].to_string());
            labels.push(
                record[1]
                    .parse()
                    .map_err(|_| bad(format!("bad label {:?}", &record[1])))?,
            );
            topics.push(record[2].to_string());
            let row = record
                .iter()
                .skip(3)
                .map(|c| c.parse::<f64>().map_err(|_| bad(format!("bad number {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        FeatureMatrix::new(feature_names, ids, rows, labels, topics)
    }
}

/// A labelled matrix that may still contain undefined values.
#[derive(Debug, Clone, PartialEq)]
pub struct RawMatrix {
    pub feature_names: Vec<String>,
    pub ids: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub labels: Vec<u8>,
    pub topics: Vec<String>,
}

impl RawMatrix {
    pub fn index_of(&self) -> HashMap<&str, usize> {
        self.ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect()
    }
}

/// Selects the rows of `dataset` from the metric table, restricted to the
/// columns of `feature_set`. Every document must have a row.
pub fn assemble_metric_matrix(
    dataset: &PairDataset<'_>,
    table: &MetricTable,
    feature_set: FeatureSet,
) -> Result<RawMatrix> {
    let columns: Vec<usize> = match feature_set {
        FeatureSet::Metrics => (0..table.names.len())
            .filter(|&j| !is_custom_feature(&table.names[j]))
            .collect(),
        FeatureSet::MetricsPlus => {
            if !table.has_custom_features() {
                return Err(Error::InvalidParameter(
                    "metrics_plus needs UPOS/relation/Zipf columns; featurize with a CoNLL-U annotation".into(),
                ));
            }
            (0..table.names.len()).collect()
        }
        FeatureSet::TermFreq => {
            return Err(Error::InvalidParameter(
                "term frequencies are not metric columns".into(),
            ));
        }
    };
    let by_id: HashMap<&str, usize> = table.rows.iter().enumerate().map(|(i, r)| (r.id.as_str(), i)).collect();
    let mut rows = Vec::with_capacity(dataset.len());
    for d in &dataset.docs {
        let &ri = by_id
            .get(d.id.as_str())
            .ok_or_else(|| Error::InsufficientData(format!("no metric profile for document {}", d.id)))?;
        let values = &table.rows[ri].values;
        rows.push(columns.iter().map(|&j| values[j]).collect());
    }
    Ok(RawMatrix {
        feature_names: columns.iter().map(|&j| table.names[j].clone()).collect(),
        ids: dataset.docs.iter().map(|d| d.id.clone()).collect(),
        rows,
        labels: dataset.labels.clone(),
        topics: dataset.docs.iter().map(|d| d.topic.clone()).collect(),
    })
}

/// Per-column median of the defined values of the fitting rows; 0 when a
/// column has none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianImputer {
    pub feature_names: Vec<String>,
    pub medians: Vec<f64>,
}

fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

impl MedianImputer {
    pub fn fit(raw: &RawMatrix, rows: &[usize]) -> Self {
        let medians = (0..raw.feature_names.len())
            .map(|j| median(rows.iter().filter_map(|&i| raw.rows[i][j]).collect()).unwrap_or(0.0))
            .collect();
        MedianImputer {
            feature_names: raw.feature_names.clone(),
            medians,
        }
    }

    pub fn transform(&self, raw: &RawMatrix, rows: &[usize]) -> Result<FeatureMatrix> {
        if raw.feature_names != self.feature_names {
            return Err(Error::WidthMismatch {
                expected: self.feature_names.len(),
                got: raw.feature_names.len(),
            });
        }
        let dense = rows
            .iter()
            .map(|&i| {
                raw.rows[i]
                    .iter()
                    .zip(&self.medians)
                    .map(|(v, &m)| v.unwrap_or(m))
                    .collect()
            })
            .collect();
        FeatureMatrix::new(
            raw.feature_names.clone(),
            rows.iter().map(|&i| raw.ids[i].clone()).collect(),
            dense,
            rows.iter().map(|&i| raw.labels[i]).collect(),
            rows.iter().map(|&i| raw.topics[i].clone()).collect(),
        )
    }
}
