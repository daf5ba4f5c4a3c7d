use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    assemble_metric_matrix, auc, enet_cv, gbt_importance, gbt_train, EnetCvParams, EnetModel, FeatureMatrix,
    FeatureSet, GbtModel, GbtParams, MedianImputer, TfVocabulary,
};
use crate::corpus::{PairDataset, PairTask, Split};
use crate::error::{Error, Result};
use crate::features::MetricTable;
use crate::seed;

pub const TOP_FEATURES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Gbt,
    Enet,
}

impl ModelKind {
    pub fn label(self) -> &'static str {
        match self {
            ModelKind::Gbt => "GBT",
            ModelKind::Enet => "Elastic Net",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Gbt => "gbt",
            ModelKind::Enet => "enet",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gbt" => Ok(ModelKind::Gbt),
            "enet" | "elastic_net" => Ok(ModelKind::Enet),
            _ => Err(Error::InvalidParameter(format!("unknown model kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub gbt: GbtParams,
    pub enet: EnetCvParams,
    /// Master seed; the cross-validation seed is derived from it per task.
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, seed: u64) -> Self {
        ModelSpec {
            kind,
            gbt: GbtParams::default(),
            enet: EnetCvParams::default(),
            seed,
        }
    }
}

/// Where a task's design matrix comes from.
#[derive(Debug, Clone, Copy)]
pub enum FeatureSource<'a> {
    /// Columns of a metric table, restricted to `set`.
    Metrics { table: &'a MetricTable, set: FeatureSet },
    /// Term counts over a vocabulary fitted on the training partition.
    TermFreq { min_doc_frac: f64 },
}

impl FeatureSource<'_> {
    pub fn feature_set(&self) -> FeatureSet {
        match self {
            FeatureSource::Metrics { set, .. } => *set,
            FeatureSource::TermFreq { .. } => FeatureSet::TermFreq,
        }
    }
}

/// Parameters fitted on the training partition and applied to both sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preprocessing {
    MedianImputation(MedianImputer),
    Vocabulary(TfVocabulary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrainedModel {
    Gbt(GbtModel),
    Enet(EnetModel),
}

impl TrainedModel {
    pub fn predict_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        match self {
            TrainedModel::Gbt(m) => m.predict_rows(rows),
            TrainedModel::Enet(m) => m.predict_rows(rows),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            TrainedModel::Gbt(m) => m.to_json(),
            TrainedModel::Enet(m) => m.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedFeature {
    pub name: String,
    /// Accumulated gain for trees, coefficient for the elastic net.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: PairTask,
    pub feature_set: FeatureSet,
    pub model: ModelKind,
    pub auc_train: f64,
    pub auc_test: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub n_features: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    pub top_features: Vec<RankedFeature>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct TaskOutcome {
    pub report: EvalReport,
    pub model: TrainedModel,
    pub preprocessing: Preprocessing,
}

fn partition_rows(dataset: &PairDataset<'_>, split: &Split) -> Result<(Vec<usize>, Vec<usize>)> {
    let side: HashMap<&str, bool> = split
        .train
        .iter()
        .map(|id| (id.as_str(), false))
        .chain(split.test.iter().map(|id| (id.as_str(), true)))
        .collect();
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (i, d) in dataset.docs.iter().enumerate() {
        match side.get(d.id.as_str()) {
            Some(false) => train.push(i),
            Some(true) => test.push(i),
            None => {
                return Err(Error::InvalidParameter(format!(
                    "document {} is in neither partition",
                    d.id
                )));
            }
        }
    }
    for (name, rows) in [("train", &train), ("test", &test)] {
        let positives = rows.iter().filter(|&&i| dataset.labels[i] == 1).count();
        if positives == 0 || positives == rows.len() {
            return Err(Error::DegenerateLabels(format!(
                "{}: {name} partition has a single class",
                dataset.task
            )));
        }
    }
    Ok((train, test))
}

/// Builds train and test matrices with train-only preprocessing, fits the
/// model on the train side and scores both sides.
pub fn evaluate_task(
    dataset: &PairDataset<'_>,
    source: &FeatureSource<'_>,
    spec: &ModelSpec,
    split: &Split,
) -> Result<TaskOutcome> {
    let (train_idx, test_idx) = partition_rows(dataset, split)?;
    let (train, test, preprocessing): (FeatureMatrix, FeatureMatrix, Preprocessing) = match source {
        FeatureSource::Metrics { table, set } => {
            let raw = assemble_metric_matrix(dataset, table, *set)?;
            let imputer = MedianImputer::fit(&raw, &train_idx);
            let train = imputer.transform(&raw, &train_idx)?;
            let test = imputer.transform(&raw, &test_idx)?;
            (train, test, Preprocessing::MedianImputation(imputer))
        }
        FeatureSource::TermFreq { min_doc_frac } => {
            let pick = |idx: &[usize]| -> (Vec<_>, Vec<u8>) {
                (
                    idx.iter().map(|&i| dataset.docs[i]).collect(),
                    idx.iter().map(|&i| dataset.labels[i]).collect(),
                )
            };
            let (train_docs, train_labels) = pick(&train_idx);
            let (test_docs, test_labels) = pick(&test_idx);
            let vocab = TfVocabulary::fit(&train_docs, *min_doc_frac)?;
            let train = vocab.transform(&train_docs, &train_labels)?;
            let test = vocab.transform(&test_docs, &test_labels)?;
            (train, test, Preprocessing::Vocabulary(vocab))
        }
    };

    let (model, lambda, top_features) = match spec.kind {
        ModelKind::Gbt => {
            let m = gbt_train(&train, &spec.gbt)?;
            let top = gbt_importance(&m, TOP_FEATURES);
            (TrainedModel::Gbt(m), None, top)
        }
        ModelKind::Enet => {
            let cv_seed = seed::derive(spec.seed, &format!("enet_cv:{}", dataset.task.slug()));
            let cv = enet_cv(&train, &spec.enet, cv_seed)?;
            let top = cv.model.ranked_coefficients(TOP_FEATURES);
            (TrainedModel::Enet(cv.model), Some(cv.lambda), top)
        }
    };

    let auc_train = auc(&model.predict_rows(&train.rows)?, &train.labels)?;
    let auc_test = auc(&model.predict_rows(&test.rows)?, &test.labels)?;
    let report = EvalReport {
        task: dataset.task,
        feature_set: source.feature_set(),
        model: spec.kind,
        auc_train,
        auc_test,
        n_train: train.n_rows(),
        n_test: test.n_rows(),
        n_features: train.n_features(),
        lambda,
        top_features: top_features
            .into_iter()
            .map(|(name, score)| RankedFeature { name, score })
            .collect(),
    };
    Ok(TaskOutcome {
        report,
        model,
        preprocessing,
    })
}

/// AUC table with one train row and one test row per feature set and model,
/// and one column per task. Missing tasks print as `-`.
pub fn format_table(reports: &[EvalReport]) -> String {
    let tasks = PairTask::all();
    let mut groups: BTreeMap<(u8, u8), BTreeMap<PairTask, &EvalReport>> = BTreeMap::new();
    let set_order = |s: FeatureSet| match s {
        FeatureSet::Metrics => 0,
        FeatureSet::TermFreq => 1,
        FeatureSet::MetricsPlus => 2,
    };
    let mut keys: HashMap<(u8, u8), (FeatureSet, ModelKind)> = HashMap::new();
    for r in reports {
        let key = (set_order(r.feature_set), r.model as u8);
        keys.insert(key, (r.feature_set, r.model));
        groups.entry(key).or_default().insert(r.task, r);
    }

    let mut header = vec!["Features".to_string(), "Model".into(), "Partition".into()];
    header.extend(tasks.iter().map(|t| t.to_string()));
    let mut lines = vec![header];
    for (key, by_task) in &groups {
        let (set, kind) = keys[key];
        for partition in ["train", "test"] {
            let mut line = vec![set.label().to_string(), kind.label().to_string(), partition.to_string()];
            for t in &tasks {
                line.push(match by_task.get(t) {
                    Some(r) => format!("{:.3}", if partition == "train" { r.auc_train } else { r.auc_test }),
                    None => "-".into(),
                });
            }
            lines.push(line);
        }
    }
    render(&lines, 3)
}

/// Top features per task, one column per task and one row per rank.
pub fn format_importance(reports: &[EvalReport]) -> String {
    let tasks = PairTask::all();
    let by_task: BTreeMap<PairTask, &EvalReport> = reports.iter().map(|r| (r.task, r)).collect();
    let mut lines = vec![tasks.iter().map(|t| t.to_string()).collect::<Vec<_>>()];
    for rank in 0..TOP_FEATURES {
        lines.push(
            tasks
                .iter()
                .map(|t| {
                    by_task
                        .get(t)
                        .and_then(|r| r.top_features.get(rank))
                        .map_or_else(|| "-".to_string(), |f| f.name.clone())
                })
                .collect(),
        );
    }
    render(&lines, 0)
}

/// Pipe-separated columns; the first `left` columns are left-aligned, the
/// rest right-aligned.
fn render(lines: &[Vec<String>], left: usize) -> String {
    let cols = lines[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                if c < left || left == 0 {
                    format!("{cell:<w$}", w = widths[c])
                } else {
                    format!("{cell:>w$}", w = widths[c])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "{}", rule.join("-|-"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Level;

    fn report(task: PairTask, set: FeatureSet, model: ModelKind, auc_test: f64) -> EvalReport {
        EvalReport {
            task,
            feature_set: set,
            model,
            auc_train: 0.9,
            auc_test,
            n_train: 10,
            n_test: 5,
            n_features: 3,
            lambda: None,
            top_features: vec![RankedFeature {
                name: "wordtokens".into(),
                score: 1.0,
            }],
        }
    }

    #[test]
    fn table_layout() {
        let t = PairTask::new(Level::A1, Level::A2).unwrap();
        let u = PairTask::new(Level::B2, Level::C1).unwrap();
        let table = format_table(&[
            report(t, FeatureSet::MetricsPlus, ModelKind::Gbt, 0.916),
            report(t, FeatureSet::Metrics, ModelKind::Gbt, 0.895),
            report(u, FeatureSet::Metrics, ModelKind::Gbt, 0.821),
        ]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines[0].starts_with("Features | Model | Partition | A1=>A2 | A2=>B1"));
        assert!(lines[2].starts_with("Metrics  | GBT   | train"));
        assert!(lines[3].contains("0.895 |      - |      - |  0.821 |      -"));
        assert!(lines[5].starts_with("Metrics+ | GBT   | test"));
        assert!(lines[5].contains("0.916"));
    }

    #[test]
    fn importance_layout() {
        let t = PairTask::new(Level::A2, Level::B1).unwrap();
        let text = format_importance(&[report(t, FeatureSet::Metrics, ModelKind::Gbt, 0.5)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2 + TOP_FEATURES);
        assert!(lines[2].contains("wordtokens"));
        assert!(lines[3].split('|').all(|c| c.trim() == "-"));
    }

    #[test]
    fn model_kind_parsing() {
        assert_eq!("GBT".parse::<ModelKind>().unwrap(), ModelKind::Gbt);
        assert_eq!("enet".parse::<ModelKind>().unwrap(), ModelKind::Enet);
        assert!("svm".parse::<ModelKind>().is_err());
    }
}
