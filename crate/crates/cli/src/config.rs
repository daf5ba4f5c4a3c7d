use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lexlevel::lexdiv::LexDivParams;
use lexlevel::ml::{EnetCvParams, FeatureSet, GbtParams, ModelKind};
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

/// One feature set / model pairing to train and evaluate. Serialized as its
/// `set:model` string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RunSpec {
    pub feature_set: FeatureSet,
    pub model: ModelKind,
}

impl RunSpec {
    pub fn slug(&self) -> String {
        format!("{}-{}", self.feature_set.slug(), self.model)
    }
}

impl fmt::Display for RunSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.feature_set.slug(), self.model)
    }
}

/// `metrics`, `metrics_plus:gbt`, `term_freq:enet`, ... Without a model the
/// metric sets get trees and term frequencies the elastic net.
impl FromStr for RunSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (set, model) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let feature_set: FeatureSet = set.parse().map_err(|e: lexlevel::Error| e.to_string())?;
        let model = match model {
            Some(m) => m.parse().map_err(|e: lexlevel::Error| e.to_string())?,
            None if feature_set == FeatureSet::TermFreq => ModelKind::Enet,
            None => ModelKind::Gbt,
        };
        Ok(RunSpec { feature_set, model })
    }
}

impl TryFrom<String> for RunSpec {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<RunSpec> for String {
    fn from(r: RunSpec) -> String {
        r.to_string()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResourcePaths {
    /// Familiar-word list for Dale-Chall (one word per line).
    pub dale_list: Option<PathBuf>,
    pub spache_list: Option<PathBuf>,
    /// Frequent-word list for the sophistication measures.
    pub reference_list: Option<PathBuf>,
    /// `word<TAB>zipf` lines.
    pub zipf_lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    pub test_fraction: f64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig { test_fraction: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TfConfig {
    /// Terms used in fewer than this fraction of training documents are dropped.
    pub min_doc_frac: f64,
}

impl Default for TfConfig {
    fn default() -> Self {
        TfConfig { min_doc_frac: 0.02 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NgramConfig {
    pub n: usize,
    pub include_punct: bool,
}

impl Default for NgramConfig {
    fn default() -> Self {
        NgramConfig {
            n: 4,
            include_punct: true,
        }
    }
}

/// Everything a run depends on. Loaded from TOML, then overridden by flags,
/// and written verbatim into each manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads; 0 lets the runtime decide.
    pub workers: usize,
    pub corpus: Option<PathBuf>,
    pub conllu: Option<PathBuf>,
    /// Metric table for train-eval; defaults to `<out_dir>/metrics.csv`.
    pub metrics: Option<PathBuf>,
    /// Directory of precomputed splits for train-eval.
    pub splits: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub runs: Vec<RunSpec>,
    pub resources: ResourcePaths,
    pub lexdiv: LexDivParams,
    pub split: SplitConfig,
    pub gbt: GbtParams,
    pub enet: EnetCvParams,
    pub tf: TfConfig,
    pub ngrams: NgramConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            workers: 0,
            corpus: None,
            conllu: None,
            metrics: None,
            splits: None,
            out_dir: PathBuf::from("out"),
            runs: vec![RunSpec {
                feature_set: FeatureSet::Metrics,
                model: ModelKind::Gbt,
            }],
            resources: ResourcePaths::default(),
            lexdiv: LexDivParams::default(),
            split: SplitConfig::default(),
            gbt: GbtParams::default(),
            enet: EnetCvParams::default(),
            tf: TfConfig::default(),
            ngrams: NgramConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    pub fn corpus(&self) -> Result<&Path, Failure> {
        self.corpus
            .as_deref()
            .ok_or_else(|| Failure::Usage("no corpus given (--corpus or `corpus` in the config)".into()))
    }

    pub fn metrics_path(&self) -> PathBuf {
        self.metrics.clone().unwrap_or_else(|| self.out_dir.join("metrics.csv"))
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let bad = |m: String| Err(Failure::Usage(m));
        if !(self.split.test_fraction > 0.0 && self.split.test_fraction < 1.0) {
            return bad(format!(
                "split.test_fraction {} outside (0, 1)",
                self.split.test_fraction
            ));
        }
        if !(0.0..1.0).contains(&self.tf.min_doc_frac) {
            return bad(format!("tf.min_doc_frac {} outside [0, 1)", self.tf.min_doc_frac));
        }
        if !(0.0..=1.0).contains(&self.enet.alpha) {
            return bad(format!("enet.alpha {} outside [0, 1]", self.enet.alpha));
        }
        if self.enet.n_folds < 2 {
            return bad("enet.n_folds must be at least 2".into());
        }
        if self.gbt.min_leaf == 0 || !(self.gbt.learning_rate > 0.0) {
            return bad("gbt.min_leaf must be positive and gbt.learning_rate > 0".into());
        }
        if self.ngrams.n == 0 {
            return bad("ngrams.n must be at least 1".into());
        }
        if self.runs.is_empty() {
            return bad("no runs configured".into());
        }
        Ok(())
    }
}
