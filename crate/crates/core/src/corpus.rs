//! Corpus model: CEFR levels, documents, adjacent-level tasks and
//! topic-grouped train/test splits.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::syntax::AnnotatedDoc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Level {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl Level {
    pub const ALL: [Level; 6] = [Level::A1, Level::A2, Level::B1, Level::B2, Level::C1, Level::C2];

    /// 1 for A1 through 6 for C2.
    pub fn rank(self) -> u8 {
        self as u8 + 1
    }

    pub fn successor(self) -> Option<Level> {
        Level::ALL.get(self.rank() as usize).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Level::A1 => "A1",
            Level::A2 => "A2",
            Level::B1 => "B1",
            Level::B2 => "B2",
            Level::C1 => "C1",
            Level::C2 => "C2",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Level::ALL
            .into_iter()
            .find(|l| l.as_str() == upper)
            .ok_or_else(|| Error::UnknownLevel(s.to_string()))
    }
}

impl From<Level> for String {
    fn from(l: Level) -> String {
        l.as_str().to_string()
    }
}

impl TryFrom<String> for Level {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// One learner essay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub level: Level,
    pub topic: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learner: Option<String>,
    #[serde(skip)]
    pub annotation: Option<AnnotatedDoc>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>, level: Level, topic: impl Into<String>) -> Result<Self> {
        let doc = Document {
            id: id.into(),
            text: text.into(),
            level,
            topic: topic.into(),
            learner: None,
            annotation: None,
        };
        doc.check()?;
        Ok(doc)
    }

    fn check(&self) -> Result<()> {
        if self.text.trim().is_empty() {
            return Err(Error::EmptyText);
        }
        if self.topic.trim().is_empty() {
            return Err(Error::EmptyTopic);
        }
        Ok(())
    }
}

/// Fails on the first repeated document id.
pub fn check_unique_ids(docs: &[Document]) -> Result<()> {
    let mut seen = HashSet::new();
    for d in docs {
        if !seen.insert(d.id.as_str()) {
            return Err(Error::DuplicateId(d.id.clone()));
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct JsonRecord {
    text: String,
    level: String,
    topic: String,
    #[serde(default)]
    id: Option<serde_json::Value>,
    #[serde(default)]
    learner: Option<serde_json::Value>,
}

fn value_to_string(v: serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

/// Parses JSONL corpus text: one object per line with `text`, `level`,
/// `topic` and optional `id` and `learner`. Blank lines are skipped; a
/// missing id becomes the 1-based line number.
pub fn parse_jsonl(contents: &str) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (idx, line) in contents.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let at_line = |message: String| Error::Line { line: line_no, message };
        let record: JsonRecord = serde_json::from_str(line).map_err(|e| at_line(e.to_string()))?;
        let level: Level = record.level.parse().map_err(|e: Error| at_line(e.to_string()))?;
        let doc = Document {
            id: record.id.map(value_to_string).unwrap_or_else(|| line_no.to_string()),
            text: record.text,
            level,
            topic: record.topic,
            learner: record.learner.map(value_to_string),
            annotation: None,
        };
        doc.check().map_err(|e| at_line(e.to_string()))?;
        docs.push(doc);
    }
    check_unique_ids(&docs)?;
    Ok(docs)
}

pub fn ingest_jsonl(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_jsonl(&contents)
}

/// Writes documents as JSONL (annotations are not part of the format).
pub fn write_jsonl(docs: &[Document], mut out: impl std::io::Write) -> std::io::Result<()> {
    for d in docs {
        let line = serde_json::to_string(d).map_err(std::io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn sorted_entries(dir: &Path) -> Result<Vec<std::fs::DirEntry>> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .collect::<std::io::Result<_>>()
        .map_err(|e| Error::io(dir, e))?;
    entries.sort_by_key(|e| e.file_name());
    Ok(entries)
}

/// Reads `root/<LEVEL>/<topic>/<file>.txt`; the id is the path relative to `root`.
pub fn ingest_plaintext_dir(root: impl AsRef<Path>) -> Result<Vec<Document>> {
    let root = root.as_ref();
    let mut docs = Vec::new();
    for level_entry in sorted_entries(root)? {
        let level_path = level_entry.path();
        if !level_path.is_dir() {
            continue;
        }
        let level_name = level_entry.file_name().to_string_lossy().into_owned();
        let level: Level = level_name.parse()?;
        for topic_entry in sorted_entries(&level_path)? {
            let topic_path = topic_entry.path();
            if !topic_path.is_dir() {
                log::warn!("ignoring {} outside a topic directory", topic_path.display());
                continue;
            }
            let topic = topic_entry.file_name().to_string_lossy().into_owned();
            for file in sorted_entries(&topic_path)? {
                let path = file.path();
                if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some("txt") {
                    continue;
                }
                let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let id = format!("{level_name}/{topic}/{}", file.file_name().to_string_lossy());
                let doc = Document::new(id, text, level, topic.clone()).map_err(|e| Error::Line {
                    line: 0,
                    message: format!("{}: {e}", path.display()),
                })?;
                docs.push(doc);
            }
        }
    }
    Ok(docs)
}

/// Attaches annotations by document id; returns the number of documents matched.
pub fn attach_annotations(docs: &mut [Document], annotations: Vec<AnnotatedDoc>) -> usize {
    let mut by_id: HashMap<String, AnnotatedDoc> = annotations.into_iter().map(|a| (a.id.clone(), a)).collect();
    let mut matched = 0;
    for d in docs.iter_mut() {
        if let Some(a) = by_id.remove(&d.id) {
            d.annotation = Some(a);
            matched += 1;
        }
    }
    matched
}

pub fn level_counts(docs: &[Document]) -> BTreeMap<Level, usize> {
    let mut counts = BTreeMap::new();
    for d in docs {
        *counts.entry(d.level).or_default() += 1;
    }
    counts
}

/// An adjacent-level binary task; the upper level is the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PairTask {
    lower: Level,
    upper: Level,
}

impl PairTask {
    pub fn new(lower: Level, upper: Level) -> Result<Self> {
        if lower.successor() != Some(upper) {
            return Err(Error::InvalidParameter(format!(
                "{upper} is not the level after {lower}"
            )));
        }
        Ok(PairTask { lower, upper })
    }

    /// A1=>A2, A2=>B1, B1=>B2, B2=>C1, C1=>C2.
    pub fn all() -> Vec<PairTask> {
        Level::ALL
            .windows(2)
            .map(|w| PairTask {
                lower: w[0],
                upper: w[1],
            })
            .collect()
    }

    pub fn lower(self) -> Level {
        self.lower
    }

    pub fn upper(self) -> Level {
        self.upper
    }

    pub fn label(self, level: Level) -> Option<u8> {
        if level == self.upper {
            Some(1)
        } else if level == self.lower {
            Some(0)
        } else {
            None
        }
    }

    /// File-name friendly form, e.g. `A1_A2`.
    pub fn slug(self) -> String {
        format!("{}_{}", self.lower, self.upper)
    }
}

impl fmt::Display for PairTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=>{}", self.lower, self.upper)
    }
}

impl FromStr for PairTask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once("=>")
            .or_else(|| s.split_once('_'))
            .or_else(|| s.split_once('-'))
            .ok_or_else(|| Error::InvalidParameter(format!("bad task {s:?}, expected e.g. A1=>A2")))?;
        PairTask::new(a.parse()?, b.parse()?)
    }
}

impl From<PairTask> for String {
    fn from(t: PairTask) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for PairTask {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Documents of one task, in corpus order, with 0/1 labels.
#[derive(Debug, Clone)]
pub struct PairDataset<'a> {
    pub task: PairTask,
    pub docs: Vec<&'a Document>,
    pub labels: Vec<u8>,
}

impl PairDataset<'_> {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }
}

pub fn pairwise_dataset(corpus: &[Document], task: PairTask) -> Result<PairDataset<'_>> {
    let mut docs = Vec::new();
    let mut labels = Vec::new();
    for d in corpus {
        if let Some(label) = task.label(d.level) {
            docs.push(d);
            labels.push(label);
        }
    }
    let positives = labels.iter().filter(|&&l| l == 1).count();
    let negatives = labels.len() - positives;
    if positives < 2 || negatives < 2 {
        return Err(Error::InsufficientData(format!(
            "{task}: {negatives} {} and {positives} {} documents",
            task.lower, task.upper
        )));
    }
    Ok(PairDataset { task, docs, labels })
}

/// Train/test partition of document ids. Within each side ids keep input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub seed: u64,
    pub test_fraction: f64,
    pub train: Vec<String>,
    pub test: Vec<String>,
}

impl Split {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("split serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Shuffles the distinct topics with a seeded generator and moves whole
/// topics into the test side until it holds at least `test_fraction` of the
/// documents. At least one topic always stays in training.
pub fn topic_grouped_split<'a>(
    docs: impl IntoIterator<Item = &'a Document>,
    test_fraction: f64,
    seed: u64,
) -> Result<Split> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "test fraction {test_fraction} outside (0, 1)"
        )));
    }
    let docs: Vec<&Document> = docs.into_iter().collect();
    let mut topics: Vec<&str> = Vec::new();
    let mut sizes: HashMap<&str, usize> = HashMap::new();
    for d in &docs {
        let size = sizes.entry(d.topic.as_str()).or_insert(0);
        if *size == 0 {
            topics.push(d.topic.as_str());
        }
        *size += 1;
    }
    if topics.len() < 2 {
        return Err(Error::CannotSplit(format!("{} distinct topic(s)", topics.len())));
    }

    topics.shuffle(&mut seed::rng(seed));
    let target = test_fraction * docs.len() as f64;
    let mut test_topics: HashSet<&str> = HashSet::new();
    let mut test_count = 0usize;
    for (i, topic) in topics.iter().enumerate() {
        if (test_count as f64) >= target || i == topics.len() - 1 {
            break;
        }
        test_topics.insert(topic);
        test_count += sizes[topic];
    }

    let (test, train): (Vec<&Document>, Vec<&Document>) =
        docs.iter().partition(|d| test_topics.contains(d.topic.as_str()));
    Ok(Split {
        seed,
        test_fraction,
        train: train.into_iter().map(|d| d.id.clone()).collect(),
        test: test.into_iter().map(|d| d.id.clone()).collect(),
    })
}
