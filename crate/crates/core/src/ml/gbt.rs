//! Gradient-boosted regression trees on the logistic loss.
//!
//! Trees are grown level by level with an exact greedy search over presorted
//! columns. Each candidate split between two adjacent distinct values `a < b`
//! uses the threshold `a + (b - a) / 2`; rows with `x <= threshold` go left.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_log_loss, sigmoid, FeatureMatrix, MODEL_SCHEMA_VERSION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GbtParams {
    pub max_depth: usize,
    pub learning_rate: f64,
    pub n_trees: usize,
    pub min_leaf: usize,
}

impl Default for GbtParams {
    fn default() -> Self {
        GbtParams {
            max_depth: 4,
            learning_rate: 0.01,
            n_trees: 100,
            min_leaf: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Leaf {
        weight: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        gain: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    fn weight(&self, row: &[f64]) -> f64 {
        let mut node = self;
        loop {
            match node {
                Node::Leaf { weight } => return *weight,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => node = if row[*feature] <= *threshold { left } else { right },
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Visits every split node as `(feature, threshold, gain)`.
    pub fn splits(&self, f: &mut impl FnMut(usize, f64, f64)) {
        if let Node::Split {
            feature,
            threshold,
            gain,
            left,
            right,
        } = self
        {
            f(*feature, *threshold, *gain);
            left.splits(f);
            right.splits(f);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbtModel {
    pub schema_version: u32,
    pub feature_names: Vec<String>,
    pub params: GbtParams,
    /// Log-odds of the training positive rate.
    pub base_score: f64,
    pub trees: Vec<Node>,
    pub gain_by_feature: BTreeMap<String, f64>,
    /// Mean training log-loss before the first tree and after each round.
    pub loss_history: Vec<f64>,
}

impl GbtModel {
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.feature_names.len() {
            return Err(Error::WidthMismatch {
                expected: self.feature_names.len(),
                got: row.len(),
            });
        }
        let sum: f64 = self.trees.iter().map(|t| t.weight(row)).sum();
        Ok(self.base_score + self.params.learning_rate * sum)
    }

    pub fn predict_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.par_iter().map(|r| gbt_predict(self, r)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn gbt_predict(model: &GbtModel, row: &[f64]) -> Result<f64> {
    Ok(sigmoid(model.margin(row)?))
}

/// Features by accumulated split gain, descending; ties in name order.
pub fn gbt_importance(model: &GbtModel, k: usize) -> Vec<(String, f64)> {
    let mut ranked: Vec<(String, f64)> = model.gain_by_feature.iter().map(|(n, &g)| (n.clone(), g)).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    ranked
}

#[derive(Debug, Clone, Copy, Default)]
struct Stats {
    g: f64,
    h: f64,
    n: usize,
}

impl Stats {
    fn add(&mut self, g: f64, h: f64) {
        self.g += g;
        self.h += h;
        self.n += 1;
    }

    fn score(&self) -> f64 {
        if self.h > 0.0 {
            self.g * self.g / self.h
        } else {
            0.0
        }
    }

    fn leaf_weight(&self) -> f64 {
        if self.h > 0.0 {
            -self.g / self.h
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

enum Slot {
    Open(Stats),
    Leaf(f64),
    Split { c: Candidate, left: usize, right: usize },
}

fn midpoint(a: f64, b: f64) -> f64 {
    let m = a + (b - a) / 2.0;
    if m < b {
        m
    } else {
        a
    }
}

/// Best split of each open node on one feature. `node_of[i]` is the open
/// slot holding row `i`, or `usize::MAX` once the row sits in a final leaf.
fn scan_feature(
    feature: usize,
    order: &[usize],
    column: &[f64],
    node_of: &[usize],
    totals: &[Option<Stats>],
    g: &[f64],
    h: &[f64],
    min_leaf: usize,
) -> Vec<Option<Candidate>> {
    let mut best: Vec<Option<Candidate>> = vec![None; totals.len()];
    let mut left: Vec<Stats> = vec![Stats::default(); totals.len()];
    let mut last: Vec<Option<f64>> = vec![None; totals.len()];
    for &i in order {
        let slot = node_of[i];
        let Some(total) = totals.get(slot).copied().flatten() else {
            continue;
        };
        let x = column[i];
        if let Some(prev) = last[slot] {
            let l = left[slot];
            if x > prev && l.n >= min_leaf && total.n - l.n >= min_leaf {
                let r = Stats {
                    g: total.g - l.g,
                    h: total.h - l.h,
                    n: total.n - l.n,
                };
                if l.h > 0.0 && r.h > 0.0 {
                    let gain = 0.5 * (l.score() + r.score() - total.score());
                    if best[slot].is_none_or(|b| gain > b.gain) {
                        best[slot] = Some(Candidate {
                            feature,
                            threshold: midpoint(prev, x),
                            gain,
                        });
                    }
                }
            }
        }
        left[slot].add(g[i], h[i]);
        last[slot] = Some(x);
    }
    best
}

fn grow_tree(
    fm: &FeatureMatrix,
    sorted: &[Vec<usize>],
    columns: &[Vec<f64>],
    g: &[f64],
    h: &[f64],
    params: &GbtParams,
) -> Node {
    let n = fm.n_rows();
    let mut root = Stats::default();
    for i in 0..n {
        root.add(g[i], h[i]);
    }
    let mut slots = vec![Slot::Open(root)];
    let mut node_of = vec![0usize; n];
    let mut frontier = vec![0usize];

    for depth in 0..=params.max_depth {
        if frontier.is_empty() {
            break;
        }
        let mut totals: Vec<Option<Stats>> = vec![None; slots.len()];
        for &s in &frontier {
            if let Slot::Open(st) = slots[s] {
                totals[s] = Some(st);
            }
        }
        let best: Vec<Option<Candidate>> = if depth == params.max_depth {
            vec![None; slots.len()]
        } else {
            let per_feature: Vec<Vec<Option<Candidate>>> = (0..fm.n_features())
                .into_par_iter()
                .map(|j| scan_feature(j, &sorted[j], &columns[j], &node_of, &totals, g, h, params.min_leaf))
                .collect();
            // combined in feature order: strict `>` keeps the lowest index on ties
            let mut best = vec![None; slots.len()];
            for cands in per_feature {
                for (s, c) in cands.into_iter().enumerate() {
                    if let Some(c) = c {
                        if best[s].is_none_or(|b: Candidate| c.gain > b.gain) {
                            best[s] = Some(c);
                        }
                    }
                }
            }
            best
        };

        let mut next = Vec::new();
        let mut child_of: Vec<Option<(usize, usize)>> = vec![None; slots.len()];
        for &s in &frontier {
            let Slot::Open(st) = slots[s] else { unreachable!() };
            match best[s] {
                Some(c) if c.gain > 0.0 => {
                    let (l, r) = (slots.len(), slots.len() + 1);
                    slots.push(Slot::Open(Stats::default()));
                    slots.push(Slot::Open(Stats::default()));
                    slots[s] = Slot::Split { c, left: l, right: r };
                    child_of[s] = Some((l, r));
                    next.extend([l, r]);
                }
                _ => slots[s] = Slot::Leaf(st.leaf_weight()),
            }
        }
        for i in 0..n {
            let s = node_of[i];
            if s == usize::MAX {
                continue;
            }
            match child_of.get(s).copied().flatten() {
                Some((l, r)) => {
                    let Slot::Split { c, .. } = slots[s] else {
                        unreachable!()
                    };
                    let child = if columns[c.feature][i] <= c.threshold { l } else { r };
                    node_of[i] = child;
                    if let Slot::Open(st) = &mut slots[child] {
                        st.add(g[i], h[i]);
                    }
                }
                None => node_of[i] = usize::MAX,
            }
        }
        frontier = next;
    }
    build_node(&slots, 0)
}

fn build_node(slots: &[Slot], s: usize) -> Node {
    match &slots[s] {
        Slot::Leaf(w) => Node::Leaf { weight: *w },
        Slot::Open(st) => Node::Leaf {
            weight: st.leaf_weight(),
        },
        Slot::Split { c, left, right } => Node::Split {
            feature: c.feature,
            threshold: c.threshold,
            gain: c.gain,
            left: Box::new(build_node(slots, *left)),
            right: Box::new(build_node(slots, *right)),
        },
    }
}

pub fn gbt_train(fm: &FeatureMatrix, params: &GbtParams) -> Result<GbtModel> {
    fm.validate()?;
    if !(params.learning_rate > 0.0 && params.learning_rate.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "learning rate {}",
            params.learning_rate
        )));
    }
    if params.min_leaf == 0 {
        return Err(Error::InvalidParameter("min_leaf must be at least 1".into()));
    }
    if fm.rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("feature matrix has non-finite values".into()));
    }
    let n = fm.n_rows();
    let positives = fm.labels.iter().filter(|&&y| y == 1).count();
    if positives == 0 || positives == n {
        return Err(Error::DegenerateLabels(format!("{n} rows of a single class")));
    }
    if positives < 2 || n - positives < 2 {
        return Err(Error::InsufficientData(format!(
            "{positives} positive and {} negative rows; need 2 of each",
            n - positives
        )));
    }

    let columns: Vec<Vec<f64>> = (0..fm.n_features()).map(|j| fm.column(j)).collect();
    let sorted: Vec<Vec<usize>> = columns
        .iter()
        .map(|col| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| col[a].total_cmp(&col[b]).then(a.cmp(&b)));
            idx
        })
        .collect();

    let rate = positives as f64 / n as f64;
    let base_score = (rate / (1.0 - rate)).ln();
    let mut margin = vec![base_score; n];
    let mut loss_history = vec![mean_log_loss(&margin, &fm.labels)];
    let mut gains = vec![0.0; fm.n_features()];
    let mut trees = Vec::with_capacity(params.n_trees);
    let mut g = vec![0.0; n];
    let mut h = vec![0.0; n];

    for _ in 0..params.n_trees {
        for i in 0..n {
            let p = sigmoid(margin[i]);
            g[i] = p - f64::from(fm.labels[i]);
            h[i] = p * (1.0 - p);
        }
        let tree = grow_tree(fm, &sorted, &columns, &g, &h, params);
        tree.splits(&mut |f, _, gain| gains[f] += gain);
        for (i, m) in margin.iter_mut().enumerate() {
            *m += params.learning_rate * tree.weight(&fm.rows[i]);
        }
        loss_history.push(mean_log_loss(&margin, &fm.labels));
        trees.push(tree);
    }

    Ok(GbtModel {
        schema_version: MODEL_SCHEMA_VERSION,
        feature_names: fm.feature_names.clone(),
        params: *params,
        base_score,
        trees,
        gain_by_feature: fm.feature_names.iter().cloned().zip(gains).collect(),
        loss_history,
    })
}
