use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

fn distinct(tokens: &[String]) -> usize {
    tokens.iter().map(|t| t.to_lowercase()).collect::<HashSet<_>>().len()
}

/// Mean over all positive/negative pairs of `[s+ > s-] + ½[s+ = s-]`.
pub fn auc_pairs(scores: &[f64], labels: &[u8]) -> f64 {
    let mut total = 0.0;
    let mut pairs = 0usize;
    for (i, &si) in scores.iter().enumerate() {
        for (j, &sj) in scores.iter().enumerate() {
            if labels[i] == 1 && labels[j] == 0 {
                pairs += 1;
                if si > sj {
                    total += 1.0;
                } else if si == sj {
                    total += 0.5;
                }
            }
        }
    }
    total / pairs as f64
}

/// Expected distinct types in a random `sample`-token draw without
/// replacement, divided by `sample`, estimated from `draws` draws.
pub fn hdd_monte_carlo<R: Rng>(tokens: &[String], sample: usize, draws: usize, rng: &mut R) -> f64 {
    let mut pool: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let mut total = 0usize;
    for _ in 0..draws {
        let (picked, _) = pool.partial_shuffle(rng, sample);
        total += picked.iter().collect::<HashSet<_>>().len();
    }
    total as f64 / draws as f64 / sample as f64
}

pub fn msttr(tokens: &[String], segment: usize) -> f64 {
    let segments: Vec<f64> = tokens
        .chunks(segment)
        .filter(|c| c.len() == segment)
        .map(|c| distinct(c) as f64 / segment as f64)
        .collect();
    segments.iter().sum::<f64>() / segments.len() as f64
}

pub fn mattr(tokens: &[String], window: usize) -> f64 {
    let windows: Vec<f64> = tokens
        .windows(window)
        .map(|w| distinct(w) as f64 / window as f64)
        .collect();
    windows.iter().sum::<f64>() / windows.len() as f64
}

/// One MTLD pass written as the textbook loop: grow a segment one token at
/// a time, recompute its TTR from scratch, cut when it falls to the threshold.
fn mtld_pass(tokens: &[String], threshold: f64) -> f64 {
    let mut factors = 0.0;
    let mut segment: Vec<String> = Vec::new();
    for t in tokens {
        segment.push(t.clone());
        let ttr = distinct(&segment) as f64 / segment.len() as f64;
        if ttr <= threshold {
            factors += 1.0;
            segment.clear();
        }
    }
    if !segment.is_empty() {
        let ttr = distinct(&segment) as f64 / segment.len() as f64;
        factors += (1.0 - ttr) / (1.0 - threshold);
    }
    factors
}

/// Mean of forward and backward `N / factors` over passes with factors > 0.
pub fn mtld(tokens: &[String], threshold: f64) -> Option<f64> {
    let reversed: Vec<String> = tokens.iter().rev().cloned().collect();
    let n = tokens.len() as f64;
    let values: Vec<f64> = [mtld_pass(tokens, threshold), mtld_pass(&reversed, threshold)]
        .into_iter()
        .filter(|&f| f > 0.0)
        .map(|f| n / f)
        .collect();
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// For each start, the first length whose TTR reaches the threshold; the
/// mean over starts that reach it.
pub fn mtld_ma(tokens: &[String], threshold: f64) -> Option<f64> {
    let lengths: Vec<usize> = (0..tokens.len())
        .filter_map(|s| {
            (1..=tokens.len() - s).find(|&len| distinct(&tokens[s..s + len]) as f64 / len as f64 <= threshold)
        })
        .collect();
    (!lengths.is_empty()).then(|| lengths.iter().sum::<usize>() as f64 / lengths.len() as f64)
}

/// Word counts per document for whitespace-separated lowercase texts.
pub fn count_table(texts: &[&str]) -> (Vec<String>, Vec<Vec<f64>>) {
    let per_doc: Vec<BTreeMap<&str, usize>> = texts
        .iter()
        .map(|t| {
            let mut m = BTreeMap::new();
            for w in t.split_whitespace() {
                *m.entry(w).or_insert(0) += 1;
            }
            m
        })
        .collect();
    let mut vocab: Vec<String> = per_doc.iter().flat_map(|m| m.keys().map(|k| k.to_string())).collect();
    vocab.sort();
    vocab.dedup();
    let rows = per_doc
        .iter()
        .map(|m| {
            vocab
                .iter()
                .map(|v| m.get(v.as_str()).copied().unwrap_or(0) as f64)
                .collect()
        })
        .collect();
    (vocab, rows)
}

/// Unpenalized logistic regression on one feature by Newton's method;
/// returns `(intercept, slope)`.
pub fn logistic_fit_1d(x: &[f64], y: &[u8]) -> (f64, f64) {
    let (mut b0, mut b1) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (mut g0, mut g1, mut h00, mut h01, mut h11) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (&xi, &yi) in x.iter().zip(y) {
            let p = 1.0 / (1.0 + (-(b0 + b1 * xi)).exp());
            let r = p - f64::from(yi);
            let w = p * (1.0 - p);
            g0 += r;
            g1 += r * xi;
            h00 += w;
            h01 += w * xi;
            h11 += w * xi * xi;
        }
        let det = h00 * h11 - h01 * h01;
        let d0 = (h11 * g0 - h01 * g1) / det;
        let d1 = (h00 * g1 - h01 * g0) / det;
        b0 -= d0;
        b1 -= d1;
        if d0.abs().max(d1.abs()) < 1e-12 {
            break;
        }
    }
    (b0, b1)
}
