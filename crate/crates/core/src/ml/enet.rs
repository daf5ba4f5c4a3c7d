//! Elastic-net penalized logistic regression.
//!
//! Minimizes `(1/n) Σ nll_i + λ (α ‖β‖₁ + (1 − α)/2 ‖β‖²)` over standardized
//! columns, where `nll_i` is the per-row negative log-likelihood. Each outer
//! iteration builds the IRLS quadratic approximation, solves it by cyclic
//! coordinate descent with soft-thresholding, and backtracks along the
//! resulting direction until the objective does not increase.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_log_loss, sigmoid, FeatureMatrix, MODEL_SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::seed;

const MIN_WEIGHT: f64 = 1e-5;
const MAX_INNER_SWEEPS: usize = 10_000;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnetParams {
    pub lambda: f64,
    pub alpha: f64,
    /// Outer (Newton) iterations.
    pub max_iter: usize,
    /// Convergence threshold on the largest coefficient change.
    pub tol: f64,
}

impl Default for EnetParams {
    fn default() -> Self {
        EnetParams {
            lambda: 0.01,
            alpha: 0.5,
            max_iter: 100,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnetModel {
    pub schema_version: u32,
    pub feature_names: Vec<String>,
    /// Coefficients of the standardized columns; 0 for constant columns.
    pub beta: Vec<f64>,
    pub intercept: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub feature_means: Vec<f64>,
    /// Population standard deviations; 1 for constant columns.
    pub feature_scales: Vec<f64>,
    pub constant_features: Vec<String>,
    pub iterations: usize,
}

impl EnetModel {
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.beta.len() {
            return Err(Error::WidthMismatch {
                expected: self.beta.len(),
                got: row.len(),
            });
        }
        let mut eta = self.intercept;
        for (j, &x) in row.iter().enumerate() {
            if self.beta[j] != 0.0 {
                eta += self.beta[j] * (x - self.feature_means[j]) / self.feature_scales[j];
            }
        }
        Ok(eta)
    }

    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        Ok(sigmoid(self.margin(row)?))
    }

    pub fn predict_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    pub fn nonzero(&self) -> usize {
        self.beta.iter().filter(|&&b| b != 0.0).count()
    }

    /// Features by |β| descending, nonzero only; ties in name order.
    pub fn ranked_coefficients(&self, k: usize) -> Vec<(String, f64)> {
        let mut ranked: Vec<(String, f64)> = self
            .feature_names
            .iter()
            .zip(&self.beta)
            .filter(|(_, &b)| b != 0.0)
            .map(|(n, &b)| (n.clone(), b))
            .collect();
        ranked.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then_with(|| a.0.cmp(&b.0)));
        ranked.truncate(k);
        ranked
    }

    /// Largest violation of the optimality conditions on `fm`, which must be
    /// the training matrix. For each column with gradient
    /// `g_j = (1/n)⟨z_j, y − p⟩ − λ(1 − α)β_j`: `|g_j| ≤ λα` when `β_j = 0`,
    /// else `g_j = λα·sign(β_j)`. The intercept needs `mean(y − p) = 0`.
    pub fn kkt_residual(&self, fm: &FeatureMatrix) -> Result<f64> {
        let n = fm.n_rows() as f64;
        let resid: Vec<f64> = fm
            .rows
            .iter()
            .zip(&fm.labels)
            .map(|(r, &y)| Ok(f64::from(y) - self.predict(r)?))
            .collect::<Result<_>>()?;
        let mut worst = (resid.iter().sum::<f64>() / n).abs();
        let l1 = self.lambda * self.alpha;
        for j in 0..self.beta.len() {
            if self.constant_features.contains(&self.feature_names[j]) {
                continue;
            }
            let (m, s) = (self.feature_means[j], self.feature_scales[j]);
            let dot: f64 = fm.rows.iter().zip(&resid).map(|(r, e)| (r[j] - m) / s * e).sum();
            let g = dot / n - self.lambda * (1.0 - self.alpha) * self.beta[j];
            let violation = if self.beta[j] == 0.0 {
                (g.abs() - l1).max(0.0)
            } else {
                (g - l1 * self.beta[j].signum()).abs()
            };
            worst = worst.max(violation);
        }
        Ok(worst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Standardized design with the non-constant columns stored column-major.
struct Problem<'a> {
    fm: &'a FeatureMatrix,
    means: Vec<f64>,
    scales: Vec<f64>,
    active: Vec<usize>,
    z: Vec<Vec<f64>>,
    y: Vec<f64>,
}

impl<'a> Problem<'a> {
    fn new(fm: &'a FeatureMatrix) -> Result<Self> {
        fm.validate()?;
        let n = fm.n_rows();
        let positives = fm.labels.iter().filter(|&&l| l == 1).count();
        if positives == 0 || positives == n {
            return Err(Error::DegenerateLabels(format!("{n} rows of a single class")));
        }
        if fm.rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("feature matrix has non-finite values".into()));
        }
        let nf = n as f64;
        let mut means = Vec::with_capacity(fm.n_features());
        let mut scales = Vec::with_capacity(fm.n_features());
        let mut active = Vec::new();
        let mut z = Vec::new();
        for j in 0..fm.n_features() {
            let col = fm.column(j);
            let mean = col.iter().sum::<f64>() / nf;
            let sd = (col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / nf).sqrt();
            means.push(mean);
            if sd > 1e-12 * mean.abs().max(1.0) {
                scales.push(sd);
                active.push(j);
                z.push(col.iter().map(|x| (x - mean) / sd).collect());
            } else {
                scales.push(1.0);
            }
        }
        let y = fm.labels.iter().map(|&l| f64::from(l)).collect();
        Ok(Problem {
            fm,
            means,
            scales,
            active,
            z,
            y,
        })
    }

    fn n(&self) -> f64 {
        self.y.len() as f64
    }

    fn lambda_max(&self, alpha: f64) -> f64 {
        let ybar = self.y.iter().sum::<f64>() / self.n();
        let alpha = alpha.max(1e-3);
        self.z
            .iter()
            .map(|zj| zj.iter().zip(&self.y).map(|(z, y)| z * (y - ybar)).sum::<f64>().abs())
            .fold(0.0, f64::max)
            / (self.n() * alpha)
    }

    fn null_intercept(&self) -> f64 {
        let ybar = self.y.iter().sum::<f64>() / self.n();
        (ybar / (1.0 - ybar)).ln()
    }

    fn eta(&self, b0: f64, beta: &[f64]) -> Vec<f64> {
        let mut eta = vec![b0; self.y.len()];
        for (k, zk) in self.z.iter().enumerate() {
            if beta[k] != 0.0 {
                for (e, z) in eta.iter_mut().zip(zk) {
                    *e += beta[k] * z;
                }
            }
        }
        eta
    }

    fn penalty(beta: &[f64], lambda: f64, alpha: f64) -> f64 {
        let l1: f64 = beta.iter().map(|b| b.abs()).sum();
        let l2: f64 = beta.iter().map(|b| b * b).sum();
        lambda * (alpha * l1 + (1.0 - alpha) / 2.0 * l2)
    }

    fn objective(&self, b0: f64, beta: &[f64], lambda: f64, alpha: f64) -> f64 {
        mean_log_loss(&self.eta(b0, beta), &self.fm.labels) + Self::penalty(beta, lambda, alpha)
    }

    /// Solves at one λ starting from `(b0, beta)` (active-column coefficients).
    fn solve(&self, lambda: f64, params: &EnetParams, b0: &mut f64, beta: &mut [f64]) -> Result<usize> {
        let n = self.n();
        let l1 = lambda * params.alpha;
        let l2 = lambda * (1.0 - params.alpha);
        let inner_tol = params.tol * 0.01;
        let mut objective = self.objective(*b0, beta, lambda, params.alpha);
        let mut gap = f64::INFINITY;

        for iteration in 1..=params.max_iter {
            let eta = self.eta(*b0, beta);
            let mut w = Vec::with_capacity(eta.len());
            // r holds the working residual z_i − η̃_i of the quadratic model
            let mut r = Vec::with_capacity(eta.len());
            for (e, y) in eta.iter().zip(&self.y) {
                let p = sigmoid(*e);
                let wi = (p * (1.0 - p)).max(MIN_WEIGHT);
                w.push(wi);
                r.push((y - p) / wi);
            }
            let w_sum: f64 = w.iter().sum();
            let xw2: Vec<f64> = self
                .z
                .iter()
                .map(|zk| zk.iter().zip(&w).map(|(z, wi)| wi * z * z).sum::<f64>() / n)
                .collect();

            let mut nb0 = *b0;
            let mut nbeta = beta.to_vec();
            for _ in 0..MAX_INNER_SWEEPS {
                let mut max_change = 0.0f64;
                let shift = r.iter().zip(&w).map(|(ri, wi)| wi * ri).sum::<f64>() / w_sum;
                if shift != 0.0 {
                    nb0 += shift;
                    r.iter_mut().for_each(|ri| *ri -= shift);
                    max_change = max_change.max(shift.abs());
                }
                for (k, zk) in self.z.iter().enumerate() {
                    let old = nbeta[k];
                    let u = zk.iter().zip(&r).zip(&w).map(|((z, ri), wi)| wi * z * ri).sum::<f64>() / n + xw2[k] * old;
                    let new = soft_threshold(u, l1) / (xw2[k] + l2);
                    if new != old {
                        let d = new - old;
                        for (ri, z) in r.iter_mut().zip(zk) {
                            *ri -= d * z;
                        }
                        nbeta[k] = new;
                        max_change = max_change.max(d.abs());
                    }
                }
                if max_change < inner_tol {
                    break;
                }
            }

            let d0 = nb0 - *b0;
            let d: Vec<f64> = nbeta.iter().zip(beta.iter()).map(|(a, b)| a - b).collect();
            let mut t = 1.0;
            let mut accepted = false;
            let slack = 1e-13 * objective.abs().max(1.0);
            for _ in 0..MAX_HALVINGS {
                let cb0 = *b0 + t * d0;
                let cbeta: Vec<f64> = beta.iter().zip(&d).map(|(b, di)| b + t * di).collect();
                let cand = self.objective(cb0, &cbeta, lambda, params.alpha);
                if cand <= objective + slack {
                    gap = cbeta
                        .iter()
                        .zip(beta.iter())
                        .map(|(a, b)| (a - b).abs())
                        .fold((cb0 - *b0).abs(), f64::max);
                    *b0 = cb0;
                    beta.copy_from_slice(&cbeta);
                    objective = cand;
                    accepted = true;
                    break;
                }
                t /= 2.0;
            }
            if !accepted {
                gap = d.iter().map(|x| x.abs()).fold(d0.abs(), f64::max) * t;
            }
            if gap < params.tol {
                // exact zeros from the last full step survive a fractional one
                for (b, nb) in beta.iter_mut().zip(&nbeta) {
                    if *nb == 0.0 {
                        *b = 0.0;
                    }
                }
                return Ok(iteration);
            }
        }
        Err(Error::NotConverged {
            iterations: params.max_iter,
            gap,
        })
    }

    fn model(&self, b0: f64, beta_active: &[f64], lambda: f64, alpha: f64, iterations: usize) -> EnetModel {
        let mut beta = vec![0.0; self.fm.n_features()];
        for (k, &j) in self.active.iter().enumerate() {
            beta[j] = beta_active[k];
        }
        let constant_features = (0..self.fm.n_features())
            .filter(|j| !self.active.contains(j))
            .map(|j| self.fm.feature_names[j].clone())
            .collect();
        EnetModel {
            schema_version: MODEL_SCHEMA_VERSION,
            feature_names: self.fm.feature_names.clone(),
            beta,
            intercept: b0,
            lambda,
            alpha,
            feature_means: self.means.clone(),
            feature_scales: self.scales.clone(),
            constant_features,
            iterations,
        }
    }

    /// Fits each λ in order, warm-starting from the previous solution.
    fn path(&self, lambdas: &[f64], params: &EnetParams) -> Result<Vec<EnetModel>> {
        check_params(params)?;
        let lmax = self.lambda_max(params.alpha);
        let mut b0 = self.null_intercept();
        let mut beta = vec![0.0; self.active.len()];
        let mut models = Vec::with_capacity(lambdas.len());
        for &lambda in lambdas {
            if !(lambda >= 0.0 && lambda.is_finite()) {
                return Err(Error::InvalidParameter(format!("lambda {lambda}")));
            }
            let iterations = if params.alpha > 0.0 && lambda >= lmax {
                b0 = self.null_intercept();
                beta.iter_mut().for_each(|b| *b = 0.0);
                0
            } else {
                self.solve(lambda, params, &mut b0, &mut beta)?
            };
            models.push(self.model(b0, &beta, lambda, params.alpha, iterations));
        }
        Ok(models)
    }
}

fn soft_threshold(u: f64, t: f64) -> f64 {
    if u > t {
        u - t
    } else if u < -t {
        u + t
    } else {
        0.0
    }
}

fn check_params(params: &EnetParams) -> Result<()> {
    if !(0.0..=1.0).contains(&params.alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha {} outside [0, 1]",
            params.alpha
        )));
    }
    if !(params.tol > 0.0) || params.max_iter == 0 {
        return Err(Error::InvalidParameter(
            "tol must be positive and max_iter at least 1".into(),
        ));
    }
    Ok(())
}

/// Smallest λ at which every coefficient is zero:
/// `max_j |⟨z_j, y − ȳ⟩| / (n α)` over standardized columns. For `α = 0` the
/// value at `α = 0.001` is returned so that a path can still be anchored.
pub fn lambda_max(fm: &FeatureMatrix, alpha: f64) -> Result<f64> {
    Ok(Problem::new(fm)?.lambda_max(alpha))
}

pub fn enet_train(fm: &FeatureMatrix, params: &EnetParams) -> Result<EnetModel> {
    let problem = Problem::new(fm)?;
    Ok(problem.path(&[params.lambda], params)?.remove(0))
}

/// Fits a decreasing sequence of λ values with warm starts. `params.lambda`
/// is ignored.
pub fn enet_path(fm: &FeatureMatrix, lambdas: &[f64], params: &EnetParams) -> Result<Vec<EnetModel>> {
    Problem::new(fm)?.path(lambdas, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnetCvParams {
    pub alpha: f64,
    pub n_folds: usize,
    pub n_lambdas: usize,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for EnetCvParams {
    fn default() -> Self {
        EnetCvParams {
            alpha: 0.5,
            n_folds: 5,
            n_lambdas: 30,
            max_iter: 100,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub lambda: f64,
    pub lambdas: Vec<f64>,
    /// Mean validation deviance per λ over the usable folds.
    pub cv_deviance: Vec<f64>,
    pub folds_used: usize,
    pub model: EnetModel,
}

/// Stratified fold index per row: each class is shuffled and dealt round-robin.
fn stratified_folds(labels: &[u8], n_folds: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut fold = vec![0; labels.len()];
    for class in [0u8, 1] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut seed::rng(seed::derive(seed, &format!("fold-class-{class}"))));
        for (k, &i) in idx.iter().enumerate() {
            fold[i] = k % n_folds;
        }
    }
    fold
}

/// Picks λ by stratified k-fold cross-validation over a log-spaced path from
/// `λ_max` to `λ_max / 1000`, minimizing mean validation deviance (ties go
/// to the larger λ), then refits on all rows.
pub fn enet_cv(fm: &FeatureMatrix, params: &EnetCvParams, seed: u64) -> Result<CvResult> {
    if params.n_folds < 2 {
        return Err(Error::InvalidParameter("n_folds must be at least 2".into()));
    }
    if params.n_lambdas == 0 {
        return Err(Error::InvalidParameter("n_lambdas must be at least 1".into()));
    }
    let problem = Problem::new(fm)?;
    let solver = EnetParams {
        lambda: 0.0,
        alpha: params.alpha,
        max_iter: params.max_iter,
        tol: params.tol,
    };
    check_params(&solver)?;
    let lmax = problem.lambda_max(params.alpha);
    let lmax = if lmax > 0.0 { lmax } else { 1.0 };
    let lambdas: Vec<f64> = if params.n_lambdas == 1 {
        vec![lmax]
    } else {
        (0..params.n_lambdas)
            .map(|k| lmax * 1e-3f64.powf(k as f64 / (params.n_lambdas - 1) as f64))
            .collect()
    };

    let fold_of = stratified_folds(&fm.labels, params.n_folds, seed);
    let per_fold: Vec<Option<Vec<f64>>> = (0..params.n_folds)
        .into_par_iter()
        .map(|f| -> Result<Option<Vec<f64>>> {
            let train: Vec<usize> = (0..fm.n_rows()).filter(|&i| fold_of[i] != f).collect();
            let val: Vec<usize> = (0..fm.n_rows()).filter(|&i| fold_of[i] == f).collect();
            let tr = fm.select_rows(&train);
            let va = fm.select_rows(&val);
            let single = |m: &FeatureMatrix| m.labels.iter().all(|&l| l == m.labels[0]);
            if val.is_empty() || single(&tr) || single(&va) {
                log::warn!("fold {f} has a single class; skipped");
                return Ok(None);
            }
            let models = Problem::new(&tr)?.path(&lambdas, &solver)?;
            let losses = models
                .iter()
                .map(|m| {
                    let eta: Vec<f64> = va.rows.iter().map(|r| m.margin(r)).collect::<Result<_>>()?;
                    Ok(2.0 * mean_log_loss(&eta, &va.labels))
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(Some(losses))
        })
        .collect::<Result<_>>()?;

    let used: Vec<&Vec<f64>> = per_fold.iter().flatten().collect();
    if used.is_empty() {
        return Err(Error::DegenerateLabels(
            "every cross-validation fold has a single class".into(),
        ));
    }
    let cv_deviance: Vec<f64> = (0..lambdas.len())
        .map(|k| used.iter().map(|l| l[k]).sum::<f64>() / used.len() as f64)
        .collect();
    let mut best = 0;
    for k in 1..lambdas.len() {
        if cv_deviance[k] < cv_deviance[best] {
            best = k;
        }
    }
    let model = problem.path(&lambdas[..=best], &solver)?.pop().expect("non-empty path");
    Ok(CvResult {
        lambda: lambdas[best],
        lambdas,
        cv_deviance,
        folds_used: used.len(),
        model,
    })
}
