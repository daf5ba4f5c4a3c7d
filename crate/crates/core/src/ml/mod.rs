//! Feature matrices, classifiers and evaluation.

mod auc;
mod enet;
mod eval;
mod gbt;
mod matrix;
mod tf;

pub use auc::auc;
pub use enet::{enet_cv, enet_path, enet_train, lambda_max, CvResult, EnetCvParams, EnetModel, EnetParams};
pub use eval::{
    evaluate_task, format_importance, format_table, EvalReport, FeatureSource, ModelKind, ModelSpec, Preprocessing,
    RankedFeature, TaskOutcome, TrainedModel, TOP_FEATURES,
};
pub use gbt::{gbt_importance, gbt_predict, gbt_train, GbtModel, GbtParams, Node};
pub use matrix::{assemble_metric_matrix, FeatureMatrix, FeatureSet, MedianImputer, RawMatrix};
pub use tf::{build_tf_matrix, TfVocabulary};

pub const MODEL_SCHEMA_VERSION: u32 = 1;

pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Mean negative log-likelihood of 0/1 labels under logits `eta`.
pub(crate) fn mean_log_loss(eta: &[f64], labels: &[u8]) -> f64 {
    let total: f64 = eta
        .iter()
        .zip(labels)
        .map(|(&e, &y)| softplus(e) - f64::from(y) * e)
        .sum();
    total / eta.len() as f64
}

/// log(1 + e^x) without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}
