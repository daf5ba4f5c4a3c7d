use lexlevel::corpus::{level_counts, pairwise_dataset, topic_grouped_split, Document, Level, PairTask};
use lexlevel::features::{compute_profile, MetricParams, MetricTable, Resources};
use lexlevel::ml::{evaluate_task, format_table, FeatureSet, FeatureSource, ModelKind, ModelSpec};
use lexlevel::seed;
use lexlevel::synthetic::{synthetic_corpus, SyntheticSpec};

fn metric_table(docs: &[Document]) -> MetricTable {
    let resources = Resources::basic();
    let profiles: Vec<_> = docs
        .iter()
        .map(|d| compute_profile(d, &resources, &MetricParams::default()).unwrap())
        .collect();
    MetricTable::from_profiles(docs, &profiles).unwrap()
}

#[test]
fn two_level_corpus_separates_on_held_out_topics() {
    let docs = synthetic_corpus(&SyntheticSpec::default());
    assert_eq!(docs.len(), 400);
    let table = metric_table(&docs);
    let task = PairTask::new(Level::A1, Level::A2).unwrap();
    let ds = pairwise_dataset(&docs, task).unwrap();
    let split = topic_grouped_split(ds.docs.iter().copied(), 0.2, seed::derive(0, "split:A1_A2")).unwrap();

    let mut reports = Vec::new();
    for (source, kind) in [
        (
            FeatureSource::Metrics {
                table: &table,
                set: FeatureSet::Metrics,
            },
            ModelKind::Gbt,
        ),
        (
            FeatureSource::Metrics {
                table: &table,
                set: FeatureSet::MetricsPlus,
            },
            ModelKind::Gbt,
        ),
        (FeatureSource::TermFreq { min_doc_frac: 0.02 }, ModelKind::Enet),
    ] {
        let outcome = evaluate_task(&ds, &source, &ModelSpec::new(kind, 0), &split).unwrap();
        let r = outcome.report;
        assert!(r.auc_train.is_finite() && r.auc_test.is_finite());
        assert_eq!(r.n_train + r.n_test, 400);
        reports.push(r);
    }
    assert!(
        reports[0].auc_test >= 0.90,
        "GBT metrics test AUC {}",
        reports[0].auc_test
    );
    assert_eq!(reports[0].top_features.len(), 6);
    let table = format_table(&reports);
    assert!(table.contains("A1=>A2"));
}

#[test]
fn six_levels_give_every_adjacent_task() {
    let docs = synthetic_corpus(&SyntheticSpec {
        levels: Level::ALL.to_vec(),
        topics: 5,
        docs_per_topic_and_level: 4,
        seed: 9,
    });
    assert!(level_counts(&docs).values().all(|&c| c == 20));
    let table = metric_table(&docs);
    let mut reports = Vec::new();
    for task in PairTask::all() {
        let ds = pairwise_dataset(&docs, task).unwrap();
        let split = topic_grouped_split(ds.docs.iter().copied(), 0.2, 1).unwrap();
        let source = FeatureSource::Metrics {
            table: &table,
            set: FeatureSet::Metrics,
        };
        reports.push(
            evaluate_task(&ds, &source, &ModelSpec::new(ModelKind::Gbt, 0), &split)
                .unwrap()
                .report,
        );
    }
    assert_eq!(reports.len(), 5);
    let text = format_table(&reports);
    for task in PairTask::all() {
        assert!(text.contains(&task.to_string()), "{text}");
    }
}
