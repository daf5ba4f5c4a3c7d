use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use lexlevel::corpus::{
    attach_annotations, check_unique_ids, ingest_jsonl, ingest_plaintext_dir, level_counts, pairwise_dataset,
    topic_grouped_split, write_jsonl, Document, Level, PairTask, Split,
};
use lexlevel::features::{compute_profile, MetricParams, MetricTable, Resources};
use lexlevel::ml::{
    build_tf_matrix, evaluate_task, format_importance, format_table, EnetModel, EvalReport, FeatureSet, FeatureSource,
    GbtModel, ModelSpec,
};
use lexlevel::syntax::{ranked_ngrams, read_conllu, upos_ngram_inventory, ZipfLexicon};
use lexlevel::textproc::WordList;
use lexlevel::{seed, Error};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, RunSpec};
use crate::failure::Failure;
use crate::manifest::Manifest;

fn create_dir(path: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(path).map_err(|e| Failure::io(path, e))
}

fn write(
    manifest: &mut Manifest<'_>,
    out_dir: &Path,
    relative: &str,
    contents: impl AsRef<[u8]>,
) -> Result<(), Failure> {
    let path = out_dir.join(relative);
    if let Some(parent) = path.parent() {
        create_dir(parent)?;
    }
    std::fs::write(&path, contents).map_err(|e| Failure::io(&path, e))?;
    manifest.output(relative);
    Ok(())
}

fn load_corpus(
    config: &RunConfig,
    manifest: &mut Manifest<'_>,
    with_annotation: bool,
) -> Result<Vec<Document>, Failure> {
    let path = config.corpus()?;
    manifest.input(path)?;
    let mut docs = if path.is_dir() {
        ingest_plaintext_dir(path)?
    } else {
        ingest_jsonl(path)?
    };
    check_unique_ids(&docs)?;
    if docs.is_empty() {
        return Err(Failure::Data(format!("{}: no documents", path.display())));
    }
    if with_annotation {
        if let Some(conllu) = &config.conllu {
            manifest.input(conllu)?;
            let annotations = read_conllu(conllu)?;
            let total = annotations.len();
            let matched = attach_annotations(&mut docs, annotations);
            if matched < total {
                log::warn!("{} of {total} annotated documents match no corpus id", total - matched);
            }
            if matched < docs.len() {
                log::warn!("{} documents have no annotation", docs.len() - matched);
            }
        }
    }
    Ok(docs)
}

fn load_resources(config: &RunConfig, manifest: &mut Manifest<'_>) -> Result<Resources, Failure> {
    let mut res = Resources::basic();
    let r = &config.resources;
    for (slot, path) in [
        (&mut res.dale_familiar, &r.dale_list),
        (&mut res.spache_familiar, &r.spache_list),
        (&mut res.reference, &r.reference_list),
    ] {
        if let Some(p) = path {
            manifest.input(p)?;
            *slot = WordList::load(p)?;
        }
    }
    if let Some(p) = &r.zipf_lexicon {
        manifest.input(p)?;
        res.zipf = ZipfLexicon::load(p)?;
    }
    Ok(res)
}

fn split_seed(master: u64, task: PairTask) -> u64 {
    seed::derive(master, &format!("split:{}", task.slug()))
}

pub fn ingest(config: &RunConfig) -> Result<(), Failure> {
    let mut manifest = Manifest::new("ingest", config);
    let docs = load_corpus(config, &mut manifest, false)?;
    create_dir(&config.out_dir)?;
    let mut buf = Vec::new();
    write_jsonl(&docs, &mut buf).map_err(|e| Failure::io(&config.out_dir, e))?;
    write(&mut manifest, &config.out_dir, "corpus.jsonl", buf)?;
    for (level, n) in level_counts(&docs) {
        println!("{level}\t{n}");
    }
    manifest.write(&config.out_dir)?;
    Ok(())
}

pub fn featurize(config: &RunConfig, with_tf: bool) -> Result<(), Failure> {
    let mut manifest = Manifest::new("featurize", config);
    let wants_plus = config.runs.iter().any(|r| r.feature_set == FeatureSet::MetricsPlus);
    if config.conllu.is_none() {
        if wants_plus {
            return Err(Failure::Data(
                "metrics_plus needs a CoNLL-U annotation (--conllu)".into(),
            ));
        }
        log::warn!("no CoNLL-U annotation: syntactic, LCA and UPOS/relation/Zipf columns omitted");
    }
    let docs = load_corpus(config, &mut manifest, true)?;
    let resources = load_resources(config, &mut manifest)?;
    if config.conllu.is_some() && resources.zipf.is_empty() {
        log::warn!("no Zipf lexicon: every word counts as out of vocabulary");
    }
    let params = MetricParams {
        lexdiv: config.lexdiv,
        seed: config.seed,
    };
    let profiles = docs
        .par_iter()
        .map(|d| compute_profile(d, &resources, &params))
        .collect::<Result<Vec<_>, Error>>()?;
    let table = MetricTable::from_profiles(&docs, &profiles)?;
    create_dir(&config.out_dir)?;
    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    write(&mut manifest, &config.out_dir, "metrics.csv", csv)?;

    if with_tf {
        for task in PairTask::all() {
            let ds = match pairwise_dataset(&docs, task) {
                Ok(ds) => ds,
                Err(e) => {
                    log::warn!("no term-frequency matrix for {task}: {e}");
                    continue;
                }
            };
            let fm = build_tf_matrix(&ds.docs, &ds.labels, config.tf.min_doc_frac)?;
            let mut buf = Vec::new();
            fm.write_csv(&mut buf)?;
            write(&mut manifest, &config.out_dir, &format!("tf/{}.csv", task.slug()), buf)?;
        }
    }
    println!("{} documents, {} columns", table.rows.len(), table.names.len());
    manifest.write(&config.out_dir)?;
    Ok(())
}

pub fn split(config: &RunConfig) -> Result<(), Failure> {
    let mut manifest = Manifest::new("split", config);
    let docs = load_corpus(config, &mut manifest, false)?;
    create_dir(&config.out_dir)?;
    let mut written = 0;
    for task in PairTask::all() {
        let result = pairwise_dataset(&docs, task).and_then(|ds| {
            topic_grouped_split(
                ds.docs.iter().copied(),
                config.split.test_fraction,
                split_seed(config.seed, task),
            )
        });
        match result {
            Ok(split) => {
                write(
                    &mut manifest,
                    &config.out_dir,
                    &format!("splits/{}.json", task.slug()),
                    split.to_json() + "\n",
                )?;
                println!("{task}\ttrain {}\ttest {}", split.train.len(), split.test.len());
                written += 1;
            }
            Err(e @ (Error::InsufficientData(_) | Error::CannotSplit(_))) => println!("{task}\tskipped: {e}"),
            Err(e) => return Err(e.into()),
        }
    }
    manifest.write(&config.out_dir)?;
    if written == 0 {
        return Err(Failure::Data("no task has enough data to split".into()));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct Skipped {
    run: String,
    task: PairTask,
    reason: String,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    reports: &'a [EvalReport],
    skipped: &'a [Skipped],
}

fn task_split(
    config: &RunConfig,
    manifest: &mut Manifest<'_>,
    docs: &[&Document],
    task: PairTask,
) -> Result<Split, Failure> {
    if let Some(dir) = &config.splits {
        let path = dir.join(format!("{}.json", task.slug()));
        if path.exists() {
            manifest.input(&path)?;
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::io(&path, e))?;
            return Ok(Split::from_json(&text)?);
        }
    }
    Ok(topic_grouped_split(
        docs.iter().copied(),
        config.split.test_fraction,
        split_seed(config.seed, task),
    )?)
}

pub fn train_eval(config: &RunConfig) -> Result<(), Failure> {
    let mut manifest = Manifest::new("train-eval", config);
    let docs = load_corpus(config, &mut manifest, false)?;
    let needs_table = config.runs.iter().any(|r| r.feature_set != FeatureSet::TermFreq);
    let table = if needs_table {
        let path = config.metrics_path();
        if !path.exists() {
            return Err(Failure::Data(format!(
                "{} not found; run featurize first",
                path.display()
            )));
        }
        manifest.input(&path)?;
        let file = std::fs::File::open(&path).map_err(|e| Failure::io(&path, e))?;
        Some(MetricTable::read_csv(file)?)
    } else {
        None
    };
    if let Some(t) = &table {
        if config.runs.iter().any(|r| r.feature_set == FeatureSet::MetricsPlus) && !t.has_custom_features() {
            return Err(Failure::Data(
                "metrics_plus needs UPOS/relation/Zipf columns; featurize with --conllu".into(),
            ));
        }
    }

    let out = &config.out_dir;
    create_dir(out)?;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for run in &config.runs {
        let source = match (run.feature_set, &table) {
            (FeatureSet::TermFreq, _) => FeatureSource::TermFreq {
                min_doc_frac: config.tf.min_doc_frac,
            },
            (set, Some(table)) => FeatureSource::Metrics { table, set },
            (_, None) => unreachable!("table loaded for metric runs"),
        };
        let spec = ModelSpec {
            kind: run.model,
            gbt: config.gbt,
            enet: config.enet,
            seed: config.seed,
        };
        for task in PairTask::all() {
            let mut skip = |reason: String| {
                log::info!("{run} {task} skipped: {reason}");
                skipped.push(Skipped {
                    run: run.to_string(),
                    task,
                    reason,
                });
            };
            let dataset = match pairwise_dataset(&docs, task) {
                Ok(ds) => ds,
                Err(e) => {
                    skip(e.to_string());
                    continue;
                }
            };
            let split = match task_split(config, &mut manifest, &dataset.docs, task) {
                Ok(s) => s,
                Err(Failure::Core(e @ Error::CannotSplit(_))) => {
                    skip(e.to_string());
                    continue;
                }
                Err(f) => return Err(f),
            };
            let outcome = match evaluate_task(&dataset, &source, &spec, &split) {
                Ok(o) => o,
                Err(e @ (Error::DegenerateLabels(_) | Error::EmptyVocabulary | Error::InsufficientData(_))) => {
                    skip(e.to_string());
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let stem = format!("{}-{}", run.slug(), task.slug());
            write(
                &mut manifest,
                out,
                &format!("reports/{stem}.json"),
                outcome.report.to_json() + "\n",
            )?;
            write(
                &mut manifest,
                out,
                &format!("models/{stem}.json"),
                outcome.model.to_json() + "\n",
            )?;
            let prep = serde_json::to_string_pretty(&outcome.preprocessing).expect("serializes") + "\n";
            write(&mut manifest, out, &format!("preprocessing/{stem}.json"), prep)?;
            reports.push(outcome.report);
        }
    }

    let summary = serde_json::to_string_pretty(&Summary {
        reports: &reports,
        skipped: &skipped,
    })
    .expect("serializes")
        + "\n";
    write(&mut manifest, out, "summary.json", summary)?;
    if reports.is_empty() {
        manifest.write(out)?;
        return Err(Failure::Data("no runnable tasks".into()));
    }
    let tables = render_tables(&reports);
    write(&mut manifest, out, "table.txt", &tables)?;
    print!("{tables}");
    for s in &skipped {
        println!("skipped {} {}: {}", s.run, s.task, s.reason);
    }
    manifest.write(out)?;
    Ok(())
}

/// The AUC table followed by one top-feature table per feature set and model.
fn render_tables(reports: &[EvalReport]) -> String {
    let mut text = format_table(reports);
    let mut runs: BTreeMap<String, Vec<EvalReport>> = BTreeMap::new();
    for r in reports {
        let spec = RunSpec {
            feature_set: r.feature_set,
            model: r.model,
        };
        runs.entry(spec.to_string()).or_default().push(r.clone());
    }
    for group in runs.values() {
        let head = &group[0];
        text.push_str(&format!(
            "\nTop features: {} {}\n",
            head.feature_set.label(),
            head.model.label()
        ));
        text.push_str(&format_importance(group));
    }
    text
}

pub fn importance(model_file: &Path, k: usize) -> Result<(), Failure> {
    let text = std::fs::read_to_string(model_file).map_err(|e| Failure::io(model_file, e))?;
    let ranked = if let Ok(m) = GbtModel::from_json(&text) {
        lexlevel::ml::gbt_importance(&m, k)
    } else if let Ok(m) = EnetModel::from_json(&text) {
        m.ranked_coefficients(k)
    } else {
        return Err(Failure::Data(format!("{}: not a saved model", model_file.display())));
    };
    println!("rank\tfeature\tscore");
    for (i, (name, score)) in ranked.iter().enumerate() {
        println!("{}\t{name}\t{score}", i + 1);
    }
    Ok(())
}

pub fn ngrams(config: &RunConfig) -> Result<(), Failure> {
    if config.conllu.is_none() {
        return Err(Failure::Usage("ngrams needs a CoNLL-U annotation (--conllu)".into()));
    }
    let mut manifest = Manifest::new("ngrams", config);
    let docs = load_corpus(config, &mut manifest, true)?;
    create_dir(&config.out_dir)?;
    for level in Level::ALL {
        let annotated = docs
            .iter()
            .filter(|d| d.level == level)
            .filter_map(|d| d.annotation.as_ref());
        let inventory = upos_ngram_inventory(annotated, config.ngrams.n, config.ngrams.include_punct)?;
        let mut tsv = String::from("ngram\tcount\n");
        for (gram, count) in ranked_ngrams(&inventory) {
            tsv.push_str(&format!("{}\t{count}\n", gram.join(" ")));
        }
        write(&mut manifest, &config.out_dir, &format!("ngrams/{level}.tsv"), tsv)?;
        println!("{level}\t{} distinct {}-grams", inventory.len(), config.ngrams.n);
    }
    manifest.write(&config.out_dir)?;
    Ok(())
}

pub fn report(reports_dir: &Path, out_dir: &Path) -> Result<(), Failure> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(reports_dir)
        .map_err(|e| Failure::io(reports_dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut reports = Vec::new();
    for p in &paths {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::io(p, e))?;
        let r: EvalReport = serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?;
        reports.push(r);
    }
    if reports.is_empty() {
        return Err(Failure::Data(format!("no reports in {}", reports_dir.display())));
    }
    let tables = render_tables(&reports);
    create_dir(out_dir)?;
    let path = out_dir.join("table.txt");
    std::fs::write(&path, &tables).map_err(|e| Failure::io(&path, e))?;
    print!("{tables}");
    Ok(())
}
