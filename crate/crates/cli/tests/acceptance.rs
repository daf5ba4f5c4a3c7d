//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Criterion 10 runs on a real corpus when `LEXLEVEL_REPRO_CORPUS` (JSONL) and
//! `LEXLEVEL_REPRO_CONLLU` are set (optionally `LEXLEVEL_REPRO_ZIPF`), and on a
//! six-level generated corpus otherwise.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use lexlevel::corpus::{pairwise_dataset, topic_grouped_split, Document, Level, PairTask, Split};
use lexlevel::features::{compute_profile, MetricParams, MetricTable, Resources};
use lexlevel::lexdiv::{hdd, mattr, msttr, mtld, mtld_ma, ttr_family};
use lexlevel::ml::{
    auc, enet_path, enet_train, evaluate_task, gbt_train, lambda_max, EnetModel, EnetParams, FeatureMatrix, FeatureSet,
    FeatureSource, GbtParams, ModelKind, ModelSpec, TaskOutcome,
};
use lexlevel::readability::readability_profile;
use lexlevel::seed;
use lexlevel::syntax::{clause_inventory, parse_conllu};
use lexlevel::synthetic::{synthetic_corpus, SyntheticSpec};
use lexlevel::textproc::{surface_stats, tokenize, FrequencySpectrum, SurfaceStats, WordList};
use lexlevel_testkit::fixtures::{fixture_conllu, SYNTAX_FIXTURES};
use lexlevel_testkit::{fuzz, oracles};
use rand::Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn matrix(rows: Vec<Vec<f64>>, labels: Vec<u8>) -> FeatureMatrix {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    FeatureMatrix::new(
        (0..p).map(|j| format!("f{j}")).collect(),
        (0..n).map(|i| format!("r{i}")).collect(),
        rows,
        labels,
        vec!["t".into(); n],
    )
    .unwrap()
}

fn random_problem(seed: u64, n: usize, p: usize) -> FeatureMatrix {
    let mut rng = seed::rng(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let labels = rows
        .iter()
        .map(|r| u8::from(r[0] - 0.7 * r[1] + rng.gen_range(-1.5..1.5) > 0.0))
        .collect();
    matrix(rows, labels)
}

fn metric_oracles() -> Outcome {
    let start = Instant::now();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;

    let fam = ttr_family(&FrequencySpectrum::from_tokens(&words("the cat sat the mat")));
    ensure(close(fam.ttr.unwrap(), 0.8), || "ttr".into())?;
    ensure(close(fam.herdan_c.unwrap(), 4f64.ln() / 5f64.ln()), || {
        "herdan_c".into()
    })?;
    let fam = ttr_family(&FrequencySpectrum::from_tokens(&["w"; 10]));
    ensure(close(fam.yule_k.unwrap(), 9000.0), || {
        format!("yule_k {:?}", fam.yule_k)
    })?;

    let ss = surface_stats(
        &tokenize("The cat sat. Dogs bark.", false),
        &WordList::default(),
        &WordList::default(),
    );
    let ari = readability_profile(&ss).map_err(|e| e.to_string())?.ari;
    ensure(close(ari, 33.1), || format!("ari {ari}"))?;
    let ss = SurfaceStats {
        words: 150,
        sentences: 10,
        one_syllable_words: 90,
        ..Default::default()
    };
    let forcast = readability_profile(&ss).map_err(|e| e.to_string())?.forcast;
    ensure(close(forcast, 11.0), || format!("forcast {forcast}"))?;

    let repeated = vec!["w".to_string(); 10];
    ensure(mtld(&repeated, 0.72).unwrap() == Some(2.0), || "mtld hand trace".into())?;
    ensure(mtld_ma(&repeated, 0.72).unwrap() == Some(2.0), || {
        "mtld-ma hand trace".into()
    })?;

    let mut rng = seed::rng(101);
    let text = fuzz::random_tokens(&mut rng, 300, 120);
    ensure(
        (msttr(&text, 100).unwrap() - oracles::msttr(&text, 100)).abs() <= 1e-12,
        || "msttr".into(),
    )?;
    ensure(
        (mattr(&text[..50], 10).unwrap() - oracles::mattr(&text[..50], 10)).abs() <= 1e-12,
        || "mattr".into(),
    )?;
    let text = fuzz::random_tokens(&mut rng, 200, 60);
    let (got, want) = (mtld(&text, 0.72).unwrap().unwrap(), oracles::mtld(&text, 0.72).unwrap());
    ensure(close(got, want), || format!("mtld {got} vs {want}"))?;
    ensure(mtld_ma(&text, 0.72).unwrap() == oracles::mtld_ma(&text, 0.72), || {
        "mtld-ma".into()
    })?;

    let mut worst = 0.0f64;
    for vocab in [30, 70, 150] {
        let text = fuzz::random_tokens(&mut rng, 100, vocab);
        let exact = hdd(&FrequencySpectrum::from_tokens(&text), 42).unwrap();
        let mc = oracles::hdd_monte_carlo(&text, 42, 200_000, &mut rng);
        worst = worst.max((exact - mc).abs());
    }
    ensure(worst <= 0.005, || format!("HD-D off Monte-Carlo by {worst}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("HD-D max deviation {worst:.4}, {:.1}s", elapsed.as_secs_f64()))
}

fn spectrum_and_tokenizer() -> Outcome {
    let mut rng = seed::rng(102);
    for _ in 0..1000 {
        let text = fuzz::random_text(&mut rng, 200);
        let tt = tokenize(&text, true);
        let fs = FrequencySpectrum::from_tokens(tt.word_tokens());
        let n: usize = fs.freq_of_freq.iter().map(|(x, f)| x * f).sum();
        let v: usize = fs.freq_of_freq.values().sum();
        ensure(n == fs.tokens && v == fs.types, || {
            format!("spectrum not conserved on {text:?}")
        })?;
        let again = tokenize(&tt.word_tokens().join(" "), true);
        ensure(again.word_tokens() == tt.word_tokens(), || {
            format!("re-tokenizing changed {text:?}")
        })?;
    }
    Ok("1000 fuzz strings".into())
}

fn syntactic_rules() -> Outcome {
    for (i, f) in SYNTAX_FIXTURES.iter().enumerate() {
        let docs = parse_conllu(&fixture_conllu(f, &format!("s{i}"))).map_err(|e| e.to_string())?;
        let c = clause_inventory(&docs[0]);
        let got = [c.w, c.s, c.vp, c.c, c.t, c.dc, c.ct, c.cp, c.cn];
        ensure(got == f.expected, || format!("{}: {got:?} vs {:?}", f.name, f.expected))?;
    }
    let mut rng = seed::rng(103);
    for d in 0..500 {
        let text = fuzz::random_tree_conllu(&mut rng, &format!("d{d}"), 4);
        let c = clause_inventory(&parse_conllu(&text).map_err(|e| e.to_string())?[0]);
        ensure(c.dc <= c.c && c.ct <= c.t, || format!("bounds violated:\n{text}"))?;
    }
    Ok(format!(
        "{} hand-annotated sentences, 500 fuzzed documents",
        SYNTAX_FIXTURES.len()
    ))
}

fn auc_brute_force() -> Outcome {
    let mut rng = seed::rng(104);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=50);
        let mut labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        labels[0] = 0;
        labels[1] = 1;
        let levels = rng.gen_range(1..=n);
        let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0..levels) as f64).collect();
        let got = auc(&scores, &labels).map_err(|e| e.to_string())?;
        worst = worst.max((got - oracles::auc_pairs(&scores, &labels)).abs());
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst}"))?;
    Ok(format!("100 instances, max deviation {worst:e}"))
}

fn kkt_violation(model: &EnetModel, fm: &FeatureMatrix) -> f64 {
    let n = fm.n_rows() as f64;
    let p = fm.n_features();
    let z = |r: &[f64], j: usize| (r[j] - model.feature_means[j]) / model.feature_scales[j];
    let resid: Vec<f64> = fm
        .rows
        .iter()
        .zip(&fm.labels)
        .map(|(r, &y)| {
            let eta = model.intercept + (0..p).map(|j| model.beta[j] * z(r, j)).sum::<f64>();
            f64::from(y) - 1.0 / (1.0 + (-eta).exp())
        })
        .collect();
    let (l1, l2) = (model.lambda * model.alpha, model.lambda * (1.0 - model.alpha));
    let mut worst = (resid.iter().sum::<f64>() / n).abs();
    for j in 0..p {
        let g = fm.rows.iter().zip(&resid).map(|(r, e)| z(r, j) * e).sum::<f64>() / n - l2 * model.beta[j];
        let v = if model.beta[j] == 0.0 {
            (g.abs() - l1).max(0.0)
        } else {
            (g - l1 * model.beta[j].signum()).abs()
        };
        worst = worst.max(v);
    }
    worst
}

fn elastic_net() -> Outcome {
    for s in 0..5 {
        let fm = random_problem(300 + s, 80, 5);
        let lmax = lambda_max(&fm, 0.5).map_err(|e| e.to_string())?;
        let model = enet_train(
            &fm,
            &EnetParams {
                lambda: lmax,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let rate = fm.labels.iter().filter(|&&l| l == 1).count() as f64 / 80.0;
        ensure(model.beta.iter().all(|&b| b == 0.0), || {
            format!("nonzero β at λ_max: {:?}", model.beta)
        })?;
        ensure(model.intercept == (rate / (1.0 - rate)).ln(), || {
            "null intercept".into()
        })?;
    }

    let mut worst = 0.0f64;
    for s in 0..20 {
        let mut rng = seed::rng(400 + s);
        let fm = random_problem(500 + s, rng.gen_range(40..150), rng.gen_range(2..12));
        let params = EnetParams {
            lambda: lambda_max(&fm, 0.5).unwrap() * rng.gen_range(0.01..0.8),
            alpha: rng.gen_range(0.1..1.0),
            ..Default::default()
        };
        let model = enet_train(&fm, &params).map_err(|e| e.to_string())?;
        worst = worst.max(kkt_violation(&model, &fm));
    }
    ensure(worst <= 1e-6, || format!("KKT residual {worst}"))?;

    for s in 0..10 {
        let fm = random_problem(600 + s, 100, 8);
        let lmax = lambda_max(&fm, 0.5).unwrap();
        let lambdas: Vec<f64> = (0..30).map(|k| lmax * 1000f64.powf(-(k as f64) / 29.0)).collect();
        let path = enet_path(&fm, &lambdas, &EnetParams::default()).map_err(|e| e.to_string())?;
        let counts: Vec<usize> = path.iter().map(EnetModel::nonzero).collect();
        ensure(counts.windows(2).all(|w| w[1] >= w[0]), || {
            format!("path {s} sparsity {counts:?}")
        })?;
    }
    Ok(format!("max KKT residual {worst:.2e} on 20 problems"))
}

fn separable() -> FeatureMatrix {
    let rows = (0..100)
        .map(|i| vec![if i < 50 { -1.0 - i as f64 } else { 1.0 + (i - 50) as f64 }, 3.0])
        .collect();
    let mut fm = matrix(rows, (0..100).map(|i| u8::from(i >= 50)).collect());
    fm.feature_names = vec!["x".into(), "flat".into()];
    fm
}

fn gradient_boosting() -> Outcome {
    let params = GbtParams::default();
    ensure(
        (params.max_depth, params.learning_rate, params.n_trees) == (4, 0.01, 100),
        || format!("default hyperparameters {params:?}"),
    )?;
    let mut fixtures = vec![separable()];
    fixtures.extend((0..4).map(|s| random_problem(700 + s, 120, 6)));
    for (i, fm) in fixtures.iter().enumerate() {
        let model = gbt_train(fm, &params).map_err(|e| e.to_string())?;
        ensure(model.loss_history.windows(2).all(|w| w[1] <= w[0]), || {
            format!("fixture {i}: training loss increased")
        })?;
    }
    let fm = separable();
    let model = gbt_train(&fm, &params).map_err(|e| e.to_string())?;
    let train_auc = auc(&model.predict_rows(&fm.rows).unwrap(), &fm.labels).unwrap();
    ensure(train_auc == 1.0, || format!("separable train AUC {train_auc}"))?;
    ensure(model.gain_by_feature["flat"] == 0.0, || {
        "constant column has gain".into()
    })?;
    Ok("loss monotone on 5 fixtures, separable AUC 1.000".into())
}

fn topic_pure(docs: &[Document], split: &Split) -> bool {
    let topic: BTreeMap<&str, &str> = docs.iter().map(|d| (d.id.as_str(), d.topic.as_str())).collect();
    let train: HashSet<&str> = split.train.iter().map(|id| topic[id.as_str()]).collect();
    split.test.iter().all(|id| !train.contains(topic[id.as_str()]))
}

fn metric_table(docs: &[Document]) -> MetricTable {
    let resources = Resources::basic();
    let profiles: Vec<_> = docs
        .iter()
        .map(|d| compute_profile(d, &resources, &MetricParams::default()).unwrap())
        .collect();
    MetricTable::from_profiles(docs, &profiles).unwrap()
}

fn leakage() -> Outcome {
    let mut splits = 0;
    for (topics, per_topic) in [(2, 3), (5, 7), (10, 10), (23, 4)] {
        let docs: Vec<Document> = (0..topics * per_topic)
            .map(|i| {
                let level = if i % 2 == 0 { Level::A1 } else { Level::A2 };
                Document::new(format!("d{i}"), "Text.", level, format!("t{}", i / per_topic)).unwrap()
            })
            .collect();
        for seed in 0..50 {
            for fraction in [0.05, 0.2, 0.5, 0.95] {
                let split = topic_grouped_split(&docs, fraction, seed).map_err(|e| e.to_string())?;
                ensure(topic_pure(&docs, &split), || format!("shared topic, seed {seed}"))?;
                splits += 1;
            }
        }
    }

    let docs = synthetic_corpus(&SyntheticSpec {
        topics: 8,
        docs_per_topic_and_level: 6,
        ..Default::default()
    });
    let table = metric_table(&docs);
    let task = PairTask::new(Level::A1, Level::A2).unwrap();
    let ds = pairwise_dataset(&docs, task).unwrap();
    let split = topic_grouped_split(ds.docs.iter().copied(), 0.25, 3).unwrap();
    let test: HashSet<&str> = split.test.iter().map(String::as_str).collect();
    let artifacts = |o: &TaskOutcome| (o.model.to_json(), serde_json::to_string(&o.preprocessing).unwrap());

    let mut mutated = table.clone();
    for row in mutated.rows.iter_mut().filter(|r| test.contains(r.id.as_str())) {
        for (j, v) in row.values.iter_mut().enumerate() {
            *v = if j % 3 == 0 { None } else { Some(1e6 + j as f64) };
        }
    }
    for kind in [ModelKind::Gbt, ModelKind::Enet] {
        let spec = ModelSpec::new(kind, 5);
        let run = |t: &MetricTable| {
            let source = FeatureSource::Metrics {
                table: t,
                set: FeatureSet::MetricsPlus,
            };
            evaluate_task(&ds, &source, &spec, &split).map_err(|e| e.to_string())
        };
        ensure(artifacts(&run(&table)?) == artifacts(&run(&mutated)?), || {
            format!("{kind}: imputation or model changed with test rows")
        })?;
    }

    let mut mutated_docs = docs.clone();
    for d in mutated_docs.iter_mut().filter(|d| test.contains(d.id.as_str())) {
        d.text = format!("{} zzqx zzqx {}", d.text, d.id);
    }
    let mutated_ds = pairwise_dataset(&mutated_docs, task).unwrap();
    let spec = ModelSpec::new(ModelKind::Enet, 5);
    let source = FeatureSource::TermFreq { min_doc_frac: 0.02 };
    let a = evaluate_task(&ds, &source, &spec, &split).map_err(|e| e.to_string())?;
    let b = evaluate_task(&mutated_ds, &source, &spec, &split).map_err(|e| e.to_string())?;
    ensure(artifacts(&a) == artifacts(&b), || {
        "vocabulary or standardization changed with test documents".into()
    })?;
    Ok(format!(
        "{splits} splits topic-pure, train artifacts unchanged by test mutations"
    ))
}

fn mean_by_level(table: &MetricTable, column: &str, level: Level) -> f64 {
    let j = table.column(column).unwrap();
    let values: Vec<f64> = table
        .rows
        .iter()
        .filter(|r| r.level == level)
        .filter_map(|r| r.values[j])
        .collect();
    values.iter().sum::<f64>() / values.len() as f64
}

fn synthetic_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let c = write_corpus(dir.path(), &SyntheticSpec::default());
    let out = dir.path().join("out");
    let args = [
        "--corpus",
        path_str(&c.jsonl),
        "--conllu",
        path_str(&c.conllu),
        "--out-dir",
        path_str(&out),
    ];
    let start = Instant::now();
    lexlevel_ok(&[&["featurize"], &args[..]].concat());
    lexlevel_ok(&[&["train-eval", "--run", "metrics:gbt"], &args[..]].concat());
    let elapsed = start.elapsed();

    let table = MetricTable::read_csv(std::fs::File::open(out.join("metrics.csv")).unwrap()).unwrap();
    ensure(table.rows.len() == 400, || format!("{} documents", table.rows.len()))?;
    for column in ["mtld", "mattr", "C_T", "DC_C"] {
        let (lo, hi) = (
            mean_by_level(&table, column, Level::A1),
            mean_by_level(&table, column, Level::A2),
        );
        ensure(hi > lo, || format!("{column}: upper level mean {hi} not above {lo}"))?;
    }
    let s = summary(&out);
    let report = &s["reports"][0];
    let test_auc = report["auc_test"].as_f64().unwrap();
    ensure(test_auc >= 0.90, || format!("GBT metrics test AUC {test_auc}"))?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("pipeline took {elapsed:?}")
    })?;
    Ok(format!(
        "test AUC {test_auc:.3}, pipeline {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn full_run(c: &CorpusFiles, out: &Path) {
    let args = [
        "--corpus",
        path_str(&c.jsonl),
        "--conllu",
        path_str(&c.conllu),
        "--out-dir",
        path_str(out),
        "--seed",
        "11",
        "--run",
        "metrics:gbt",
        "--run",
        "metrics_plus:enet",
        "--run",
        "term_freq:enet",
    ];
    lexlevel_ok(&[&["featurize", "--tf"], &args[..]].concat());
    lexlevel_ok(&[&["split"], &args[..]].concat());
    lexlevel_ok(&[&["train-eval"], &args[..]].concat());
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let c = write_corpus(
        dir.path(),
        &SyntheticSpec {
            levels: vec![Level::A2, Level::B1, Level::B2],
            topics: 8,
            docs_per_topic_and_level: 5,
            seed: 4,
        },
    );
    // both runs write to the same directory so the manifests are comparable too
    let out = dir.path().join("out");
    let first = dir.path().join("first");
    full_run(&c, &out);
    std::fs::rename(&out, &first).unwrap();
    full_run(&c, &out);

    let files = files_under(&first);
    ensure(files == files_under(&out), || "runs wrote different file sets".into())?;
    for f in &files {
        let same = std::fs::read(first.join(f)).unwrap() == std::fs::read(out.join(f)).unwrap();
        ensure(same, || format!("{} differs between runs", f.display()))?;
    }
    ensure(files.iter().any(|f| f.starts_with("models")), || {
        "no models written".into()
    })?;
    Ok(format!("{} files byte-identical", files.len()))
}

fn reproduction_path() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, conllu, zipf, label) = match (
        std::env::var("LEXLEVEL_REPRO_CORPUS"),
        std::env::var("LEXLEVEL_REPRO_CONLLU"),
    ) {
        (Ok(corpus), Ok(conllu)) => (
            corpus.into(),
            conllu.into(),
            std::env::var("LEXLEVEL_REPRO_ZIPF").ok(),
            "supplied corpus",
        ),
        _ => {
            let c = write_corpus(
                dir.path(),
                &SyntheticSpec {
                    levels: Level::ALL.to_vec(),
                    topics: 10,
                    docs_per_topic_and_level: 6,
                    seed: 10,
                },
            );
            (c.jsonl, c.conllu, None, "generated six-level stand-in")
        }
    };
    let out = dir.path().join("out");
    let mut args = vec![
        "--corpus",
        path_str(&corpus),
        "--conllu",
        path_str(&conllu),
        "--out-dir",
        path_str(&out),
        "--run",
        "metrics:gbt",
        "--run",
        "term_freq:enet",
        "--run",
        "metrics_plus:gbt",
    ];
    if let Some(z) = &zipf {
        args.extend(["--zipf-lexicon", z.as_str()]);
    }
    lexlevel_ok(&[&["featurize"], &args[..]].concat());
    lexlevel_ok(&[&["train-eval"], &args[..]].concat());

    let s = summary(&out);
    let reports = s["reports"].as_array().unwrap();
    for run in ["metrics", "term_freq", "metrics_plus"] {
        let tasks: HashSet<&str> = reports
            .iter()
            .filter(|r| r["feature_set"] == run)
            .map(|r| r["task"].as_str().unwrap())
            .collect();
        ensure(tasks.len() == 5, || format!("{run}: reports for {tasks:?}"))?;
    }
    for r in reports.iter().filter(|r| r["model"] == "gbt") {
        let n = r["top_features"].as_array().unwrap().len();
        ensure(n == 6, || {
            format!("{} {}: {n} top features", r["feature_set"], r["task"])
        })?;
    }

    let table = std::fs::read_to_string(out.join("table.txt")).unwrap();
    let mut lines = table.lines();
    let header = lines.next().unwrap_or_default();
    for task in PairTask::all() {
        ensure(header.contains(&task.to_string()), || {
            format!("header lacks {task}: {header}")
        })?;
    }
    let auc_rows = table
        .lines()
        .skip(1)
        .take_while(|l| !l.trim().is_empty())
        .filter(|l| l.contains("train") || l.contains("test"))
        .count();
    ensure(auc_rows == 6, || format!("{auc_rows} AUC rows\n{table}"))?;
    ensure(table.contains("Top features: Metrics GBT"), || {
        "no importance table".into()
    })?;
    Ok(format!("{label}: 15 reports, 6 AUC rows, top-6 lists per task"))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("metric oracles", metric_oracles),
        (
            "spectrum conservation and tokenizer idempotence",
            spectrum_and_tokenizer,
        ),
        ("syntactic rule table", syntactic_rules),
        ("AUC against pair enumeration", auc_brute_force),
        ("elastic net optimality and sparsity", elastic_net),
        ("gradient boosting", gradient_boosting),
        ("leakage", leakage),
        ("synthetic end-to-end", synthetic_end_to_end),
        ("determinism", determinism),
        ("reproduction path", reproduction_path),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
