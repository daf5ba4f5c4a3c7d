//! `lexlevel`: featurize learner essays and evaluate pairwise level classifiers.

mod commands;
mod config;
mod failure;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{RunConfig, RunSpec};
use crate::failure::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "lexlevel",
    version,
    about = "Learner-essay metrics and pairwise CEFR level classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Overrides,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read a JSONL corpus or a LEVEL/topic/*.txt tree and write normalized JSONL.
    Ingest,
    /// Compute per-document metric profiles (and optionally term-frequency matrices).
    Featurize {
        /// Also write one term-frequency matrix per task.
        #[arg(long)]
        tf: bool,
    },
    /// Write a topic-grouped train/test split for every task.
    Split,
    /// Train and evaluate every configured run on every task with enough data.
    TrainEval,
    /// Print the top features of a saved model.
    Importance {
        #[arg(long)]
        model_file: PathBuf,
        #[arg(short, default_value_t = 6)]
        k: usize,
    },
    /// Count UPOS n-grams per level.
    Ngrams {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        include_punct: Option<bool>,
    },
    /// Rebuild the AUC and importance tables from saved reports.
    Report {
        /// Defaults to `<out-dir>/reports`.
        #[arg(long)]
        reports_dir: Option<PathBuf>,
    },
}

/// Flags shared by all subcommands; each overrides the config file.
#[derive(Debug, Args)]
struct Overrides {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[arg(long, global = true)]
    conllu: Option<PathBuf>,
    #[arg(long, global = true)]
    metrics: Option<PathBuf>,
    #[arg(long, global = true)]
    splits: Option<PathBuf>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Feature set and model, e.g. `metrics:gbt` or `term_freq:enet`; repeatable.
    #[arg(long = "run", global = true)]
    runs: Vec<RunSpec>,
    #[arg(long, global = true)]
    test_fraction: Option<f64>,
    #[arg(long, global = true)]
    tf_min_doc_frac: Option<f64>,
    #[arg(long, global = true)]
    dale_list: Option<PathBuf>,
    #[arg(long, global = true)]
    spache_list: Option<PathBuf>,
    #[arg(long, global = true)]
    reference_list: Option<PathBuf>,
    #[arg(long, global = true)]
    zipf_lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    msttr_segment: Option<usize>,
    #[arg(long, global = true)]
    mattr_window: Option<usize>,
    #[arg(long, global = true)]
    mtld_threshold: Option<f64>,
    #[arg(long, global = true)]
    hdd_sample: Option<usize>,
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    #[arg(long, global = true)]
    learning_rate: Option<f64>,
    #[arg(long, global = true)]
    n_trees: Option<usize>,
    #[arg(long, global = true)]
    min_leaf: Option<usize>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    n_folds: Option<usize>,
    #[arg(long, global = true)]
    n_lambdas: Option<usize>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl Overrides {
    fn resolve(self) -> Result<RunConfig, Failure> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        set(&mut c.seed, self.seed);
        set(&mut c.workers, self.workers);
        set(&mut c.out_dir, self.out_dir);
        c.corpus = self.corpus.or(c.corpus);
        c.conllu = self.conllu.or(c.conllu);
        c.metrics = self.metrics.or(c.metrics);
        c.splits = self.splits.or(c.splits);
        if !self.runs.is_empty() {
            c.runs = self.runs;
        }
        set(&mut c.split.test_fraction, self.test_fraction);
        set(&mut c.tf.min_doc_frac, self.tf_min_doc_frac);
        let r = &mut c.resources;
        r.dale_list = self.dale_list.or(r.dale_list.take());
        r.spache_list = self.spache_list.or(r.spache_list.take());
        r.reference_list = self.reference_list.or(r.reference_list.take());
        r.zipf_lexicon = self.zipf_lexicon.or(r.zipf_lexicon.take());
        set(&mut c.lexdiv.msttr_segment, self.msttr_segment);
        set(&mut c.lexdiv.mattr_window, self.mattr_window);
        set(&mut c.lexdiv.mtld_threshold, self.mtld_threshold);
        set(&mut c.lexdiv.hdd_sample, self.hdd_sample);
        set(&mut c.gbt.max_depth, self.max_depth);
        set(&mut c.gbt.learning_rate, self.learning_rate);
        set(&mut c.gbt.n_trees, self.n_trees);
        set(&mut c.gbt.min_leaf, self.min_leaf);
        set(&mut c.enet.alpha, self.alpha);
        set(&mut c.enet.n_folds, self.n_folds);
        set(&mut c.enet.n_lambdas, self.n_lambdas);
        c.validate()?;
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = cli.common.resolve()?;
    if config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot size worker pool: {e}")))?;
    }
    match cli.command {
        Command::Ingest => commands::ingest(&config),
        Command::Featurize { tf } => commands::featurize(&config, tf),
        Command::Split => commands::split(&config),
        Command::TrainEval => commands::train_eval(&config),
        Command::Importance { model_file, k } => commands::importance(&model_file, k),
        Command::Ngrams { n, include_punct } => {
            set(&mut config.ngrams.n, n);
            set(&mut config.ngrams.include_punct, include_punct);
            config.validate()?;
            commands::ngrams(&config)
        }
        Command::Report { reports_dir } => {
            let dir = reports_dir.unwrap_or_else(|| config.out_dir.join("reports"));
            commands::report(&dir, &config.out_dir)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
