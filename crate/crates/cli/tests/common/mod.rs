#![allow(dead_code)]

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lexlevel::corpus::write_jsonl;
use lexlevel::syntax::write_conllu;
use lexlevel::synthetic::{synthetic_corpus, SyntheticSpec};

pub struct CorpusFiles {
    pub jsonl: PathBuf,
    pub conllu: PathBuf,
}

/// Writes a generated corpus and its annotation under `dir`.
pub fn write_corpus(dir: &Path, spec: &SyntheticSpec) -> CorpusFiles {
    std::fs::create_dir_all(dir).unwrap();
    let docs = synthetic_corpus(spec);
    let jsonl = dir.join("corpus.jsonl");
    write_jsonl(&docs, BufWriter::new(File::create(&jsonl).unwrap())).unwrap();
    let annotations: Vec<_> = docs.iter().filter_map(|d| d.annotation.clone()).collect();
    let conllu = dir.join("corpus.conllu");
    std::fs::write(&conllu, write_conllu(&annotations)).unwrap();
    CorpusFiles { jsonl, conllu }
}

pub fn lexlevel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexlevel"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

/// Runs the binary and panics with its stderr unless it exits with 0.
pub fn lexlevel_ok(args: &[&str]) -> String {
    let out = lexlevel(args);
    assert!(
        out.status.success(),
        "lexlevel {args:?} exited with {:?}\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn summary(out_dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap()
}

/// All files under `root`, as sorted relative paths.
pub fn files_under(root: &Path) -> Vec<PathBuf> {
    fn walk(root: &Path, dir: &Path, out: &mut Vec<PathBuf>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                out.push(path.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    let mut out = Vec::new();
    walk(root, root, &mut out);
    out.sort();
    out
}
