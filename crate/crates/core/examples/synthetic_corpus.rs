//! Writes a generated corpus as `corpus.jsonl` and `corpus.conllu`.
//!
//! Usage: `cargo run -p lexlevel --example synthetic_corpus -- <out-dir> [levels] [seed]`
//! where `levels` is 2 (A1, A2) or 6 (A1..C2).

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use lexlevel::corpus::{write_jsonl, Level};
use lexlevel::syntax::write_conllu;
use lexlevel::synthetic::{synthetic_corpus, SyntheticSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().ok_or("missing output directory")?);
    let levels: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    let spec = SyntheticSpec {
        levels: Level::ALL[..levels.clamp(2, 6)].to_vec(),
        seed,
        ..Default::default()
    };
    let docs = synthetic_corpus(&spec);
    std::fs::create_dir_all(&out)?;
    write_jsonl(&docs, BufWriter::new(File::create(out.join("corpus.jsonl"))?))?;
    let annotations: Vec<_> = docs.iter().filter_map(|d| d.annotation.clone()).collect();
    std::fs::write(out.join("corpus.conllu"), write_conllu(&annotations))?;
    println!("{} documents written to {}", docs.len(), out.display());
    Ok(())
}
