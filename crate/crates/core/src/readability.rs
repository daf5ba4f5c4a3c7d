//! Readability formulas over [`SurfaceStats`].
//!
//! FORCAST and Linsear Write are defined on fixed-size samples (150 and 100
//! words); here the counts are scaled proportionally to that basis instead of
//! sampled, so the scores are deterministic for any text length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc::SurfaceStats;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityProfile {
    pub ari: f64,
    pub lix: f64,
    pub rix: f64,
    pub flesch_kincaid: f64,
    pub fog: f64,
    pub forcast: f64,
    pub linsear_write: f64,
    pub dale_chall: f64,
    pub spache: f64,
}

impl ReadabilityProfile {
    pub fn named(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("ari", Some(self.ari)),
            ("lix", Some(self.lix)),
            ("rix", Some(self.rix)),
            ("flesch_kincaid", Some(self.flesch_kincaid)),
            ("fog", Some(self.fog)),
            ("forcast", Some(self.forcast)),
            ("linsear_write", Some(self.linsear_write)),
            ("dale_chall", Some(self.dale_chall)),
            ("spache", Some(self.spache)),
        ]
    }
}

pub fn readability_profile(ss: &SurfaceStats) -> Result<ReadabilityProfile> {
    if ss.sentences == 0 || ss.words == 0 {
        return Err(Error::DegenerateText(format!(
            "{} words in {} sentences",
            ss.words, ss.sentences
        )));
    }
    let words = ss.words as f64;
    let sentences = ss.sentences as f64;
    let per_word = |count: usize| count as f64 / words;
    let wps = words / sentences;

    let linsear_raw = 100.0 * per_word(ss.one_syllable_words) + 3.0 * (100.0 * sentences / words);
    let linsear_write = if linsear_raw > 20.0 {
        linsear_raw / 2.0
    } else {
        linsear_raw / 2.0 - 1.0
    };

    Ok(ReadabilityProfile {
        ari: wps + 9.0 * per_word(ss.characters_in_words),
        lix: wps + 100.0 * per_word(ss.words_gt6_chars),
        rix: ss.words_gt6_chars as f64 / sentences,
        flesch_kincaid: 0.39 * wps + 11.8 * per_word(ss.syllables) - 15.59,
        fog: 0.4 * (wps + 100.0 * per_word(ss.words_gt2_syllables)),
        forcast: 20.0 - 150.0 * per_word(ss.one_syllable_words) / 10.0,
        linsear_write,
        dale_chall: 0.1579 * (100.0 * per_word(ss.difficult_words)) + 0.496 * wps + 3.6365,
        spache: 0.141 * wps + 0.086 * (100.0 * per_word(ss.unfamiliar_words)) + 0.839,
    })
}
