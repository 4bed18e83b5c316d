//! Stimulus selection against emotion-word norms and the ratings-summary
//! reporter.
//!
//! Emotion words carry per-word mean/sd valence and arousal norms on the
//! 1..9 rating scale. Words near the center of the valence-arousal plane
//! are filtered out; a stimulus is selected when its calculated scores fall
//! inside the mean +/- sd box of at least one remaining word.

use crate::stats::{mean, quantile_sorted};
use crate::va::VaScore;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SelectError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}:{line}: {message}")]
    BadRow { path: String, line: usize, message: String },
    #[error("no ratings rows")]
    EmptyRatings,
}

/// A lexical entry with rating norms: mean and standard deviation of
/// valence and arousal on the 1..9 scale.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EmotionWord {
    pub word: String,
    pub v_mean: f64,
    pub v_sd: f64,
    pub a_mean: f64,
    pub a_sd: f64,
}

/// Valence-arousal quadrant with the neutral point at (5, 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    /// High valence, high arousal.
    HVHA,
    /// Low valence, high arousal.
    LVHA,
    /// Low valence, low arousal.
    LVLA,
    /// High valence, low arousal.
    HVLA,
}

/// A selected stimulus with its matched emotion words.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StimulusRecord {
    pub source_id: String,
    pub calc_valence: f64,
    pub calc_arousal: f64,
    pub matched_words: Vec<String>,
    pub quadrant: Quadrant,
}

/// Loads a norms CSV with header `word,v_mean,v_sd,a_mean,a_sd`.
pub fn load_emotion_words(path: &Path) -> Result<Vec<EmotionWord>, SelectError> {
    let display = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)
        .map_err(|source| SelectError::Csv { path: display.clone(), source })?;
    let mut words = Vec::new();
    for (i, row) in reader.deserialize::<EmotionWord>().enumerate() {
        let mut word: EmotionWord =
            row.map_err(|source| SelectError::Csv { path: display.clone(), source })?;
        word.word = word.word.trim().to_lowercase();
        if !(1.0..=9.0).contains(&word.v_mean)
            || !(1.0..=9.0).contains(&word.a_mean)
            || word.v_sd < 0.0
            || word.a_sd < 0.0
        {
            return Err(SelectError::BadRow {
                path: display,
                line: i + 2,
                message: format!("norms out of range for '{}'", word.word),
            });
        }
        words.push(word);
    }
    Ok(words)
}

/// Keeps only words away from the center of the valence-arousal plane: a
/// word is dropped when both means lie inside the [4, 6] band.
pub fn filter_circumplex_words(words: &[EmotionWord]) -> Vec<EmotionWord> {
    words
        .iter()
        .filter(|w| {
            let v_center = (4.0..=6.0).contains(&w.v_mean);
            let a_center = (4.0..=6.0).contains(&w.a_mean);
            !(v_center && a_center)
        })
        .cloned()
        .collect()
}

/// Words whose mean +/- sd box contains the calculated scores on both axes.
pub fn match_emotion_words<'a>(score: &VaScore, words: &'a [EmotionWord]) -> Vec<&'a EmotionWord> {
    words
        .iter()
        .filter(|w| {
            (score.valence - w.v_mean).abs() <= w.v_sd
                && (score.arousal - w.a_mean).abs() <= w.a_sd
        })
        .collect()
}

/// Quadrant of a score pair: High means strictly above `threshold`.
pub fn quadrant_of(valence: f64, arousal: f64, threshold: f64) -> Quadrant {
    match (valence > threshold, arousal > threshold) {
        (true, true) => Quadrant::HVHA,
        (false, true) => Quadrant::LVHA,
        (false, false) => Quadrant::LVLA,
        (true, false) => Quadrant::HVLA,
    }
}

/// Stimuli matching at least one emotion word, with their matches recorded
/// for later annotation.
pub fn select_stimuli(
    scores: &[VaScore],
    words: &[EmotionWord],
    quadrant_threshold: f64,
) -> Vec<StimulusRecord> {
    scores
        .iter()
        .filter_map(|score| {
            let matched = match_emotion_words(score, words);
            if matched.is_empty() {
                return None;
            }
            Some(StimulusRecord {
                source_id: score.source_id.clone(),
                calc_valence: score.valence,
                calc_arousal: score.arousal,
                matched_words: matched.iter().map(|w| w.word.clone()).collect(),
                quadrant: quadrant_of(score.valence, score.arousal, quadrant_threshold),
            })
        })
        .collect()
}

/// Counts per quadrant, in HVHA, LVHA, LVLA, HVLA order.
pub fn quadrant_counts(records: &[StimulusRecord]) -> BTreeMap<Quadrant, usize> {
    let mut counts = BTreeMap::new();
    for q in [Quadrant::HVHA, Quadrant::LVHA, Quadrant::LVLA, Quadrant::HVLA] {
        counts.insert(q, 0);
    }
    for r in records {
        *counts.get_mut(&r.quadrant).unwrap() += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Hash)]
pub enum Culture {
    Eng,
    Ind,
}

/// One stimulus's mean ratings along the five collected dimensions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatingsRow {
    pub stimulus_id: String,
    pub culture: Culture,
    pub v: f64,
    pub a: f64,
    pub d: f64,
    pub l: f64,
    pub f: f64,
}

/// Reads a ratings CSV with header `stimulus_id,culture,V,A,D,L,F`.
pub fn read_ratings_csv(path: &Path) -> Result<Vec<RatingsRow>, SelectError> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|source| SelectError::Csv { path: display.clone(), source })?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record =
            record.map_err(|source| SelectError::Csv { path: display.clone(), source })?;
        let bad = |message: String| SelectError::BadRow {
            path: display.clone(),
            line: i + 2,
            message,
        };
        if record.len() != 7 {
            return Err(bad(format!("expected 7 columns, got {}", record.len())));
        }
        let culture = match &record[1] {
            "Eng" | "eng" => Culture::Eng,
            "Ind" | "ind" => Culture::Ind,
            other => return Err(bad(format!("unknown culture '{other}'"))),
        };
        let num = |idx: usize| -> Result<f64, SelectError> {
            let v: f64 = record[idx]
                .parse()
                .map_err(|_| bad(format!("bad number '{}'", &record[idx])))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad(format!("non-finite value in column {idx}")))
            }
        };
        rows.push(RatingsRow {
            stimulus_id: record[0].to_string(),
            culture,
            v: num(2)?,
            a: num(3)?,
            d: num(4)?,
            l: num(5)?,
            f: num(6)?,
        });
    }
    Ok(rows)
}

/// The six summary statistics in report row order.
pub const SUMMARY_ROWS: [&str; 6] = ["Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."];

/// Rating dimensions in report column order.
pub const SUMMARY_DIMS: [&str; 5] = ["V", "A", "D", "L", "F"];

/// Culture groups in report column order.
pub const SUMMARY_GROUPS: [&str; 3] = ["Eng", "Ind", "OverA"];

/// Six-statistic summary tables per dimension per culture group.
/// `table[dim][group]` holds [min, q1, median, mean, q3, max]; `None` when
/// the group is empty.
#[derive(Debug, Clone)]
pub struct RatingsSummary {
    pub table: Vec<Vec<Option<[f64; 6]>>>,
    pub group_sizes: [usize; 3],
}

fn six_stats(values: &[f64]) -> Option<[f64; 6]> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite ratings"));
    Some([
        sorted[0],
        quantile_sorted(&sorted, 0.25),
        quantile_sorted(&sorted, 0.5),
        mean(values),
        quantile_sorted(&sorted, 0.75),
        sorted[sorted.len() - 1],
    ])
}

/// Summarizes ratings along every dimension for the English, Indian and
/// overall groups. Quartiles use linear interpolation.
pub fn ratings_summary(rows: &[RatingsRow]) -> Result<RatingsSummary, SelectError> {
    if rows.is_empty() {
        return Err(SelectError::EmptyRatings);
    }
    let take = |dim: usize, row: &RatingsRow| -> f64 {
        match dim {
            0 => row.v,
            1 => row.a,
            2 => row.d,
            3 => row.l,
            _ => row.f,
        }
    };
    let group_of = |g: usize, row: &RatingsRow| -> bool {
        match g {
            0 => row.culture == Culture::Eng,
            1 => row.culture == Culture::Ind,
            _ => true,
        }
    };
    let mut table = Vec::with_capacity(5);
    for dim in 0..5 {
        let mut per_group = Vec::with_capacity(3);
        for g in 0..3 {
            let values: Vec<f64> =
                rows.iter().filter(|r| group_of(g, r)).map(|r| take(dim, r)).collect();
            per_group.push(six_stats(&values));
        }
        table.push(per_group);
    }
    let group_sizes = [
        rows.iter().filter(|r| r.culture == Culture::Eng).count(),
        rows.iter().filter(|r| r.culture == Culture::Ind).count(),
        rows.len(),
    ];
    Ok(RatingsSummary { table, group_sizes })
}

impl RatingsSummary {
    /// CSV rendering: one row per statistic, `dim_group` columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic");
        for dim in SUMMARY_DIMS {
            for group in SUMMARY_GROUPS {
                out.push_str(&format!(",{dim}_{group}"));
            }
        }
        out.push('\n');
        for (s, label) in SUMMARY_ROWS.iter().enumerate() {
            out.push_str(label);
            for dim in 0..5 {
                for group in 0..3 {
                    match self.table[dim][group] {
                        Some(stats) => out.push_str(&format!(",{:.2}", stats[s])),
                        None => out.push_str(",NA"),
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    /// Aligned text rendering in the same row order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:<8}", ""));
        for dim in SUMMARY_DIMS {
            for group in SUMMARY_GROUPS {
                out.push_str(&format!("{:>10}", format!("{dim}_{group}")));
            }
        }
        out.push('\n');
        for (s, label) in SUMMARY_ROWS.iter().enumerate() {
            out.push_str(&format!("{label:<8}"));
            for dim in 0..5 {
                for group in 0..3 {
                    match self.table[dim][group] {
                        Some(stats) => out.push_str(&format!("{:>10.2}", stats[s])),
                        None => out.push_str(&format!("{:>10}", "NA")),
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
