//! Affective keyword lists and lexicon-based comment polarity.
//!
//! Comments are tokenized on non-letter boundaries and scored by summing
//! integer word weights; the comment's polarity is the sign of the sum.
//! Per-video polarity pools the +1/-1 comment counts.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: expected 'word<TAB>score', got '{text}'")]
    BadLexiconLine { path: String, line: usize, text: String },
}

/// Word -> integer sentiment score, typically -5..=5. Keys are lowercase.
#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    scores: HashMap<String, i32>,
}

impl SentimentLexicon {
    pub fn from_entries(entries: impl IntoIterator<Item = (String, i32)>) -> Self {
        let mut scores = HashMap::new();
        for (word, score) in entries {
            scores.insert(word.to_lowercase(), score);
        }
        Self { scores }
    }

    /// Loads a tab-separated `word<TAB>score` file. Blank lines and `#`
    /// comments are skipped.
    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let display = path.display().to_string();
        let file = std::fs::File::open(path)
            .map_err(|source| LexiconError::Io { path: display.clone(), source })?;
        let mut scores = HashMap::new();
        for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|source| LexiconError::Io { path: display.clone(), source })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (word, score) = trimmed
                .split_once('\t')
                .ok_or_else(|| LexiconError::BadLexiconLine {
                    path: display.clone(),
                    line: i + 1,
                    text: trimmed.to_string(),
                })?;
            let score: i32 = score.trim().parse().map_err(|_| LexiconError::BadLexiconLine {
                path: display.clone(),
                line: i + 1,
                text: trimmed.to_string(),
            })?;
            scores.insert(word.trim().to_lowercase(), score);
        }
        Ok(Self { scores })
    }

    pub fn score_of(&self, word: &str) -> Option<i32> {
        self.scores.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Loads a one-word-per-line keyword file: lowercased, deduplicated,
/// original order preserved.
pub fn load_keywords(path: &Path) -> Result<Vec<String>, LexiconError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path)
        .map_err(|source| LexiconError::Io { path: display.clone(), source })?;
    let mut seen = std::collections::HashSet::new();
    let mut words = Vec::new();
    for line in std::io::BufReader::new(file).lines() {
        let line = line.map_err(|source| LexiconError::Io { path: display.clone(), source })?;
        let word = line.trim().to_lowercase();
        if !word.is_empty() && seen.insert(word.clone()) {
            words.push(word);
        }
    }
    Ok(words)
}

/// A video's fetched comments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommentBatch {
    pub video_id: String,
    pub comments: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

/// Pooled comment polarity for one video.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VideoPolarity {
    pub video_id: String,
    /// Count of comments scored +1.
    pub pos_sum: usize,
    /// Count of comments scored -1.
    pub neg_sum: usize,
    pub label: Polarity,
}

/// Sign of the summed lexicon scores of the comment's tokens:
/// +1, -1, or 0 (no matches or a zero sum).
pub fn score_comment(text: &str, lexicon: &SentimentLexicon) -> i32 {
    let mut sum = 0i64;
    for token in text.split(|c: char| !c.is_alphabetic()) {
        if token.is_empty() {
            continue;
        }
        if let Some(s) = lexicon.score_of(&token.to_lowercase()) {
            sum += s as i64;
        }
    }
    sum.signum() as i32
}

/// Pools per-comment polarities: positive if strictly more +1 comments than
/// -1 comments, negative in the opposite case, neutral on a tie.
pub fn video_polarity(batch: &CommentBatch, lexicon: &SentimentLexicon) -> VideoPolarity {
    let mut pos_sum = 0;
    let mut neg_sum = 0;
    for comment in &batch.comments {
        match score_comment(comment, lexicon) {
            1 => pos_sum += 1,
            -1 => neg_sum += 1,
            _ => {}
        }
    }
    let label = match pos_sum.cmp(&neg_sum) {
        std::cmp::Ordering::Greater => Polarity::Positive,
        std::cmp::Ordering::Less => Polarity::Negative,
        std::cmp::Ordering::Equal => Polarity::Neutral,
    };
    VideoPolarity { video_id: batch.video_id.clone(), pos_sum, neg_sum, label }
}
