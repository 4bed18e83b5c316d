//! Valence/arousal scoring: assemble per-dimension feature vectors from the
//! audio and video blocks, fit one PCA per (dimension, modality) block with
//! a cumulative explained-variance rule, score each stimulus as the norm of
//! its concatenated projections, and rescale scores to the 1..9 rating
//! range.

mod pca;

pub use pca::{fit_pca, jacobi_eigen, normalize, Normalized, PcaError, PcaModel};

use crate::audio::{AudioFeatureBlock, AUDIO_SLOTS};
use crate::video::{VideoFeatureBlock, VIDEO_SLOTS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VaError {
    #[error("unknown feature slot '{0}'")]
    UnknownSlot(String),
    #[error("slot '{slot}' assigned twice within the {vector} vector")]
    DuplicateSlot { slot: String, vector: &'static str },
    #[error("the {0} vector has no slots")]
    EmptyVector(&'static str),
    #[error("need at least 2 stimuli (got {0})")]
    TooFewStimuli(usize),
    #[error(transparent)]
    Pca(#[from] PcaError),
}

/// Which feature slots feed each of the four vectors. The default mapping
/// produces audio vectors of 38 (valence) and 64 (arousal) values and video
/// vectors of 14 values each.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct VaMapping {
    pub valence_audio: Vec<String>,
    pub arousal_audio: Vec<String>,
    pub valence_video: Vec<String>,
    pub arousal_video: Vec<String>,
}

impl Default for VaMapping {
    fn default() -> Self {
        let audio_all: Vec<String> = AUDIO_SLOTS.iter().map(|(n, _)| n.to_string()).collect();
        Self {
            // All audio families except the chroma pair, flux and roll-off.
            valence_audio: audio_all
                .iter()
                .filter(|n| {
                    !matches!(n.as_str(), "chroma_vector" | "chroma_deviation" | "flux" | "rolloff")
                })
                .cloned()
                .collect(),
            // All audio families except centroid and spread.
            arousal_audio: audio_all
                .iter()
                .filter(|n| !matches!(n.as_str(), "centroid" | "spread"))
                .cloned()
                .collect(),
            valence_video: vec!["brightness".into(), "rhythm".into()],
            arousal_video: vec!["motion".into(), "shot_rate".into()],
        }
    }
}

fn audio_slot_width(name: &str) -> Option<usize> {
    AUDIO_SLOTS.iter().find(|(n, _)| *n == name).map(|(_, w)| *w)
}

fn video_slot_width(name: &str) -> Option<usize> {
    VIDEO_SLOTS.iter().find(|(n, _)| *n == name).map(|(_, w)| *w)
}

fn check_vector(
    names: &[String],
    vector: &'static str,
    width_of: impl Fn(&str) -> Option<usize>,
) -> Result<usize, VaError> {
    if names.is_empty() {
        return Err(VaError::EmptyVector(vector));
    }
    let mut seen = Vec::new();
    let mut total = 0;
    for name in names {
        let width = width_of(name).ok_or_else(|| VaError::UnknownSlot(name.clone()))?;
        if seen.contains(&name) {
            return Err(VaError::DuplicateSlot { slot: name.clone(), vector });
        }
        seen.push(name);
        total += width;
    }
    Ok(total)
}

impl VaMapping {
    /// Validates slot names and uniqueness; returns the four vector widths
    /// (valence audio, arousal audio, valence video, arousal video).
    pub fn validate(&self) -> Result<(usize, usize, usize, usize), VaError> {
        Ok((
            check_vector(&self.valence_audio, "valence_audio", audio_slot_width)?,
            check_vector(&self.arousal_audio, "arousal_audio", audio_slot_width)?,
            check_vector(&self.valence_video, "valence_video", video_slot_width)?,
            check_vector(&self.arousal_video, "arousal_video", video_slot_width)?,
        ))
    }
}

/// The four per-stimulus feature vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VaVectors {
    pub valence_audio: Vec<f64>,
    pub arousal_audio: Vec<f64>,
    pub valence_video: Vec<f64>,
    pub arousal_video: Vec<f64>,
}

/// Gathers the mapped slots out of one stimulus's feature blocks.
pub fn assemble_va_vectors(
    audio: &AudioFeatureBlock,
    video: &VideoFeatureBlock,
    mapping: &VaMapping,
) -> Result<VaVectors, VaError> {
    mapping.validate()?;
    let gather_audio = |names: &[String]| -> Vec<f64> {
        names.iter().flat_map(|n| audio.slot(n).expect("validated slot").to_vec()).collect()
    };
    let gather_video = |names: &[String]| -> Vec<f64> {
        names.iter().flat_map(|n| video.slot(n).expect("validated slot").to_vec()).collect()
    };
    Ok(VaVectors {
        valence_audio: gather_audio(&mapping.valence_audio),
        arousal_audio: gather_audio(&mapping.arousal_audio),
        valence_video: gather_video(&mapping.valence_video),
        arousal_video: gather_video(&mapping.arousal_video),
    })
}

/// Euclidean norm of the concatenated audio and video projections.
pub fn va_magnitude(audio_proj: &[f64], video_proj: &[f64]) -> f64 {
    audio_proj
        .iter()
        .chain(video_proj)
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}

/// Affine rescale of raw magnitudes onto [1, 9]: min maps to 1, max to 9.
/// Fewer than two distinct values collapse to 5 and are flagged.
#[derive(Debug, Clone)]
pub struct Rescaled {
    pub values: Vec<f64>,
    pub degenerate: bool,
}

pub fn rescale_1_9(values: &[f64]) -> Rescaled {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if values.len() < 2 || max <= min {
        return Rescaled { values: vec![5.0; values.len()], degenerate: true };
    }
    let span = max - min;
    Rescaled {
        values: values.iter().map(|v| 1.0 + 8.0 * (v - min) / span).collect(),
        degenerate: false,
    }
}

/// Calculated scores for one stimulus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VaScore {
    pub source_id: String,
    pub valence: f64,
    pub arousal: f64,
    pub raw_valence: f64,
    pub raw_arousal: f64,
}

/// One stimulus's extracted feature blocks, keyed by source id.
#[derive(Debug, Clone)]
pub struct StimulusFeatures {
    pub source_id: String,
    pub audio: AudioFeatureBlock,
    pub video: VideoFeatureBlock,
}

/// The four fitted models, one per (dimension, modality) block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VaModels {
    pub valence_audio: PcaModel,
    pub arousal_audio: PcaModel,
    pub valence_video: PcaModel,
    pub arousal_video: PcaModel,
}

/// Scored corpus: per-stimulus scores, the fitted models and the
/// per-stimulus projections (valence then arousal, audio concatenated with
/// video).
#[derive(Debug, Clone)]
pub struct ScoredCorpus {
    pub scores: Vec<VaScore>,
    pub models: VaModels,
    pub valence_projections: Vec<Vec<f64>>,
    pub arousal_projections: Vec<Vec<f64>>,
    /// True when all raw magnitudes on an axis tied and the rescale
    /// collapsed to 5.0.
    pub valence_degenerate: bool,
    pub arousal_degenerate: bool,
}

/// Full scoring pipeline over a corpus: assemble the four vectors per
/// stimulus, z-score and PCA-reduce each block separately, take projection
/// magnitudes and rescale each dimension onto [1, 9].
pub fn score_corpus(
    stimuli: &[StimulusFeatures],
    mapping: &VaMapping,
    variance_threshold: f64,
) -> Result<ScoredCorpus, VaError> {
    if stimuli.len() < 2 {
        return Err(VaError::TooFewStimuli(stimuli.len()));
    }
    let vectors: Vec<VaVectors> = stimuli
        .iter()
        .map(|s| assemble_va_vectors(&s.audio, &s.video, mapping))
        .collect::<Result<_, _>>()?;

    let fit = |take: fn(&VaVectors) -> &Vec<f64>| -> Result<(PcaModel, Vec<Vec<f64>>), VaError> {
        let matrix: Vec<Vec<f64>> = vectors.iter().map(|v| take(v).clone()).collect();
        let model = fit_pca(&matrix, variance_threshold)?;
        let projections = matrix
            .iter()
            .map(|row| model.project(row))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((model, projections))
    };
    let (va_model, va_proj) = fit(|v| &v.valence_audio)?;
    let (aa_model, aa_proj) = fit(|v| &v.arousal_audio)?;
    let (vv_model, vv_proj) = fit(|v| &v.valence_video)?;
    let (av_model, av_proj) = fit(|v| &v.arousal_video)?;

    let raw_valence: Vec<f64> = va_proj
        .iter()
        .zip(&vv_proj)
        .map(|(a, v)| va_magnitude(a, v))
        .collect();
    let raw_arousal: Vec<f64> = aa_proj
        .iter()
        .zip(&av_proj)
        .map(|(a, v)| va_magnitude(a, v))
        .collect();
    let valence = rescale_1_9(&raw_valence);
    let arousal = rescale_1_9(&raw_arousal);

    let scores = stimuli
        .iter()
        .enumerate()
        .map(|(i, s)| VaScore {
            source_id: s.source_id.clone(),
            valence: valence.values[i],
            arousal: arousal.values[i],
            raw_valence: raw_valence[i],
            raw_arousal: raw_arousal[i],
        })
        .collect();
    let valence_projections = va_proj
        .into_iter()
        .zip(vv_proj)
        .map(|(a, v)| a.into_iter().chain(v).collect())
        .collect();
    let arousal_projections = aa_proj
        .into_iter()
        .zip(av_proj)
        .map(|(a, v)| a.into_iter().chain(v).collect())
        .collect();
    Ok(ScoredCorpus {
        scores,
        models: VaModels {
            valence_audio: va_model,
            arousal_audio: aa_model,
            valence_video: vv_model,
            arousal_video: av_model,
        },
        valence_projections,
        arousal_projections,
        valence_degenerate: valence.degenerate,
        arousal_degenerate: arousal.degenerate,
    })
}
