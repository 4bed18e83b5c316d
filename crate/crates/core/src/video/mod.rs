//! Per-segment video cues: motion, rhythm, brightness and shot rate, each
//! collapsed to seven order statistics, plus the auxiliary color-energy
//! scalar.

mod color_energy;
mod flow;
mod shots;

pub use color_energy::{color_energy, hue_energy, ColorEnergyParams};
pub use flow::{luma, lucas_kanade, motion_series, FlowError, FlowParams, FlowVector};
pub use shots::{
    adaptive_thresholds, analyze_shots, color_histogram, cut_criteria, detect_shot_boundaries,
    rhythm_series, shot_boundary_profile, shot_lengths_s, shot_rate_series, RhythmParams,
    ShotBoundaryProfile, ShotParams, SUPPRESS_RADIUS,
};

use crate::media::{rgb_to_hsv, FrameSequence};
use crate::stats::{mean_std, quantile_sorted};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VideoError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("segment has no frames")]
    NoFrames,
}

/// Names of the four series slots, in block order.
pub const VIDEO_SLOTS: [(&str, usize); 4] =
    [("motion", 7), ("rhythm", 7), ("brightness", 7), ("shot_rate", 7)];

/// Total block width: 28.
pub const VIDEO_BLOCK_LEN: usize = 28;

/// Labels of the seven summary statistics, in slot order.
pub const SEVEN_STATS: [&str; 7] = ["min", "q1", "median", "mean", "q3", "max", "std"];

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct VideoParams {
    pub flow: FlowParams,
    pub shots: ShotParams,
    pub rhythm: RhythmParams,
    pub color_energy: ColorEnergyParams,
}

/// The per-segment video feature block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VideoFeatureBlock {
    /// The 28 block values in [`VIDEO_SLOTS`] order.
    pub values: Vec<f64>,
    /// Mean per-frame color energy; auxiliary, outside the block.
    pub color_energy: f64,
    /// True when a series was degenerate (e.g. a single-shot clip has an
    /// empty shot-rate series) and its slot was zero-filled.
    pub degenerate_series: bool,
}

impl VideoFeatureBlock {
    pub fn slot(&self, name: &str) -> Option<&[f64]> {
        let mut off = 0;
        for (slot, width) in VIDEO_SLOTS {
            if slot == name {
                return Some(&self.values[off..off + width]);
            }
            off += width;
        }
        None
    }

    /// Column names for CSV output, `motion_min` through `shot_rate_std`.
    pub fn column_names() -> Vec<String> {
        VIDEO_SLOTS
            .iter()
            .flat_map(|(slot, _)| SEVEN_STATS.iter().map(move |s| format!("{slot}_{s}")))
            .collect()
    }
}

/// {min, q1, median, mean, q3, max, std} of a series, quartiles by linear
/// interpolation. `None` for an empty series.
pub fn summarize7(series: &[f64]) -> Option<[f64; 7]> {
    if series.is_empty() {
        return None;
    }
    let mut sorted = series.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite series value"));
    let (mean, std) = mean_std(series);
    Some([
        sorted[0],
        quantile_sorted(&sorted, 0.25),
        quantile_sorted(&sorted, 0.5),
        mean,
        quantile_sorted(&sorted, 0.75),
        sorted[sorted.len() - 1],
        std,
    ])
}

/// Mean HSV value (brightness) of every frame.
pub fn brightness_series(frames: &FrameSequence) -> Vec<f64> {
    frames
        .frames
        .iter()
        .map(|f| {
            let total: f64 = f.pixels().map(|(r, g, b)| rgb_to_hsv(r, g, b).2).sum();
            total / f.num_pixels() as f64
        })
        .collect()
}

/// Per-frame color energy series.
pub fn color_energy_series(frames: &FrameSequence, params: &ColorEnergyParams) -> Vec<f64> {
    frames.frames.iter().map(|f| color_energy(f, params)).collect()
}

/// Per-frame traces backing the block, exported for plot-style dumps.
#[derive(Debug, Clone)]
pub struct VideoTraces {
    pub motion: Vec<f64>,
    pub rhythm: Vec<f64>,
    pub brightness: Vec<f64>,
    pub boundary_profile: Vec<f64>,
    pub boundaries: Vec<usize>,
    pub shot_rate: Vec<f64>,
    pub color_energy: Vec<f64>,
}

/// Runs all video cues over one segment. Returns the 28-value block plus
/// the per-frame traces.
pub fn extract_video_features(
    frames: &FrameSequence,
    params: &VideoParams,
) -> Result<(VideoFeatureBlock, VideoTraces), VideoError> {
    if frames.is_empty() {
        return Err(VideoError::NoFrames);
    }
    let motion = motion_series(frames, &params.flow)?;
    let profile = analyze_shots(frames, &params.shots);
    let rhythm = rhythm_series(&profile.boundaries, frames.len(), &params.rhythm);
    let brightness = brightness_series(frames);
    let lengths = shot_lengths_s(&profile.boundaries, frames.len(), frames.fps());
    let shot_rate = shot_rate_series(&lengths);
    let energy = color_energy_series(frames, &params.color_energy);

    let mut values = Vec::with_capacity(VIDEO_BLOCK_LEN);
    let mut degenerate = false;
    for series in [&motion, &rhythm, &brightness, &shot_rate] {
        match summarize7(series) {
            Some(stats) => values.extend_from_slice(&stats),
            None => {
                degenerate = true;
                values.extend_from_slice(&[0.0; 7]);
            }
        }
    }
    debug_assert_eq!(values.len(), VIDEO_BLOCK_LEN);
    let block = VideoFeatureBlock {
        values,
        color_energy: crate::stats::mean(&energy),
        degenerate_series: degenerate,
    };
    let traces = VideoTraces {
        motion,
        rhythm,
        brightness,
        boundary_profile: profile.m,
        boundaries: profile.boundaries,
        shot_rate,
        color_energy: energy,
    };
    Ok((block, traces))
}
