//! Fixed-duration segmentation of a decoded clip into overlapping windows.

use super::{AudioSignal, Frame, FrameSequence};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SegmentError {
    #[error("window {window_s} s must exceed overlap {overlap_s} s")]
    NonPositiveHop { window_s: f64, overlap_s: f64 },
    #[error("negative overlap {0} s")]
    NegativeOverlap(f64),
    #[error("media is empty")]
    EmptyMedia,
}

/// One time-aligned slice of a source clip.
#[derive(Debug, Clone)]
pub struct Segment {
    pub source_id: String,
    pub start_s: f64,
    pub end_s: f64,
    /// True when the segment is shorter than the full window (clip tail).
    pub short: bool,
    pub audio: AudioSignal,
    pub frames: FrameSequence,
}

/// Manifest line describing a segment, one JSON object per line.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SegmentRecord {
    pub source_id: String,
    pub start_s: f64,
    pub end_s: f64,
    pub short: bool,
}

impl Segment {
    pub fn record(&self) -> SegmentRecord {
        SegmentRecord {
            source_id: self.source_id.clone(),
            start_s: self.start_s,
            end_s: self.end_s,
            short: self.short,
        }
    }
}

const TIME_EPS: f64 = 1e-9;

/// Cuts a clip into `window_s`-second segments whose start times advance by
/// `window_s - overlap_s`. A remainder shorter than the window is kept as a
/// final segment flagged `short` so the segments tile the whole clip; a clip
/// shorter than one window yields a single short segment.
pub fn segment_media(
    audio: &AudioSignal,
    frames: &FrameSequence,
    source_id: &str,
    window_s: f64,
    overlap_s: f64,
) -> Result<Vec<Segment>, SegmentError> {
    if overlap_s < 0.0 {
        return Err(SegmentError::NegativeOverlap(overlap_s));
    }
    if window_s <= overlap_s {
        return Err(SegmentError::NonPositiveHop { window_s, overlap_s });
    }
    let duration = audio.duration_s().min(frames.duration_s());
    if duration <= 0.0 {
        return Err(SegmentError::EmptyMedia);
    }
    let hop = window_s - overlap_s;

    let mut segments = Vec::new();
    let mut start = 0.0;
    while start + window_s <= duration + TIME_EPS {
        segments.push(cut(audio, frames, source_id, start, start + window_s, false));
        start += hop;
    }
    let covered = segments.last().map_or(0.0, |s: &Segment| s.end_s);
    if covered + TIME_EPS < duration {
        // Tail shorter than a full window; start stays on the hop grid
        // unless no full segment fits at all.
        let tail_start = if segments.is_empty() { 0.0 } else { start };
        segments.push(cut(audio, frames, source_id, tail_start, duration, true));
    }
    Ok(segments)
}

fn cut(
    audio: &AudioSignal,
    frames: &FrameSequence,
    source_id: &str,
    start_s: f64,
    end_s: f64,
    short: bool,
) -> Segment {
    let sr = audio.sample_rate as f64;
    let s0 = ((start_s * sr).round() as usize).min(audio.samples.len());
    let s1 = ((end_s * sr).round() as usize).min(audio.samples.len());
    let fps = frames.fps();
    let f0 = ((start_s * fps).round() as usize).min(frames.len());
    let f1 = ((end_s * fps).round() as usize).min(frames.len());
    let sliced: Vec<Frame> = frames.frames[f0..f1].to_vec();
    Segment {
        source_id: source_id.to_string(),
        start_s,
        end_s,
        short,
        audio: AudioSignal::new(audio.samples[s0..s1].to_vec(), audio.sample_rate),
        frames: FrameSequence::new(sliced, frames.fps_num, frames.fps_den),
    }
}
