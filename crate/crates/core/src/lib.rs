//! Affective multimedia stimulus pipeline: bit-exact media readers, audio
//! and video feature extraction, PCA-based valence/arousal scoring,
//! emotion-word stimulus selection, comment sentiment pooling, crawl
//! planning, and a balanced-subsample classification harness.

pub mod audio;
pub mod classify;
pub mod config;
pub mod dsp;
pub mod ingest;
pub mod lexicon;
pub mod media;
pub mod select;
pub mod stats;
pub mod svg;
pub mod va;
pub mod video;

pub use audio::{AudioFeatureBlock, AudioParams};
pub use classify::{HarnessConfig, LabeledSample, MetricsReport};
pub use config::PipelineConfig;
pub use media::{AudioSignal, Frame, FrameSequence, Segment};
pub use va::{PcaModel, VaMapping, VaScore, VaVectors};
pub use video::{VideoFeatureBlock, VideoParams};
