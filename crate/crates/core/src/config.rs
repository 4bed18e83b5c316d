//! Whole-pipeline configuration, loaded from a single TOML file. Unknown
//! keys are rejected; every run re-emits the resolved config alongside its
//! outputs so results stay reproducible.

use crate::audio::AudioParams;
use crate::classify::HarnessConfig;
use crate::va::VaMapping;
use crate::video::VideoParams;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: toml::de::Error },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentConfig {
    pub window_s: f64,
    pub overlap_s: f64,
}

impl Default for SegmentConfig {
    fn default() -> Self {
        Self { window_s: 60.0, overlap_s: 55.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PcaConfig {
    pub variance_threshold: f64,
}

impl Default for PcaConfig {
    fn default() -> Self {
        Self { variance_threshold: 0.95 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectionConfig {
    pub quadrant_threshold: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self { quadrant_threshold: 5.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrawlSettings {
    pub base_url: String,
    pub results_per_keyword: usize,
    pub comments_per_video: usize,
    pub daily_limit: u64,
    /// `fixture` or `live`; fixtures are the default so nothing touches
    /// the network unless asked.
    pub transport: String,
}

impl Default for CrawlSettings {
    fn default() -> Self {
        Self {
            base_url: "https://www.googleapis.com/youtube/v3/search".into(),
            results_per_keyword: 5,
            comments_per_video: 100,
            daily_limit: crate::ingest::DEFAULT_DAILY_LIMIT,
            transport: "fixture".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Worker cap for data-parallel stages; 0 means rayon's default.
    pub jobs: usize,
    pub segment: SegmentConfig,
    pub audio: AudioParams,
    pub video: VideoParams,
    pub pca: PcaConfig,
    pub mapping: VaMapping,
    pub selection: SelectionConfig,
    pub classify: HarnessConfig,
    pub crawl: CrawlSettings,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: display.clone(), source })?;
        let config: Self =
            toml::from_str(&text).map_err(|source| ConfigError::Parse { path: display, source })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.segment.window_s <= self.segment.overlap_s {
            return Err(ConfigError::Invalid(format!(
                "segment window {} must exceed overlap {}",
                self.segment.window_s, self.segment.overlap_s
            )));
        }
        if !(0.0..=1.0).contains(&self.pca.variance_threshold) {
            return Err(ConfigError::Invalid(format!(
                "pca variance_threshold {} outside [0, 1]",
                self.pca.variance_threshold
            )));
        }
        if self.video.flow.window % 2 == 0 {
            return Err(ConfigError::Invalid(format!(
                "flow window {} must be odd",
                self.video.flow.window
            )));
        }
        if self.video.rhythm.l1 % 2 == 0 {
            return Err(ConfigError::Invalid(format!(
                "rhythm smoothing length {} must be odd",
                self.video.rhythm.l1
            )));
        }
        if !(0.0 < self.classify.train_fraction && self.classify.train_fraction < 1.0) {
            return Err(ConfigError::Invalid(format!(
                "classify train_fraction {} outside (0, 1)",
                self.classify.train_fraction
            )));
        }
        if !matches!(self.crawl.transport.as_str(), "fixture" | "live") {
            return Err(ConfigError::Invalid(format!(
                "crawl transport '{}' is neither 'fixture' nor 'live'",
                self.crawl.transport
            )));
        }
        self.mapping.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(())
    }

    /// The fully resolved config as TOML, for emission next to outputs.
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}
