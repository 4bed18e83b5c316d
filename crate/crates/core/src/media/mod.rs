//! Decoded-media containers and the fixed-duration segmenter.
//!
//! Input formats are deliberately restricted to uncompressed WAV
//! (PCM16 / float32) and YUV4MPEG2 so decoding is bit-exact and free of
//! codec dependencies; compressed sources are transcoded externally.

mod color;
mod segment;
mod wav;
mod y4m;

pub use color::{rgb_to_hls, rgb_to_hsv};
pub use segment::{segment_media, Segment, SegmentError, SegmentRecord};
pub use wav::{read_wav, write_wav, WavError, WavSampleFormat};
pub use y4m::{read_y4m, write_y4m, Y4mError};

use std::sync::Arc;

/// Mono audio with samples in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioSignal {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl AudioSignal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        assert!(sample_rate > 0, "sample rate must be positive");
        Self { samples, sample_rate }
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// A single RGB frame. Pixel data is shared, so cloning a frame is cheap
/// and segments can alias the source clip.
#[derive(Debug, Clone)]
pub struct Frame {
    width: u32,
    height: u32,
    data: Arc<[u8]>,
}

impl Frame {
    /// Wraps packed RGB8 data (`width * height * 3` bytes).
    pub fn from_rgb(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), (width * height * 3) as usize, "RGB payload size mismatch");
        Self { width, height, data: data.into() }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn rgb(&self, x: u32, y: u32) -> (u8, u8, u8) {
        let i = ((y * self.width + x) * 3) as usize;
        (self.data[i], self.data[i + 1], self.data[i + 2])
    }

    /// Iterates over pixels in row-major order.
    pub fn pixels(&self) -> impl Iterator<Item = (u8, u8, u8)> + '_ {
        self.data.chunks_exact(3).map(|p| (p[0], p[1], p[2]))
    }

    pub fn num_pixels(&self) -> usize {
        (self.width * self.height) as usize
    }

    pub fn raw(&self) -> &[u8] {
        &self.data
    }
}

/// An ordered run of equally sized frames at a fixed frame rate.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    pub frames: Vec<Frame>,
    pub fps_num: u32,
    pub fps_den: u32,
}

impl FrameSequence {
    pub fn new(frames: Vec<Frame>, fps_num: u32, fps_den: u32) -> Self {
        assert!(fps_num > 0 && fps_den > 0, "frame rate must be positive");
        if let Some(first) = frames.first() {
            assert!(
                frames.iter().all(|f| f.width == first.width && f.height == first.height),
                "all frames must share dimensions"
            );
        }
        Self { frames, fps_num, fps_den }
    }

    pub fn fps(&self) -> f64 {
        self.fps_num as f64 / self.fps_den as f64
    }

    pub fn duration_s(&self) -> f64 {
        self.frames.len() as f64 / self.fps()
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}
