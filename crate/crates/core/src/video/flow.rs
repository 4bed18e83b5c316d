//! Dense-grid Lucas-Kanade optical flow between consecutive frames.
//!
//! Flow is estimated on a fixed pixel grid rather than detected corners so
//! results are deterministic and synthetic fixtures are easy to reason
//! about. Each grid point solves the windowed least-squares system
//! `[sum Ix^2, sum IxIy; sum IxIy, sum Iy^2] (u, v) = -(sum IxIt, sum IyIt)`;
//! points whose structure tensor is near-singular are marked invalid.

use crate::media::{Frame, FrameSequence};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("image {w}x{h} too small for a {window}-pixel flow window")]
    ImageTooSmall { w: u32, h: u32, window: usize },
    #[error("motion needs at least 2 frames (got {0})")]
    TooFewFrames(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowParams {
    /// Spacing of flow grid points in pixels.
    pub grid_step: usize,
    /// Square window side in pixels; must be odd.
    pub window: usize,
    /// Structure-tensor eigenvalue floor below which a point is invalid.
    pub min_eigenvalue: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self { grid_step: 8, window: 15, min_eigenvalue: 1.0 }
    }
}

/// Flow estimate at one grid point.
#[derive(Debug, Clone, Copy)]
pub struct FlowVector {
    pub x: usize,
    pub y: usize,
    pub u: f64,
    pub v: f64,
    /// False when the structure tensor was rank-deficient at this point.
    pub valid: bool,
}

/// BT.601 luma plane of a frame, values in 0..=255.
pub fn luma(frame: &Frame) -> Vec<f64> {
    frame
        .pixels()
        .map(|(r, g, b)| 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64)
        .collect()
}

/// Lucas-Kanade flow on a regular grid between two equally sized luma
/// planes.
pub fn lucas_kanade(
    prev: &[f64],
    next: &[f64],
    width: usize,
    height: usize,
    params: &FlowParams,
) -> Result<Vec<FlowVector>, FlowError> {
    assert_eq!(prev.len(), width * height, "prev plane size mismatch");
    assert_eq!(next.len(), width * height, "next plane size mismatch");
    let half = params.window / 2;
    // Gradients use central differences, so keep one extra border pixel.
    let margin = half + 1;
    if width < 2 * margin + 1 || height < 2 * margin + 1 {
        return Err(FlowError::ImageTooSmall {
            w: width as u32,
            h: height as u32,
            window: params.window,
        });
    }
    let at = |img: &[f64], x: usize, y: usize| img[y * width + x];
    let mut out = Vec::new();
    let mut y = margin;
    while y < height - margin {
        let mut x = margin;
        while x < width - margin {
            let (mut sxx, mut sxy, mut syy, mut sxt, mut syt) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for wy in y - half..=y + half {
                for wx in x - half..=x + half {
                    let ix = (at(prev, wx + 1, wy) - at(prev, wx - 1, wy)) / 2.0;
                    let iy = (at(prev, wx, wy + 1) - at(prev, wx, wy - 1)) / 2.0;
                    let it = at(next, wx, wy) - at(prev, wx, wy);
                    sxx += ix * ix;
                    sxy += ix * iy;
                    syy += iy * iy;
                    sxt += ix * it;
                    syt += iy * it;
                }
            }
            let trace = sxx + syy;
            let det = sxx * syy - sxy * sxy;
            let lambda_min = (trace - (trace * trace - 4.0 * det).max(0.0).sqrt()) / 2.0;
            if lambda_min < params.min_eigenvalue {
                out.push(FlowVector { x, y, u: 0.0, v: 0.0, valid: false });
            } else {
                let u = (-sxt * syy + sxy * syt) / det;
                let v = (sxy * sxt - sxx * syt) / det;
                out.push(FlowVector { x, y, u, v, valid: true });
            }
            x += params.grid_step;
        }
        y += params.grid_step;
    }
    Ok(out)
}

/// Mean flow magnitude `sqrt(u^2 + v^2)` over valid grid points for every
/// consecutive frame pair; 0 where no point is valid. Length is
/// `frame_count - 1`.
pub fn motion_series(frames: &FrameSequence, params: &FlowParams) -> Result<Vec<f64>, FlowError> {
    if frames.len() < 2 {
        return Err(FlowError::TooFewFrames(frames.len()));
    }
    let width = frames.frames[0].width() as usize;
    let height = frames.frames[0].height() as usize;
    let planes: Vec<Vec<f64>> = frames.frames.iter().map(luma).collect();
    let mut series = Vec::with_capacity(frames.len() - 1);
    for pair in planes.windows(2) {
        let flow = lucas_kanade(&pair[0], &pair[1], width, height, params)?;
        let valid: Vec<&FlowVector> = flow.iter().filter(|f| f.valid).collect();
        if valid.is_empty() {
            series.push(0.0);
        } else {
            let total: f64 = valid.iter().map(|f| (f.u * f.u + f.v * f.v).sqrt()).sum();
            series.push(total / valid.len() as f64);
        }
    }
    Ok(series)
}
