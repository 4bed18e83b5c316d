//! Color-energy cue: an HLS-histogram colorfulness term weighted by a
//! warm-hue pixel term.
//!
//! The cue multiplies two quantities: the pairwise spread of the 8x8x8 HLS
//! histogram, `sum_ij p(c_i) p(c_j) d(c_i, c_j)` with `d` the Euclidean
//! distance between bin centers in normalized (h/360, l, s) coordinates,
//! and the per-pixel sum `sum_k E(h_k) s_k l_k` where the hue energy
//! `E(h) = (1 + cos(h - h_warm)) / 2` peaks at a configurable warm hue.

use crate::media::{rgb_to_hls, Frame};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColorEnergyParams {
    /// Histogram bins per HLS axis.
    pub bins: usize,
    /// Hue (degrees) at which the hue-energy model peaks.
    pub warm_hue_deg: f64,
}

impl Default for ColorEnergyParams {
    fn default() -> Self {
        Self { bins: 8, warm_hue_deg: 30.0 }
    }
}

/// Hue energy `E(h) = (1 + cos(h - h_warm)) / 2`, in [0, 1].
pub fn hue_energy(h_deg: f64, warm_hue_deg: f64) -> f64 {
    (1.0 + (h_deg - warm_hue_deg).to_radians().cos()) / 2.0
}

/// Color energy of one frame.
pub fn color_energy(frame: &Frame, params: &ColorEnergyParams) -> f64 {
    let bins = params.bins;
    let mut hist = vec![0.0f64; bins * bins * bins];
    let mut pixel_term = 0.0;
    let n = frame.num_pixels() as f64;
    if n == 0.0 {
        return 0.0;
    }
    let bin_of = |unit: f64| -> usize { ((unit * bins as f64) as usize).min(bins - 1) };
    for (r, g, b) in frame.pixels() {
        let (h, l, s) = rgb_to_hls(r, g, b);
        let hb = bin_of(h / 360.0);
        let lb = bin_of(l);
        let sb = bin_of(s);
        hist[(hb * bins + lb) * bins + sb] += 1.0;
        pixel_term += hue_energy(h, params.warm_hue_deg) * s * l;
    }
    // Pairwise spread over occupied bins only; empty frames and
    // single-color frames both collapse to zero.
    let occupied: Vec<(usize, f64)> = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0.0)
        .map(|(i, &c)| (i, c / n))
        .collect();
    let center = |i: usize| -> (f64, f64, f64) {
        let hb = i / (bins * bins);
        let lb = (i / bins) % bins;
        let sb = i % bins;
        let c = |b: usize| (b as f64 + 0.5) / bins as f64;
        (c(hb), c(lb), c(sb))
    };
    let mut pairwise = 0.0;
    for (ai, (ia, pa)) in occupied.iter().enumerate() {
        let (ha, la, sa) = center(*ia);
        for (ib, pb) in occupied.iter().skip(ai + 1) {
            let (hb, lb, sb) = center(*ib);
            let d = ((ha - hb).powi(2) + (la - lb).powi(2) + (sa - sb).powi(2)).sqrt();
            pairwise += 2.0 * pa * pb * d;
        }
    }
    pairwise * pixel_term
}
