//! Shot-boundary detection from color-histogram distances, shot-rate and
//! rhythm series.
//!
//! The per-pair distance profile `M` is thresholded through three joint
//! criteria: a first-difference jump (C1), a strong concave second
//! difference at the peak (C2, which separates a cut from its shoulders and
//! from fast object motion), and local uniqueness within +/-15 frames (C3).
//! Thresholds default to mean + 3 std of the respective series, computed
//! per clip, and can be overridden.

use crate::dsp::{convolve_same, kaiser};
use crate::media::{Frame, FrameSequence};
use crate::stats::mean_std;
use serde::{Deserialize, Serialize};

/// Half-width of the C3 uniqueness window in frames.
pub const SUPPRESS_RADIUS: usize = 15;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShotParams {
    /// Histogram bins per color channel.
    pub hist_bins: usize,
    /// Override for the first-difference threshold; adaptive when absent.
    pub th_b1: Option<f64>,
    /// Override for the second-difference threshold; adaptive when absent.
    pub th_b2: Option<f64>,
}

impl Default for ShotParams {
    fn default() -> Self {
        Self { hist_bins: 16, th_b1: None, th_b2: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RhythmParams {
    /// Decay constant of the shot-gap exponential, in frames.
    pub delta: f64,
    /// Kaiser smoothing window length (odd).
    pub l1: usize,
    /// Kaiser shape parameter.
    pub beta1: f64,
}

impl Default for RhythmParams {
    fn default() -> Self {
        Self { delta: 200.0, l1: 21, beta1: 5.0 }
    }
}

/// Per-frame-pair distance series plus detected boundaries and the
/// thresholds that produced them.
#[derive(Debug, Clone)]
pub struct ShotBoundaryProfile {
    /// `M[i]` = histogram distance between frames `i` and `i+1`.
    pub m: Vec<f64>,
    /// Indices `i` (into `m`) declared as cuts between frames `i` and `i+1`.
    pub boundaries: Vec<usize>,
    pub th_b1: f64,
    pub th_b2: f64,
}

/// Per-channel color histogram, each channel L1-normalized to 1, channels
/// concatenated (so the values sum to 3).
pub fn color_histogram(frame: &Frame, bins: usize) -> Vec<f64> {
    let mut hist = vec![0.0; bins * 3];
    let scale = bins as f64 / 256.0;
    for (r, g, b) in frame.pixels() {
        hist[(r as f64 * scale) as usize] += 1.0;
        hist[bins + (g as f64 * scale) as usize] += 1.0;
        hist[2 * bins + (b as f64 * scale) as usize] += 1.0;
    }
    let n = frame.num_pixels() as f64;
    if n > 0.0 {
        for v in &mut hist {
            *v /= n;
        }
    }
    hist
}

/// Sum over channels of the L2 distance between the channel histograms of
/// frames `i` and `i+1`, for every consecutive pair.
pub fn shot_boundary_profile(frames: &FrameSequence, bins: usize) -> Vec<f64> {
    let hists: Vec<Vec<f64>> =
        frames.frames.iter().map(|f| color_histogram(f, bins)).collect();
    hists
        .windows(2)
        .map(|w| {
            (0..3)
                .map(|ch| {
                    let lo = ch * bins;
                    let hi = lo + bins;
                    w[0][lo..hi]
                        .iter()
                        .zip(&w[1][lo..hi])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt()
                })
                .sum()
        })
        .collect()
}

/// Adaptive thresholds: `mean + 3 std` of `M` for the first-difference
/// criterion and of the first-difference series for the second-difference
/// criterion.
pub fn adaptive_thresholds(m: &[f64]) -> (f64, f64) {
    let (mu_m, sd_m) = mean_std(m);
    let dm: Vec<f64> = m.windows(2).map(|w| w[1] - w[0]).collect();
    let (mu_d, sd_d) = mean_std(&dm);
    (mu_m + 3.0 * sd_m, mu_d + 3.0 * sd_d)
}

fn first_diff(m: &[f64], i: usize) -> Option<f64> {
    if i == 0 || i >= m.len() {
        None
    } else {
        Some(m[i] - m[i - 1])
    }
}

fn second_diff(m: &[f64], i: usize) -> Option<f64> {
    if i == 0 || i + 1 >= m.len() {
        None
    } else {
        Some(m[i + 1] - 2.0 * m[i] + m[i - 1])
    }
}

/// C1 and C2 at index `i`: a first-difference jump above `th_b1` and a
/// concave second difference stronger than `th_b2`.
pub fn cut_criteria(m: &[f64], i: usize, th_b1: f64, th_b2: f64) -> (bool, bool) {
    let c1 = first_diff(m, i).map_or(false, |d| d.abs() > th_b1);
    let c2 = second_diff(m, i).map_or(false, |d| d.abs() > th_b2 && d < 0.0);
    (c1, c2)
}

/// Indices of `m` satisfying C1, C2 and the C3 uniqueness rule: a candidate
/// survives only if no other C1-and-C2 index lies within
/// [`SUPPRESS_RADIUS`] frames of it.
pub fn detect_shot_boundaries(m: &[f64], th_b1: f64, th_b2: f64) -> Vec<usize> {
    let candidates: Vec<usize> = (0..m.len())
        .filter(|&i| {
            let (c1, c2) = cut_criteria(m, i, th_b1, th_b2);
            c1 && c2
        })
        .collect();
    candidates
        .iter()
        .copied()
        .filter(|&i| {
            candidates
                .iter()
                .all(|&j| j == i || j.abs_diff(i) >= SUPPRESS_RADIUS)
        })
        .collect()
}

/// Full profile pipeline: histogram distances, thresholds (adaptive unless
/// overridden) and boundary detection.
pub fn analyze_shots(frames: &FrameSequence, params: &ShotParams) -> ShotBoundaryProfile {
    let m = shot_boundary_profile(frames, params.hist_bins);
    let (a1, a2) = adaptive_thresholds(&m);
    let th_b1 = params.th_b1.unwrap_or(a1);
    let th_b2 = params.th_b2.unwrap_or(a2);
    let boundaries = detect_shot_boundaries(&m, th_b1, th_b2);
    ShotBoundaryProfile { m, boundaries, th_b1, th_b2 }
}

/// Shot lengths in seconds. A boundary at profile index `i` cuts between
/// frames `i` and `i+1`; clip edges bound the first and last shot.
pub fn shot_lengths_s(boundaries: &[usize], n_frames: usize, fps: f64) -> Vec<f64> {
    let mut edges = Vec::with_capacity(boundaries.len() + 2);
    edges.push(0usize);
    edges.extend(boundaries.iter().map(|&b| b + 1));
    edges.push(n_frames);
    edges
        .windows(2)
        .map(|w| (w[1] as f64 - w[0] as f64) / fps)
        .collect()
}

/// Rate of change of shot length: successive differences of the per-shot
/// lengths. A single-shot clip yields an empty series.
pub fn shot_rate_series(shot_lengths: &[f64]) -> Vec<f64> {
    shot_lengths.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Per-frame pacing series: `c(k) = 100 exp((1 - gap(k)) / delta)` where
/// `gap(k)` is the frame distance between the enclosing shot boundaries
/// (clip edges when a side has none), smoothed by a Kaiser window and
/// rescaled so its maximum matches `max(c)`.
pub fn rhythm_series(boundaries: &[usize], n_frames: usize, params: &RhythmParams) -> Vec<f64> {
    if n_frames == 0 {
        return Vec::new();
    }
    let mut edges = Vec::with_capacity(boundaries.len() + 2);
    edges.push(0usize);
    edges.extend(boundaries.iter().map(|&b| b + 1));
    edges.push(n_frames);

    let mut c = Vec::with_capacity(n_frames);
    for k in 0..n_frames {
        let p = *edges.iter().filter(|&&e| e <= k).max().unwrap();
        let n = *edges.iter().filter(|&&e| e > k).min().unwrap_or(&n_frames);
        let gap = (n - p) as f64;
        c.push(100.0 * ((1.0 - gap) / params.delta).exp());
    }
    let smoothed = convolve_same(&c, &kaiser(params.l1, params.beta1))
        .expect("kaiser length is odd");
    let max_c = c.iter().cloned().fold(f64::MIN, f64::max);
    let max_s = smoothed.iter().cloned().fold(f64::MIN, f64::max);
    if max_s <= 0.0 {
        return smoothed;
    }
    smoothed.into_iter().map(|v| v * max_c / max_s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solid(r: u8, g: u8, b: u8) -> Frame {
        Frame::from_rgb(8, 8, (0..64).flat_map(|_| [r, g, b]).collect())
    }

    fn clip(shots: &[(usize, (u8, u8, u8))]) -> FrameSequence {
        let frames: Vec<Frame> = shots
            .iter()
            .flat_map(|&(len, (r, g, b))| std::iter::repeat_with(move || solid(r, g, b)).take(len))
            .collect();
        FrameSequence::new(frames, 25, 1)
    }

    #[test]
    fn histogram_black_frame_fills_first_bins() {
        let h = color_histogram(&solid(0, 0, 0), 16);
        assert_eq!(h[0], 1.0);
        assert_eq!(h[16], 1.0);
        assert_eq!(h[32], 1.0);
    }

    #[test]
    fn histogram_sums_to_three() {
        let frame = Frame::from_rgb(2, 2, vec![10, 200, 30, 99, 0, 255, 1, 2, 3, 250, 128, 64]);
        let h = color_histogram(&frame, 16);
        assert!((h.iter().sum::<f64>() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_invariant_to_pixel_shuffle() {
        let a = Frame::from_rgb(2, 2, vec![10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120]);
        let b = Frame::from_rgb(2, 2, vec![70, 80, 90, 10, 20, 30, 100, 110, 120, 40, 50, 60]);
        assert_eq!(color_histogram(&a, 16), color_histogram(&b, 16));
    }

    #[test]
    fn single_hard_cut_detected_at_exact_index() {
        // 30 black then 30 white frames: the cut sits between frames 29 and
        // 30, i.e. at profile index 29.
        let seq = clip(&[(30, (0, 0, 0)), (30, (255, 255, 255))]);
        let profile = analyze_shots(&seq, &ShotParams::default());
        assert_eq!(profile.boundaries, vec![29]);
        // The detected index verifiably satisfies C1 and C2.
        let (c1, c2) = cut_criteria(&profile.m, 29, profile.th_b1, profile.th_b2);
        assert!(c1 && c2);
    }

    #[test]
    fn constant_clip_has_no_boundaries() {
        let seq = clip(&[(40, (30, 60, 90))]);
        let profile = analyze_shots(&seq, &ShotParams::default());
        assert!(profile.boundaries.is_empty());
        assert!(profile.m.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn close_cuts_are_suppressed_by_uniqueness() {
        // Two cuts 10 frames apart (< the 15-frame window): C3 suppresses
        // them, so at most one boundary may survive.
        let seq = clip(&[(20, (0, 0, 0)), (10, (255, 255, 255)), (20, (200, 30, 30))]);
        let profile = analyze_shots(&seq, &ShotParams::default());
        assert!(profile.boundaries.len() <= 1, "got {:?}", profile.boundaries);
    }

    #[test]
    fn distant_cuts_are_all_recovered() {
        let seq = clip(&[
            (25, (0, 0, 0)),
            (25, (255, 255, 255)),
            (25, (200, 30, 30)),
            (25, (30, 200, 30)),
        ]);
        let profile = analyze_shots(&seq, &ShotParams::default());
        assert_eq!(profile.boundaries, vec![24, 49, 74]);
    }

    #[test]
    fn detected_boundaries_satisfy_all_criteria_post_hoc() {
        let seq = clip(&[(30, (0, 0, 0)), (40, (255, 255, 255)), (30, (10, 10, 200))]);
        let p = analyze_shots(&seq, &ShotParams::default());
        for &b in &p.boundaries {
            let (c1, c2) = cut_criteria(&p.m, b, p.th_b1, p.th_b2);
            assert!(c1 && c2, "criteria fail at {b}");
            for j in b.saturating_sub(SUPPRESS_RADIUS - 1)..=(b + SUPPRESS_RADIUS - 1).min(p.m.len() - 1) {
                if j != b {
                    let (o1, o2) = cut_criteria(&p.m, j, p.th_b1, p.th_b2);
                    assert!(!(o1 && o2), "uniqueness violated at {j}");
                }
            }
        }
    }

    #[test]
    fn shot_lengths_and_rate_series() {
        // Boundaries after frames 49 and 149 at 25 fps: shots of 2 s, 4 s, 1 s.
        let lengths = shot_lengths_s(&[49, 149], 175, 25.0);
        assert_eq!(lengths, vec![2.0, 4.0, 1.0]);
        assert_eq!(shot_rate_series(&lengths), vec![2.0, -3.0]);
    }

    #[test]
    fn equal_shots_have_zero_rate() {
        let lengths = shot_lengths_s(&[24, 49, 74], 100, 25.0);
        assert_eq!(lengths, vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(shot_rate_series(&lengths), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn no_boundaries_is_single_shot() {
        let lengths = shot_lengths_s(&[], 250, 25.0);
        assert_eq!(lengths, vec![10.0]);
        assert!(shot_rate_series(&lengths).is_empty());
    }

    #[test]
    fn rhythm_peaks_at_unit_gap() {
        // A shot gap of one frame gives c = 100 exactly.
        let c = rhythm_series(&[], 1, &RhythmParams::default());
        assert_eq!(c.len(), 1);
        assert!((c[0] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn rhythm_decreases_with_larger_gaps() {
        let params = RhythmParams::default();
        let short_gap = rhythm_series(&[4], 10, &params);
        let long_gap = rhythm_series(&[], 10, &params);
        // Unsmoothed c for a 5-frame shot exceeds c for a 10-frame shot;
        // after identical smoothing the max ordering is preserved.
        let max_short = short_gap.iter().cloned().fold(f64::MIN, f64::max);
        let max_long = long_gap.iter().cloned().fold(f64::MIN, f64::max);
        assert!(max_short > max_long);
    }

    #[test]
    fn rhythm_max_matches_raw_max() {
        let params = RhythmParams::default();
        let boundaries = [24, 49, 99];
        let n = 150;
        let g2 = rhythm_series(&boundaries, n, &params);
        // Recompute raw c to compare maxima.
        let mut edges = vec![0usize];
        edges.extend(boundaries.iter().map(|&b| b + 1));
        edges.push(n);
        let mut max_c = f64::MIN;
        for k in 0..n {
            let p = *edges.iter().filter(|&&e| e <= k).max().unwrap();
            let nx = *edges.iter().filter(|&&e| e > k).min().unwrap();
            let c = 100.0 * ((1.0 - (nx - p) as f64) / params.delta).exp();
            max_c = max_c.max(c);
        }
        let max_g2 = g2.iter().cloned().fold(f64::MIN, f64::max);
        assert!((max_g2 - max_c).abs() < 1e-9);
    }
}
