//! Short-term audio features summarized per segment into a fixed 68-slot
//! block: 13 MFCCs, energy, spectral entropy, zero-crossing rate, energy
//! entropy, spectral centroid and spread, flux, roll-off, the 12-bin chroma
//! vector and its deviation — each as (mean, std) over the frame series.

use crate::dsp::{
    dct2, hamming, next_pow2, power_spectrum, pre_emphasis, DspError, FrameMatrix,
    MelFilterBank, PowerSpectrum,
};
use crate::media::AudioSignal;
use crate::stats::mean_std;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AudioError {
    #[error("segment too short for one {0}-sample analysis frame")]
    TooShort(usize),
    #[error("filterbank bin count {fb} does not match spectrum bin count {ps}")]
    ShapeMismatch { fb: usize, ps: usize },
    #[error(transparent)]
    Dsp(#[from] DspError),
}

/// Extraction parameters. Frame sizes follow the common short-term analysis
/// defaults and are recorded in output manifests.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AudioParams {
    pub window_ms: f64,
    pub hop_ms: f64,
    /// Pre-emphasis coefficient for the cepstral chain.
    pub pre_emphasis: f64,
    pub n_mel_filters: usize,
    pub n_coeffs: usize,
    pub energy_entropy_subframes: usize,
    pub spectral_entropy_bins: usize,
    pub rolloff_threshold: f64,
    pub flux_norm: f64,
    pub tuning_hz: f64,
}

impl Default for AudioParams {
    fn default() -> Self {
        Self {
            window_ms: 50.0,
            hop_ms: 25.0,
            pre_emphasis: 0.97,
            n_mel_filters: 40,
            n_coeffs: 13,
            energy_entropy_subframes: 10,
            spectral_entropy_bins: 10,
            rolloff_threshold: 0.90,
            flux_norm: 2.0,
            tuning_hz: 440.0,
        }
    }
}

/// Names of the eleven feature families, in block order.
pub const AUDIO_SLOTS: [(&str, usize); 11] = [
    ("mfcc", 26),
    ("energy", 2),
    ("spectral_entropy", 2),
    ("zcr", 2),
    ("energy_entropy", 2),
    ("centroid", 2),
    ("spread", 2),
    ("flux", 2),
    ("rolloff", 2),
    ("chroma_vector", 24),
    ("chroma_deviation", 2),
];

/// Total block width: 68.
pub const AUDIO_BLOCK_LEN: usize = 68;

/// The per-segment audio feature block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AudioFeatureBlock {
    /// The 68 block values in [`AUDIO_SLOTS`] order.
    pub values: Vec<f64>,
    /// Auxiliary successive-difference chroma statistic (mean, std); kept
    /// outside the block.
    pub chroma_diff: (f64, f64),
}

impl AudioFeatureBlock {
    /// Slice of the block belonging to a named slot.
    pub fn slot(&self, name: &str) -> Option<&[f64]> {
        let mut off = 0;
        for (slot, width) in AUDIO_SLOTS {
            if slot == name {
                return Some(&self.values[off..off + width]);
            }
            off += width;
        }
        None
    }

    /// Column names for CSV output, `mfcc_00_mean` through `chroma_dev_std`.
    pub fn column_names() -> Vec<String> {
        let mut names = Vec::with_capacity(AUDIO_BLOCK_LEN);
        for i in 0..13 {
            names.push(format!("mfcc_{i:02}_mean"));
            names.push(format!("mfcc_{i:02}_std"));
        }
        for base in ["energy", "spectral_entropy", "zcr", "energy_entropy", "centroid", "spread", "flux", "rolloff"] {
            names.push(format!("{base}_mean"));
            names.push(format!("{base}_std"));
        }
        for i in 0..12 {
            names.push(format!("chroma_{i:02}_mean"));
            names.push(format!("chroma_{i:02}_std"));
        }
        names.push("chroma_dev_mean".into());
        names.push("chroma_dev_std".into());
        names
    }
}

/// Log floor applied to filterbank energies before the cepstral DCT.
pub const MFCC_LOG_FLOOR: f64 = 1e-10;

/// MFCCs for every frame of a power spectrum: log filterbank energies
/// (floored at [`MFCC_LOG_FLOOR`]) decorrelated by an orthonormal DCT-II,
/// keeping the first `n_coeffs` coefficients.
pub fn mfcc(
    ps: &PowerSpectrum,
    fb: &MelFilterBank,
    n_coeffs: usize,
) -> Result<Vec<Vec<f64>>, AudioError> {
    let fb_bins = fb.weights.first().map_or(0, Vec::len);
    if fb_bins != ps.num_bins() {
        return Err(AudioError::ShapeMismatch { fb: fb_bins, ps: ps.num_bins() });
    }
    Ok(ps
        .values
        .iter()
        .map(|frame| {
            let log_energies: Vec<f64> =
                fb.apply(frame).iter().map(|&e| e.max(MFCC_LOG_FLOOR).ln()).collect();
            let mut coeffs = dct2(&log_energies);
            coeffs.truncate(n_coeffs);
            coeffs
        })
        .collect())
}

/// Per-frame energy, the sum of squares normalized by the frame length.
pub fn short_term_energy(frames: &FrameMatrix) -> Vec<f64> {
    frames
        .frames()
        .iter()
        .map(|f| f.iter().map(|x| x * x).sum::<f64>() / f.len() as f64)
        .collect()
}

/// Entropy of normalized sub-frame energies. The frame is divided into
/// `n_sub` sub-frames (remainder merged into the last); a zero-energy frame
/// yields 0 by convention.
pub fn energy_entropy(frame: &[f64], n_sub: usize) -> f64 {
    if frame.is_empty() || n_sub == 0 {
        return 0.0;
    }
    let total: f64 = frame.iter().map(|x| x * x).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let sub_len = (frame.len() / n_sub).max(1);
    let n_sub = n_sub.min(frame.len());
    let mut h = 0.0;
    for j in 0..n_sub {
        let start = j * sub_len;
        let end = if j == n_sub - 1 { frame.len() } else { start + sub_len };
        let e: f64 = frame[start..end].iter().map(|x| x * x).sum::<f64>() / total;
        if e > 0.0 {
            h -= e * e.log2();
        }
    }
    h
}

/// Zero-crossing rate: sign changes divided by `N - 1`. Zero samples count
/// as positive.
pub fn zcr(frame: &[f64]) -> f64 {
    if frame.len() < 2 {
        return 0.0;
    }
    let sign = |x: f64| x >= 0.0;
    let changes = frame.windows(2).filter(|w| sign(w[0]) != sign(w[1])).count();
    changes as f64 / (frame.len() - 1) as f64
}

/// Entropy of the spectrum partitioned into `bins` equal-width bands; the
/// remainder joins the last band. Zero spectra yield `None`.
pub fn spectral_entropy(ps_frame: &[f64], bins: usize) -> Option<f64> {
    if ps_frame.is_empty() || bins < 2 {
        return None;
    }
    let total: f64 = ps_frame.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let band_len = (ps_frame.len() / bins).max(1);
    let bins = bins.min(ps_frame.len());
    let mut h = 0.0;
    for b in 0..bins {
        let start = b * band_len;
        let end = if b == bins - 1 { ps_frame.len() } else { start + band_len };
        let nf: f64 = ps_frame[start..end].iter().sum::<f64>() / total;
        if nf > 0.0 {
            h -= nf * nf.log2();
        }
    }
    Some(h)
}

/// Spectral centroid (weighted mean frequency) and spread (weighted std
/// about the centroid) over an optional bin band. `None` when the band
/// carries no energy.
pub fn spectral_centroid_spread(
    ps_frame: &[f64],
    bin_hz: f64,
    band: Option<(usize, usize)>,
) -> Option<(f64, f64)> {
    let (b1, b2) = band.unwrap_or((0, ps_frame.len().saturating_sub(1)));
    let b2 = b2.min(ps_frame.len().saturating_sub(1));
    if b1 > b2 {
        return None;
    }
    let slice = &ps_frame[b1..=b2];
    let total: f64 = slice.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let centroid: f64 = slice
        .iter()
        .enumerate()
        .map(|(k, &s)| (b1 + k) as f64 * bin_hz * s)
        .sum::<f64>()
        / total;
    let var: f64 = slice
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let f = (b1 + k) as f64 * bin_hz;
            (f - centroid) * (f - centroid) * s
        })
        .sum::<f64>()
        / total;
    Some((centroid, var.sqrt()))
}

/// Spectral flux: the p-norm of the difference between consecutive
/// L1-normalized spectra. Returns `F - 1` values.
pub fn spectral_flux(ps: &PowerSpectrum, p: f64) -> Vec<f64> {
    let normalize = |frame: &[f64]| -> Vec<f64> {
        let total: f64 = frame.iter().sum();
        if total <= 0.0 {
            vec![0.0; frame.len()]
        } else {
            frame.iter().map(|&v| v / total).collect()
        }
    };
    ps.values
        .windows(2)
        .map(|w| {
            let a = normalize(&w[0]);
            let b = normalize(&w[1]);
            a.iter()
                .zip(&b)
                .map(|(x, y)| (x - y).abs().powf(p))
                .sum::<f64>()
                .powf(1.0 / p)
        })
        .collect()
}

/// Frequency below which `threshold` of the spectral energy sits: the
/// smallest bin whose cumulative energy reaches `threshold * total`.
/// `None` for an all-zero spectrum.
pub fn spectral_rolloff(ps_frame: &[f64], bin_hz: f64, threshold: f64) -> Option<f64> {
    let total: f64 = ps_frame.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let target = threshold * total;
    let mut cum = 0.0;
    for (k, &v) in ps_frame.iter().enumerate() {
        cum += v;
        if cum >= target {
            return Some(k as f64 * bin_hz);
        }
    }
    Some((ps_frame.len() - 1) as f64 * bin_hz)
}

/// Center frequency of MIDI pitch `p` for the given tuning (pitch 69).
pub fn pitch_freq(p: f64, tuning_hz: f64) -> f64 {
    2.0_f64.powf((p - 69.0) / 12.0) * tuning_hz
}

/// Chroma vector for one spectrum frame: every FFT bin is pooled onto its
/// nearest MIDI pitch (half-step bands around pitch centers), and pitch
/// energies fold onto the 12 pitch classes, C first.
pub fn chroma_vector(ps_frame: &[f64], bin_hz: f64, tuning_hz: f64) -> [f64; 12] {
    let mut chroma = [0.0; 12];
    for (k, &v) in ps_frame.iter().enumerate().skip(1) {
        if v <= 0.0 {
            continue;
        }
        let f = k as f64 * bin_hz;
        let pitch = (69.0 + 12.0 * (f / tuning_hz).log2()).round();
        if (0.0..=127.0).contains(&pitch) {
            // MIDI pitch 0 is a C, so p mod 12 indexes C..B directly.
            chroma[(pitch as usize) % 12] += v;
        }
    }
    chroma
}

/// Population standard deviation of the 12 chroma coefficients.
pub fn chroma_deviation(chroma: &[f64; 12]) -> f64 {
    mean_std(chroma).1
}

/// Successive-difference sum over the chroma vector (auxiliary statistic).
pub fn chroma_diff(chroma: &[f64; 12]) -> f64 {
    chroma.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Mean and population std of a frame series. Errors on an empty series.
pub fn summarize(series: &[f64]) -> Result<(f64, f64), AudioError> {
    if series.is_empty() {
        return Err(AudioError::TooShort(0));
    }
    Ok(mean_std(series))
}

fn summarize_or_zero(series: &[f64]) -> (f64, f64) {
    if series.is_empty() {
        (0.0, 0.0)
    } else {
        mean_std(series)
    }
}

/// Runs the full short-term analysis over one segment's audio and collapses
/// every per-frame series to (mean, std).
pub fn extract_audio_features(
    signal: &AudioSignal,
    params: &AudioParams,
) -> Result<AudioFeatureBlock, AudioError> {
    let sr = signal.sample_rate;
    let frame_len = ((params.window_ms / 1000.0) * sr as f64).round() as usize;
    let hop = (((params.hop_ms / 1000.0) * sr as f64).round() as usize).max(1);
    if signal.samples.len() < frame_len || frame_len < 2 {
        return Err(AudioError::TooShort(frame_len));
    }
    let nfft = next_pow2(frame_len);
    let window = hamming(frame_len)?;

    // Time-domain series on raw frames.
    let raw = FrameMatrix::cut(&signal.samples, frame_len, hop)?;
    let energies = short_term_energy(&raw);
    let entropies: Vec<f64> = raw
        .frames()
        .iter()
        .map(|f| energy_entropy(f, params.energy_entropy_subframes))
        .collect();
    let zcrs: Vec<f64> = raw.frames().iter().map(|f| zcr(f)).collect();

    // Spectral series on Hamming-windowed frames.
    let ps = power_spectrum(&raw.windowed(&window), nfft, sr)?;
    let mut spec_entropy = Vec::with_capacity(ps.num_frames());
    let mut centroids = Vec::with_capacity(ps.num_frames());
    let mut spreads = Vec::with_capacity(ps.num_frames());
    let mut rolloffs = Vec::with_capacity(ps.num_frames());
    let mut chroma_series: Vec<[f64; 12]> = Vec::with_capacity(ps.num_frames());
    for frame in &ps.values {
        spec_entropy.push(spectral_entropy(frame, params.spectral_entropy_bins).unwrap_or(0.0));
        let (c, s) = spectral_centroid_spread(frame, ps.bin_hz, None).unwrap_or((0.0, 0.0));
        centroids.push(c);
        spreads.push(s);
        rolloffs.push(spectral_rolloff(frame, ps.bin_hz, params.rolloff_threshold).unwrap_or(0.0));
        chroma_series.push(chroma_vector(frame, ps.bin_hz, params.tuning_hz));
    }
    let fluxes = spectral_flux(&ps, params.flux_norm);
    let chroma_devs: Vec<f64> = chroma_series.iter().map(chroma_deviation).collect();
    let chroma_diffs: Vec<f64> = chroma_series.iter().map(chroma_diff).collect();

    // Cepstral chain: pre-emphasis, framing, window, spectrum, mel, DCT.
    let emphasized = pre_emphasis(&signal.samples, params.pre_emphasis)?;
    let ceps_frames = FrameMatrix::cut(&emphasized, frame_len, hop)?.windowed(&window);
    let ceps_ps = power_spectrum(&ceps_frames, nfft, sr)?;
    let fb = MelFilterBank::new(params.n_mel_filters, nfft, sr, 0.0, sr as f64 / 2.0)?;
    let mfccs = mfcc(&ceps_ps, &fb, params.n_coeffs)?;

    let mut values = Vec::with_capacity(AUDIO_BLOCK_LEN);
    for i in 0..params.n_coeffs {
        let series: Vec<f64> = mfccs.iter().map(|f| f[i]).collect();
        let (m, s) = summarize(&series)?;
        values.push(m);
        values.push(s);
    }
    for series in [&energies, &spec_entropy, &zcrs, &entropies, &centroids, &spreads] {
        let (m, s) = summarize(series)?;
        values.push(m);
        values.push(s);
    }
    {
        // A single-frame segment has no flux; keep the slot as zeros.
        let (m, s) = summarize_or_zero(&fluxes);
        values.push(m);
        values.push(s);
    }
    let (m, s) = summarize(&rolloffs)?;
    values.push(m);
    values.push(s);
    for c in 0..12 {
        let series: Vec<f64> = chroma_series.iter().map(|f| f[c]).collect();
        let (m, s) = summarize(&series)?;
        values.push(m);
        values.push(s);
    }
    let (m, s) = summarize(&chroma_devs)?;
    values.push(m);
    values.push(s);

    debug_assert_eq!(values.len(), AUDIO_BLOCK_LEN);
    Ok(AudioFeatureBlock { values, chroma_diff: summarize_or_zero(&chroma_diffs) })
}
