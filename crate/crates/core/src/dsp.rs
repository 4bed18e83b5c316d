//! Shared numeric kernels: short-term framing, windows, FFT power spectra,
//! the mel filterbank, DCT, the Kaiser window and same-length convolution.
//!
//! Everything here is a pure function of its inputs; callers are free to
//! fan work out across frames or segments.

use rustfft::{num_complex::Complex, FftPlanner};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("input signal is empty")]
    EmptyInput,
    #[error("window length must be at least 2 (got {0})")]
    WindowTooShort(usize),
    #[error("hop must be positive")]
    ZeroHop,
    #[error("nfft {0} is not a power of two")]
    NfftNotPowerOfTwo(usize),
    #[error("nfft {nfft} is smaller than the frame length {frame_len}")]
    NfftTooSmall { nfft: usize, frame_len: usize },
    #[error("negative frequency {0} Hz")]
    NegativeFrequency(f64),
    #[error("fmax {fmax} Hz exceeds the Nyquist frequency {nyquist} Hz")]
    FmaxAboveNyquist { fmax: f64, nyquist: f64 },
    #[error("mel filterbank needs at least one filter")]
    NoFilters,
    #[error("convolution kernel length must be odd (got {0})")]
    EvenKernel(usize),
}

/// Matrix of short-term frames cut from a signal.
#[derive(Debug, Clone)]
pub struct FrameMatrix {
    frames: Vec<Vec<f64>>,
    frame_len: usize,
    hop: usize,
}

impl FrameMatrix {
    /// Cuts `signal` into frames of `frame_len` samples advancing by `hop`.
    /// Yields `floor((len - frame_len) / hop) + 1` frames; a signal shorter
    /// than one frame yields none.
    pub fn cut(signal: &[f64], frame_len: usize, hop: usize) -> Result<Self, DspError> {
        if frame_len == 0 {
            return Err(DspError::WindowTooShort(0));
        }
        if hop == 0 {
            return Err(DspError::ZeroHop);
        }
        let mut frames = Vec::new();
        if signal.len() >= frame_len {
            let count = (signal.len() - frame_len) / hop + 1;
            frames.reserve(count);
            for i in 0..count {
                let start = i * hop;
                frames.push(signal[start..start + frame_len].to_vec());
            }
        }
        Ok(Self { frames, frame_len, hop })
    }

    /// Returns a copy with `window` multiplied into every frame.
    pub fn windowed(&self, window: &[f64]) -> Self {
        assert_eq!(window.len(), self.frame_len, "window/frame length mismatch");
        let frames = self
            .frames
            .iter()
            .map(|f| f.iter().zip(window).map(|(x, w)| x * w).collect())
            .collect();
        Self { frames, frame_len: self.frame_len, hop: self.hop }
    }

    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn frame_len(&self) -> usize {
        self.frame_len
    }

    pub fn hop(&self) -> usize {
        self.hop
    }
}

/// One-sided power spectra for a sequence of frames.
#[derive(Debug, Clone)]
pub struct PowerSpectrum {
    /// Per frame, `nfft/2 + 1` non-negative values `|FFT bin|^2 / nfft`.
    pub values: Vec<Vec<f64>>,
    /// Width of one FFT bin in Hz: `sample_rate / nfft`.
    pub bin_hz: f64,
}

impl PowerSpectrum {
    pub fn num_frames(&self) -> usize {
        self.values.len()
    }

    pub fn num_bins(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    /// Frequency of bin `k` in Hz.
    pub fn bin_freq(&self, k: usize) -> f64 {
        k as f64 * self.bin_hz
    }
}

/// First-order pre-emphasis: `y(0) = x(0)`, `y(t) = x(t) - alpha * x(t-1)`.
pub fn pre_emphasis(x: &[f64], alpha: f64) -> Result<Vec<f64>, DspError> {
    if x.is_empty() {
        return Err(DspError::EmptyInput);
    }
    let mut y = Vec::with_capacity(x.len());
    y.push(x[0]);
    for t in 1..x.len() {
        y.push(x[t] - alpha * x[t - 1]);
    }
    Ok(y)
}

/// Hamming window: `w[n] = 0.54 - 0.46 cos(2 pi n / (N - 1))`.
pub fn hamming(n: usize) -> Result<Vec<f64>, DspError> {
    if n < 2 {
        return Err(DspError::WindowTooShort(n));
    }
    let denom = (n - 1) as f64;
    Ok((0..n)
        .map(|i| 0.54 - 0.46 * (2.0 * std::f64::consts::PI * i as f64 / denom).cos())
        .collect())
}

/// Smallest power of two that is >= `n` (and at least 1).
pub fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

/// Complex forward FFT of a real frame zero-padded to `nfft` samples.
pub fn fft_real(frame: &[f64], nfft: usize) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = frame.iter().map(|&x| Complex::new(x, 0.0)).collect();
    buf.resize(nfft, Complex::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(nfft).process(&mut buf);
    buf
}

/// One-sided power spectrum of every frame: `|FFT(x_i)|^2 / nfft` over bins
/// `0..=nfft/2`. Frames are zero-padded to `nfft`, which must be a power of
/// two no smaller than the frame length.
pub fn power_spectrum(
    frames: &FrameMatrix,
    nfft: usize,
    sample_rate: u32,
) -> Result<PowerSpectrum, DspError> {
    if !nfft.is_power_of_two() {
        return Err(DspError::NfftNotPowerOfTwo(nfft));
    }
    if nfft < frames.frame_len() {
        return Err(DspError::NfftTooSmall { nfft, frame_len: frames.frame_len() });
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(nfft);
    let n_bins = nfft / 2 + 1;
    let scale = 1.0 / nfft as f64;
    let mut values = Vec::with_capacity(frames.len());
    let mut buf = vec![Complex::new(0.0, 0.0); nfft];
    for frame in frames.frames() {
        for (slot, &x) in buf.iter_mut().zip(frame.iter()) {
            *slot = Complex::new(x, 0.0);
        }
        for slot in buf.iter_mut().skip(frame.len()) {
            *slot = Complex::new(0.0, 0.0);
        }
        fft.process(&mut buf);
        values.push(buf[..n_bins].iter().map(|c| c.norm_sqr() * scale).collect());
    }
    Ok(PowerSpectrum { values, bin_hz: sample_rate as f64 / nfft as f64 })
}

/// Hz to mel: `m = 2595 log10(1 + f / 700)`.
pub fn hz_to_mel(f: f64) -> Result<f64, DspError> {
    if f < 0.0 {
        return Err(DspError::NegativeFrequency(f));
    }
    Ok(2595.0 * (1.0 + f / 700.0).log10())
}

/// Mel to Hz, the exact inverse of [`hz_to_mel`].
pub fn mel_to_hz(m: f64) -> Result<f64, DspError> {
    if m < 0.0 {
        return Err(DspError::NegativeFrequency(m));
    }
    Ok(700.0 * (10.0_f64.powf(m / 2595.0) - 1.0))
}

/// Bank of triangular mel-spaced filters over one-sided FFT bins.
#[derive(Debug, Clone)]
pub struct MelFilterBank {
    pub n_filters: usize,
    /// `n_filters x (nfft/2 + 1)` triangular kernels, each peaking at 1.
    pub weights: Vec<Vec<f64>>,
    /// Center frequency of each filter in Hz.
    pub center_freqs: Vec<f64>,
}

impl MelFilterBank {
    /// Builds `n_filters` triangles with centers equally spaced on the mel
    /// scale between `fmin` and `fmax`. Each triangle rises from the
    /// previous center bin, peaks at 1 on its own center bin and falls to
    /// zero on the next center bin.
    pub fn new(
        n_filters: usize,
        nfft: usize,
        sample_rate: u32,
        fmin: f64,
        fmax: f64,
    ) -> Result<Self, DspError> {
        if n_filters == 0 {
            return Err(DspError::NoFilters);
        }
        let nyquist = sample_rate as f64 / 2.0;
        if fmax > nyquist {
            return Err(DspError::FmaxAboveNyquist { fmax, nyquist });
        }
        let mel_lo = hz_to_mel(fmin)?;
        let mel_hi = hz_to_mel(fmax)?;
        let n_bins = nfft / 2 + 1;
        // n_filters + 2 edge points, equally spaced in mel.
        let step = (mel_hi - mel_lo) / (n_filters + 1) as f64;
        let hz_points: Vec<f64> = (0..n_filters + 2)
            .map(|i| mel_to_hz(mel_lo + step * i as f64).expect("non-negative mel"))
            .collect();
        let bin_of = |hz: f64| -> usize {
            (((nfft + 1) as f64 * hz / sample_rate as f64).floor() as usize).min(n_bins - 1)
        };
        let bins: Vec<usize> = hz_points.iter().map(|&h| bin_of(h)).collect();
        let mut weights = vec![vec![0.0; n_bins]; n_filters];
        for m in 1..=n_filters {
            let (lo, center, hi) = (bins[m - 1], bins[m], bins[m + 1]);
            let row = &mut weights[m - 1];
            for k in lo..center {
                row[k] = (k - lo) as f64 / (center - lo) as f64;
            }
            for k in center..=hi {
                row[k] = if hi == center {
                    1.0
                } else {
                    (hi - k) as f64 / (hi - center) as f64
                };
            }
            row[center] = 1.0;
        }
        let center_freqs = hz_points[1..=n_filters].to_vec();
        Ok(Self { n_filters, weights, center_freqs })
    }

    /// Filterbank energies for one power-spectrum frame.
    pub fn apply(&self, ps_frame: &[f64]) -> Vec<f64> {
        self.weights
            .iter()
            .map(|row| row.iter().zip(ps_frame).map(|(w, p)| w * p).sum())
            .collect()
    }
}

/// Orthonormal DCT-II of `v`.
pub fn dct2(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    assert!(n > 0, "dct2 of empty vector");
    let nf = n as f64;
    let scale0 = (1.0 / nf).sqrt();
    let scale = (2.0 / nf).sqrt();
    (0..n)
        .map(|k| {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    x * (std::f64::consts::PI * k as f64 * (2.0 * i as f64 + 1.0) / (2.0 * nf))
                        .cos()
                })
                .sum();
            s * if k == 0 { scale0 } else { scale }
        })
        .collect()
}

/// Inverse of [`dct2`] (orthonormal DCT-III).
pub fn idct2(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    assert!(n > 0, "idct2 of empty vector");
    let nf = n as f64;
    let scale0 = (1.0 / nf).sqrt();
    let scale = (2.0 / nf).sqrt();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let c = (std::f64::consts::PI * k as f64 * (2.0 * i as f64 + 1.0)
                        / (2.0 * nf))
                        .cos();
                    v[k] * c * if k == 0 { scale0 } else { scale }
                })
                .sum()
        })
        .collect()
}

/// Zeroth-order modified Bessel function of the first kind, by power
/// series, summed until the relative term drops below 1e-12.
pub fn bessel_i0(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let half_x = x / 2.0;
    let mut k = 1.0;
    loop {
        term *= (half_x / k) * (half_x / k);
        sum += term;
        if term < sum * 1e-12 {
            return sum;
        }
        k += 1.0;
    }
}

/// Kaiser window of length `l1` with shape `beta1`. `beta1 = 0` gives a
/// rectangular window; larger values concentrate the lobe.
pub fn kaiser(l1: usize, beta1: f64) -> Vec<f64> {
    assert!(l1 >= 1, "kaiser window length must be at least 1");
    if l1 == 1 {
        return vec![1.0];
    }
    let denom = bessel_i0(beta1);
    let m = (l1 - 1) as f64;
    (0..l1)
        .map(|n| {
            let r = 2.0 * n as f64 / m - 1.0;
            bessel_i0(beta1 * (1.0 - r * r).max(0.0).sqrt()) / denom
        })
        .collect()
}

/// Same-length 1-D convolution with zero-padded borders. The kernel length
/// must be odd so the output aligns with the input.
pub fn convolve_same(signal: &[f64], kernel: &[f64]) -> Result<Vec<f64>, DspError> {
    if kernel.len() % 2 == 0 {
        return Err(DspError::EvenKernel(kernel.len()));
    }
    let half = kernel.len() / 2;
    let n = signal.len();
    let mut out = vec![0.0; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, &k) in kernel.iter().enumerate() {
            let idx = i as isize + half as isize - j as isize;
            if idx >= 0 && (idx as usize) < n {
                acc += k * signal[idx as usize];
            }
        }
        *slot = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pre_emphasis_direct_formula() {
        let y = pre_emphasis(&[1.0, 1.0, 1.0], 0.95).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-15);
        assert!((y[1] - 0.05).abs() < 1e-15);
        assert!((y[2] - 0.05).abs() < 1e-15);
    }

    #[test]
    fn pre_emphasis_alpha_zero_is_identity() {
        let x = [0.3, -0.7, 0.2];
        assert_eq!(pre_emphasis(&x, 0.0).unwrap(), x.to_vec());
    }

    #[test]
    fn pre_emphasis_zeros_stay_zero() {
        assert_eq!(pre_emphasis(&[0.0; 8], 0.97).unwrap(), vec![0.0; 8]);
    }

    #[test]
    fn pre_emphasis_rejects_empty() {
        assert!(matches!(pre_emphasis(&[], 0.97), Err(DspError::EmptyInput)));
    }

    #[test]
    fn hamming_endpoints_and_center() {
        let w = hamming(11).unwrap();
        assert!((w[0] - 0.08).abs() < 1e-12);
        assert!((w[10] - 0.08).abs() < 1e-12);
        assert!((w[5] - 1.0).abs() < 1e-12); // cos(pi) = -1 at the center
    }

    #[test]
    fn hamming_symmetry() {
        let w = hamming(64).unwrap();
        for n in 0..64 {
            assert!((w[n] - w[63 - n]).abs() < 1e-12);
        }
    }

    #[test]
    fn hamming_rejects_short() {
        assert!(matches!(hamming(1), Err(DspError::WindowTooShort(1))));
    }

    #[test]
    fn framing_count_formula() {
        let signal = vec![0.0; 100];
        let fm = FrameMatrix::cut(&signal, 30, 10).unwrap();
        assert_eq!(fm.len(), (100 - 30) / 10 + 1);
        let fm = FrameMatrix::cut(&signal[..20], 30, 10).unwrap();
        assert!(fm.is_empty());
    }

    /// Brute-force DFT used as the independent oracle for FFT checks.
    fn dft(x: &[f64]) -> Vec<Complex<f64>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let mut acc = Complex::new(0.0, 0.0);
                for (t, &v) in x.iter().enumerate() {
                    let ang = -2.0 * std::f64::consts::PI * k as f64 * t as f64 / n as f64;
                    acc += Complex::new(v * ang.cos(), v * ang.sin());
                }
                acc
            })
            .collect()
    }

    #[test]
    fn fft_matches_brute_force_dft() {
        let mut state = 0.37_f64;
        let x: Vec<f64> = (0..64)
            .map(|_| {
                state = (state * 997.0 + 0.1234).fract();
                state * 2.0 - 1.0
            })
            .collect();
        let fast = fft_real(&x, 64);
        let slow = dft(&x);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn power_spectrum_zero_frame_is_zero() {
        let fm = FrameMatrix::cut(&vec![0.0; 64], 64, 64).unwrap();
        let ps = power_spectrum(&fm, 64, 8000).unwrap();
        assert!(ps.values[0].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn power_spectrum_pure_cosine_bin_value() {
        // cos at bin 5 of a 64-point frame: interior one-sided bin holds N/4.
        let n = 64;
        let x: Vec<f64> = (0..n)
            .map(|t| (2.0 * std::f64::consts::PI * 5.0 * t as f64 / n as f64).cos())
            .collect();
        let fm = FrameMatrix::cut(&x, n, n).unwrap();
        let ps = power_spectrum(&fm, n, 8000).unwrap();
        assert!((ps.values[0][5] - n as f64 / 4.0).abs() < 1e-9);
        // Oracle cross-check with the brute-force DFT.
        let slow = dft(&x);
        assert!((ps.values[0][5] - slow[5].norm_sqr() / n as f64).abs() < 1e-9);
        for (k, &v) in ps.values[0].iter().enumerate() {
            if k != 5 {
                assert!(v < 1e-9, "leak at bin {k}: {v}");
            }
        }
    }

    #[test]
    fn power_spectrum_parseval() {
        let mut state = 0.71_f64;
        let x: Vec<f64> = (0..128)
            .map(|_| {
                state = (state * 997.0 + 0.1234).fract();
                state * 2.0 - 1.0
            })
            .collect();
        let fm = FrameMatrix::cut(&x, 128, 128).unwrap();
        let ps = power_spectrum(&fm, 128, 8000).unwrap();
        let frame = &ps.values[0];
        let mut spectral = frame[0] + frame[frame.len() - 1];
        for &v in &frame[1..frame.len() - 1] {
            spectral += 2.0 * v;
        }
        let time: f64 = x.iter().map(|v| v * v).sum();
        assert!(((spectral - time) / time).abs() < 1e-6);
    }

    #[test]
    fn power_spectrum_rejects_bad_nfft() {
        let fm = FrameMatrix::cut(&vec![0.0; 100], 100, 100).unwrap();
        assert!(matches!(
            power_spectrum(&fm, 100, 8000),
            Err(DspError::NfftNotPowerOfTwo(100))
        ));
        assert!(matches!(
            power_spectrum(&fm, 64, 8000),
            Err(DspError::NfftTooSmall { .. })
        ));
    }

    #[test]
    fn mel_known_values() {
        assert_eq!(hz_to_mel(0.0).unwrap(), 0.0);
        // Independent high-precision evaluations of the formula.
        let at_700 = 2595.0 * 2.0_f64.log10();
        assert!((hz_to_mel(700.0).unwrap() - at_700).abs() < 1e-9);
        let at_1000 = 2595.0 * (1.0_f64 + 1000.0 / 700.0).log10();
        assert!((hz_to_mel(1000.0).unwrap() - at_1000).abs() < 1e-9);
        assert!((at_1000 - 999.98).abs() < 0.05);
    }

    #[test]
    fn mel_rejects_negative() {
        assert!(hz_to_mel(-1.0).is_err());
        assert!(mel_to_hz(-0.5).is_err());
    }

    #[test]
    fn filterbank_peaks_and_zeros() {
        let fb = MelFilterBank::new(40, 2048, 16000, 0.0, 8000.0).unwrap();
        for row in &fb.weights {
            let max = row.iter().cloned().fold(f64::MIN, f64::max);
            assert!((max - 1.0).abs() < 1e-12);
            assert_eq!(row.iter().filter(|&&w| (w - 1.0).abs() < 1e-12).count(), 1);
            assert!(row.iter().all(|&w| w >= 0.0));
        }
    }

    #[test]
    fn filterbank_centers_equally_spaced_in_mel() {
        let fb = MelFilterBank::new(40, 2048, 16000, 0.0, 8000.0).unwrap();
        let mels: Vec<f64> = fb.center_freqs.iter().map(|&f| hz_to_mel(f).unwrap()).collect();
        let step = mels[1] - mels[0];
        for w in mels.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-9);
        }
    }

    #[test]
    fn filterbank_rejects_fmax_above_nyquist() {
        assert!(matches!(
            MelFilterBank::new(40, 512, 8000, 0.0, 4001.0),
            Err(DspError::FmaxAboveNyquist { .. })
        ));
    }

    #[test]
    fn dct2_constant_is_dc_only() {
        let out = dct2(&[3.0; 16]);
        assert!((out[0] - 3.0 * 16.0_f64.sqrt()).abs() < 1e-12);
        for &v in &out[1..] {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn dct2_round_trip() {
        let v = [0.4, -1.2, 3.3, 0.0, 2.2, -0.7];
        let back = idct2(&dct2(&v));
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn dct2_basis_vector_matches_cosine_sum_oracle() {
        // e_0 through the straight-line definition, written out by hand.
        let n = 8;
        let mut e0 = vec![0.0; n];
        e0[0] = 1.0;
        let out = dct2(&e0);
        for (k, &got) in out.iter().enumerate() {
            let scale = if k == 0 { (1.0 / n as f64).sqrt() } else { (2.0 / n as f64).sqrt() };
            let expect =
                scale * (std::f64::consts::PI * k as f64 * 1.0 / (2.0 * n as f64)).cos();
            assert!((got - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn kaiser_beta_zero_is_rectangular() {
        assert_eq!(kaiser(7, 0.0), vec![1.0; 7]);
    }

    #[test]
    fn kaiser_center_is_one() {
        let w = kaiser(21, 5.0);
        assert!((w[10] - 1.0).abs() < 1e-12);
        assert!(w.iter().all(|&v| v <= 1.0 + 1e-12));
    }

    #[test]
    fn kaiser_endpoints_match_bessel_series_oracle() {
        // Independent I0(5) evaluation with an explicit factorial series.
        let mut i0 = 0.0;
        for k in 0..60u32 {
            let mut fact = 1.0_f64;
            for j in 1..=k {
                fact *= j as f64;
            }
            i0 += ((2.5_f64).powi(k as i32) / fact).powi(2);
        }
        let w = kaiser(11, 5.0);
        assert!((w[0] - 1.0 / i0).abs() < 1e-10);
        assert!((w[10] - 1.0 / i0).abs() < 1e-10);
    }

    #[test]
    fn convolve_identity_kernel() {
        let x = [1.0, 2.0, 3.0];
        assert_eq!(convolve_same(&x, &[1.0]).unwrap(), x.to_vec());
    }

    #[test]
    fn convolve_impulse_centers_kernel() {
        let mut x = vec![0.0; 9];
        x[4] = 1.0;
        let k = [0.25, 0.5, 1.0, 0.5, 0.25];
        let y = convolve_same(&x, &k).unwrap();
        for (d, &kv) in k.iter().enumerate() {
            assert!((y[4 + d - 2] - kv).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_matches_double_loop_oracle() {
        let mut state = 0.11_f64;
        let next = |s: &mut f64| {
            *s = (*s * 997.0 + 0.1234).fract();
            *s * 2.0 - 1.0
        };
        let x: Vec<f64> = (0..16).map(|_| next(&mut state)).collect();
        let k: Vec<f64> = (0..5).map(|_| next(&mut state)).collect();
        // Shift-and-add oracle.
        let half = k.len() / 2;
        let mut expect = vec![0.0; x.len()];
        for (m, &xv) in x.iter().enumerate() {
            for (j, &kv) in k.iter().enumerate() {
                let idx = m as isize + j as isize - half as isize;
                if idx >= 0 && (idx as usize) < x.len() {
                    expect[idx as usize] += xv * kv;
                }
            }
        }
        let got = convolve_same(&x, &k).unwrap();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_rejects_even_kernel() {
        assert!(matches!(
            convolve_same(&[1.0, 2.0], &[0.5, 0.5]),
            Err(DspError::EvenKernel(2))
        ));
    }
}
