//! RIFF/WAVE reader and writer for PCM16 and IEEE float32 payloads.
//! Parse errors carry the byte offset where the problem was found.

use super::AudioSignal;
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WavError {
    #[error("not a RIFF/WAVE file at byte {offset}")]
    NotRiff { offset: usize },
    #[error("truncated '{chunk}' chunk at byte {offset}: declared {declared} bytes, {available} available")]
    Truncated { chunk: String, offset: usize, declared: usize, available: usize },
    #[error("missing '{0}' chunk")]
    MissingChunk(&'static str),
    #[error("unsupported codec at byte {offset}: format tag {format_tag}, {bits} bits per sample")]
    UnsupportedCodec { offset: usize, format_tag: u16, bits: u16 },
    #[error("fmt chunk declares zero channels at byte {offset}")]
    ZeroChannels { offset: usize },
    #[error("fmt chunk declares zero sample rate at byte {offset}")]
    ZeroSampleRate { offset: usize },
    #[error("non-finite float sample at byte {offset}")]
    NonFiniteSample { offset: usize },
}

/// Sample encoding used by [`write_wav`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavSampleFormat {
    Pcm16,
    Float32,
}

fn u16_at(bytes: &[u8], off: usize) -> u16 {
    u16::from_le_bytes([bytes[off], bytes[off + 1]])
}

fn u32_at(bytes: &[u8], off: usize) -> u32 {
    u32::from_le_bytes([bytes[off], bytes[off + 1], bytes[off + 2], bytes[off + 3]])
}

/// Decodes a RIFF/WAVE byte stream into a mono [`AudioSignal`].
///
/// PCM16 samples map to `[-1, 1]` by division by 32768; float32 samples are
/// clamped to `[-1, 1]`. Multi-channel audio is downmixed by arithmetic mean.
pub fn read_wav(bytes: &[u8]) -> Result<AudioSignal, WavError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        let offset = if bytes.len() < 12 || &bytes[0..4] != b"RIFF" { 0 } else { 8 };
        return Err(WavError::NotRiff { offset });
    }

    let mut fmt: Option<(usize, u16, u16, u32, u16)> = None; // (offset, tag, channels, rate, bits)
    let mut data: Option<(usize, usize)> = None; // (offset, len)

    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body = pos + 8;
        if body + size > bytes.len() {
            return Err(WavError::Truncated {
                chunk: String::from_utf8_lossy(id).into_owned(),
                offset: pos,
                declared: size,
                available: bytes.len() - body,
            });
        }
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(WavError::Truncated {
                        chunk: "fmt ".into(),
                        offset: pos,
                        declared: 16,
                        available: size,
                    });
                }
                fmt = Some((
                    body,
                    u16_at(bytes, body),
                    u16_at(bytes, body + 2),
                    u32_at(bytes, body + 4),
                    u16_at(bytes, body + 14),
                ));
            }
            b"data" => data = Some((body, size)),
            _ => {}
        }
        // Chunks are word-aligned; odd sizes carry a pad byte.
        pos = body + size + (size & 1);
    }

    let (fmt_off, tag, channels, rate, bits) = fmt.ok_or(WavError::MissingChunk("fmt "))?;
    let (data_off, data_len) = data.ok_or(WavError::MissingChunk("data"))?;
    if channels == 0 {
        return Err(WavError::ZeroChannels { offset: fmt_off + 2 });
    }
    if rate == 0 {
        return Err(WavError::ZeroSampleRate { offset: fmt_off + 4 });
    }

    let payload = &bytes[data_off..data_off + data_len];
    let ch = channels as usize;
    let samples = match (tag, bits) {
        (1, 16) => {
            let per_frame = 2 * ch;
            let n_frames = payload.len() / per_frame;
            let mut out = Vec::with_capacity(n_frames);
            for f in 0..n_frames {
                let mut acc = 0.0;
                for c in 0..ch {
                    let off = f * per_frame + 2 * c;
                    let v = i16::from_le_bytes([payload[off], payload[off + 1]]);
                    acc += v as f64 / 32768.0;
                }
                out.push(acc / ch as f64);
            }
            out
        }
        (3, 32) => {
            let per_frame = 4 * ch;
            let n_frames = payload.len() / per_frame;
            let mut out = Vec::with_capacity(n_frames);
            for f in 0..n_frames {
                let mut acc = 0.0;
                for c in 0..ch {
                    let off = f * per_frame + 4 * c;
                    let v = f32::from_le_bytes([
                        payload[off],
                        payload[off + 1],
                        payload[off + 2],
                        payload[off + 3],
                    ]);
                    if !v.is_finite() {
                        return Err(WavError::NonFiniteSample { offset: data_off + off });
                    }
                    acc += (v as f64).clamp(-1.0, 1.0);
                }
                out.push(acc / ch as f64);
            }
            out
        }
        _ => {
            return Err(WavError::UnsupportedCodec { offset: fmt_off, format_tag: tag, bits })
        }
    };

    Ok(AudioSignal::new(samples, rate))
}

/// Writes a mono [`AudioSignal`] as RIFF/WAVE.
///
/// PCM16 output quantizes by `round(sample * 32768)` clamped to the i16
/// range, the exact inverse of the reader's scaling, so a mono read/write
/// round trip reproduces the PCM payload byte for byte.
pub fn write_wav(
    signal: &AudioSignal,
    format: WavSampleFormat,
    w: &mut impl Write,
) -> io::Result<()> {
    let (bits, tag): (u16, u16) = match format {
        WavSampleFormat::Pcm16 => (16, 1),
        WavSampleFormat::Float32 => (32, 3),
    };
    let bytes_per_sample = (bits / 8) as u32;
    let data_len = signal.samples.len() as u32 * bytes_per_sample;
    w.write_all(b"RIFF")?;
    w.write_all(&(36 + data_len).to_le_bytes())?;
    w.write_all(b"WAVE")?;
    w.write_all(b"fmt ")?;
    w.write_all(&16u32.to_le_bytes())?;
    w.write_all(&tag.to_le_bytes())?;
    w.write_all(&1u16.to_le_bytes())?; // mono
    w.write_all(&signal.sample_rate.to_le_bytes())?;
    w.write_all(&(signal.sample_rate * bytes_per_sample).to_le_bytes())?;
    w.write_all(&(bytes_per_sample as u16).to_le_bytes())?;
    w.write_all(&bits.to_le_bytes())?;
    w.write_all(b"data")?;
    w.write_all(&data_len.to_le_bytes())?;
    for &s in &signal.samples {
        match format {
            WavSampleFormat::Pcm16 => {
                let v = (s * 32768.0).round().clamp(i16::MIN as f64, i16::MAX as f64) as i16;
                w.write_all(&v.to_le_bytes())?;
            }
            WavSampleFormat::Float32 => {
                w.write_all(&(s as f32).to_le_bytes())?;
            }
        }
    }
    Ok(())
}
