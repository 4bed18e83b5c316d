//! YUV4MPEG2 reader and writer. Supports 4:2:0 and 4:4:4 planar input;
//! pixels are converted to RGB with full-range BT.601 coefficients.

use super::{Frame, FrameSequence};
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Y4mError {
    #[error("missing YUV4MPEG2 magic")]
    MissingMagic,
    #[error("stream header has no newline")]
    UnterminatedHeader,
    #[error("invalid header token '{0}'")]
    BadHeaderToken(String),
    #[error("unknown colorspace tag '{0}'")]
    UnknownColorspace(String),
    #[error("missing W/H/F header fields")]
    MissingDimensions,
    #[error("odd dimensions {w}x{h} are invalid for 4:2:0 chroma")]
    OddDimensionsFor420 { w: u32, h: u32 },
    #[error("missing FRAME marker at frame {index}")]
    MissingFrameMarker { index: usize },
    #[error("short frame payload at frame {index}: need {need} bytes, have {have}")]
    ShortFrame { index: usize, need: usize, have: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chroma {
    C420,
    C444,
}

fn clamp_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Full-range BT.601 YUV -> RGB.
fn yuv_to_rgb(y: u8, u: u8, v: u8) -> (u8, u8, u8) {
    let y = y as f64;
    let cb = u as f64 - 128.0;
    let cr = v as f64 - 128.0;
    (
        clamp_u8(y + 1.402 * cr),
        clamp_u8(y - 0.344136 * cb - 0.714136 * cr),
        clamp_u8(y + 1.772 * cb),
    )
}

/// Full-range BT.601 RGB -> YUV (the inverse pairing of [`yuv_to_rgb`]).
fn rgb_to_yuv(r: u8, g: u8, b: u8) -> (u8, u8, u8) {
    let (r, g, b) = (r as f64, g as f64, b as f64);
    (
        clamp_u8(0.299 * r + 0.587 * g + 0.114 * b),
        clamp_u8(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b),
        clamp_u8(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b),
    )
}

/// Decodes a YUV4MPEG2 byte stream. An empty stream (header, no frames) is
/// valid and yields an empty sequence.
pub fn read_y4m(bytes: &[u8]) -> Result<FrameSequence, Y4mError> {
    const MAGIC: &[u8] = b"YUV4MPEG2";
    if bytes.len() < MAGIC.len() || &bytes[..MAGIC.len()] != MAGIC {
        return Err(Y4mError::MissingMagic);
    }
    let header_end = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or(Y4mError::UnterminatedHeader)?;
    let header = std::str::from_utf8(&bytes[MAGIC.len()..header_end])
        .map_err(|_| Y4mError::BadHeaderToken("<non-utf8>".into()))?;

    let mut width: Option<u32> = None;
    let mut height: Option<u32> = None;
    let mut fps: Option<(u32, u32)> = None;
    let mut chroma = Chroma::C420;
    for token in header.split_ascii_whitespace() {
        let (tag, rest) = token.split_at(1);
        match tag {
            "W" => width = Some(rest.parse().map_err(|_| Y4mError::BadHeaderToken(token.into()))?),
            "H" => height = Some(rest.parse().map_err(|_| Y4mError::BadHeaderToken(token.into()))?),
            "F" => {
                let (n, d) = rest
                    .split_once(':')
                    .ok_or_else(|| Y4mError::BadHeaderToken(token.into()))?;
                let n: u32 = n.parse().map_err(|_| Y4mError::BadHeaderToken(token.into()))?;
                let d: u32 = d.parse().map_err(|_| Y4mError::BadHeaderToken(token.into()))?;
                if n == 0 || d == 0 {
                    return Err(Y4mError::BadHeaderToken(token.into()));
                }
                fps = Some((n, d));
            }
            "C" => {
                chroma = match rest {
                    "420" | "420jpeg" | "420paldv" | "420mpeg2" => Chroma::C420,
                    "444" => Chroma::C444,
                    other => return Err(Y4mError::UnknownColorspace(other.into())),
                }
            }
            // Interlacing, aspect and extension tags don't affect decoding.
            "I" | "A" | "X" => {}
            _ => return Err(Y4mError::BadHeaderToken(token.into())),
        }
    }
    let (w, h) = match (width, height) {
        (Some(w), Some(h)) if w > 0 && h > 0 => (w, h),
        _ => return Err(Y4mError::MissingDimensions),
    };
    let (fps_num, fps_den) = fps.ok_or(Y4mError::MissingDimensions)?;
    if chroma == Chroma::C420 && (w % 2 != 0 || h % 2 != 0) {
        return Err(Y4mError::OddDimensionsFor420 { w, h });
    }

    let luma_len = (w * h) as usize;
    let chroma_len = match chroma {
        Chroma::C420 => luma_len / 4,
        Chroma::C444 => luma_len,
    };
    let frame_payload = luma_len + 2 * chroma_len;

    let mut frames = Vec::new();
    let mut pos = header_end + 1;
    let mut index = 0;
    while pos < bytes.len() {
        const MARKER: &[u8] = b"FRAME";
        if pos + MARKER.len() > bytes.len() || &bytes[pos..pos + MARKER.len()] != MARKER {
            return Err(Y4mError::MissingFrameMarker { index });
        }
        let line_end = bytes[pos..]
            .iter()
            .position(|&b| b == b'\n')
            .ok_or(Y4mError::MissingFrameMarker { index })?;
        pos += line_end + 1;
        if pos + frame_payload > bytes.len() {
            return Err(Y4mError::ShortFrame {
                index,
                need: frame_payload,
                have: bytes.len() - pos,
            });
        }
        let y_plane = &bytes[pos..pos + luma_len];
        let u_plane = &bytes[pos + luma_len..pos + luma_len + chroma_len];
        let v_plane = &bytes[pos + luma_len + chroma_len..pos + frame_payload];
        let mut rgb = Vec::with_capacity(luma_len * 3);
        for yy in 0..h {
            for xx in 0..w {
                let yv = y_plane[(yy * w + xx) as usize];
                let (uv, vv) = match chroma {
                    Chroma::C444 => {
                        let i = (yy * w + xx) as usize;
                        (u_plane[i], v_plane[i])
                    }
                    Chroma::C420 => {
                        let i = ((yy / 2) * (w / 2) + xx / 2) as usize;
                        (u_plane[i], v_plane[i])
                    }
                };
                let (r, g, b) = yuv_to_rgb(yv, uv, vv);
                rgb.extend_from_slice(&[r, g, b]);
            }
        }
        frames.push(Frame::from_rgb(w, h, rgb));
        pos += frame_payload;
        index += 1;
    }

    Ok(FrameSequence::new(frames, fps_num, fps_den))
}

/// Writes a frame sequence as YUV4MPEG2 with 4:4:4 chroma (no subsampling
/// loss beyond the 8-bit YUV quantization).
pub fn write_y4m(seq: &FrameSequence, w: &mut impl Write) -> io::Result<()> {
    let (width, height) = seq
        .frames
        .first()
        .map(|f| (f.width(), f.height()))
        .unwrap_or((0, 0));
    writeln!(w, "YUV4MPEG2 W{} H{} F{}:{} Ip A1:1 C444", width, height, seq.fps_num, seq.fps_den)?;
    let plane_len = (width * height) as usize;
    let mut y_plane = vec![0u8; plane_len];
    let mut u_plane = vec![0u8; plane_len];
    let mut v_plane = vec![0u8; plane_len];
    for frame in &seq.frames {
        for (i, (r, g, b)) in frame.pixels().enumerate() {
            let (y, u, v) = rgb_to_yuv(r, g, b);
            y_plane[i] = y;
            u_plane[i] = u;
            v_plane[i] = v;
        }
        writeln!(w, "FRAME")?;
        w.write_all(&y_plane)?;
        w.write_all(&u_plane)?;
        w.write_all(&v_plane)?;
    }
    Ok(())
}
