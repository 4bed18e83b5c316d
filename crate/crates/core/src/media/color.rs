//! Pixel-level colorspace conversions (hexcone HSV and HLS).

/// RGB (8-bit) to HSV: hue in `[0, 360)` degrees, saturation and value in
/// `[0, 1]`. `v = max(R, G, B) / 255`.
pub fn rgb_to_hsv(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let rf = r as f64 / 255.0;
    let gf = g as f64 / 255.0;
    let bf = b as f64 / 255.0;
    let max = rf.max(gf).max(bf);
    let min = rf.min(gf).min(bf);
    let delta = max - min;
    let v = max;
    let s = if max == 0.0 { 0.0 } else { delta / max };
    let h = hue_degrees(rf, gf, bf, max, delta);
    (h, s, v)
}

/// RGB (8-bit) to HLS: hue in `[0, 360)`, lightness and saturation in `[0, 1]`.
pub fn rgb_to_hls(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let rf = r as f64 / 255.0;
    let gf = g as f64 / 255.0;
    let bf = b as f64 / 255.0;
    let max = rf.max(gf).max(bf);
    let min = rf.min(gf).min(bf);
    let delta = max - min;
    let l = (max + min) / 2.0;
    let s = if delta == 0.0 {
        0.0
    } else if l <= 0.5 {
        delta / (max + min)
    } else {
        delta / (2.0 - max - min)
    };
    let h = hue_degrees(rf, gf, bf, max, delta);
    (h, l, s)
}

fn hue_degrees(r: f64, g: f64, b: f64, max: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let h = if max == r {
        60.0 * (((g - b) / delta) % 6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    if h < 0.0 {
        h + 360.0
    } else {
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_has_full_value_no_saturation() {
        let (_, s, v) = rgb_to_hsv(255, 255, 255);
        assert_eq!(v, 1.0);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn black_has_zero_value() {
        let (_, s, v) = rgb_to_hsv(0, 0, 0);
        assert_eq!(v, 0.0);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn pure_red() {
        let (h, s, v) = rgb_to_hsv(255, 0, 0);
        assert_eq!(h, 0.0);
        assert_eq!(s, 1.0);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn mid_gray_value() {
        let (_, _, v) = rgb_to_hsv(128, 128, 128);
        assert!((v - 128.0 / 255.0).abs() < 1e-12);
    }

    #[test]
    fn hue_wheel_is_consistent_between_spaces() {
        for &(r, g, b, expect_h) in &[
            (255u8, 0u8, 0u8, 0.0),
            (255, 255, 0, 60.0),
            (0, 255, 0, 120.0),
            (0, 255, 255, 180.0),
            (0, 0, 255, 240.0),
            (255, 0, 255, 300.0),
        ] {
            let (h_hsv, _, _) = rgb_to_hsv(r, g, b);
            let (h_hls, _, _) = rgb_to_hls(r, g, b);
            assert!((h_hsv - expect_h).abs() < 1e-9);
            assert!((h_hls - expect_h).abs() < 1e-9);
        }
    }

    #[test]
    fn hls_lightness_of_primaries() {
        let (_, l, s) = rgb_to_hls(255, 0, 0);
        assert!((l - 0.5).abs() < 1e-12);
        assert!((s - 1.0).abs() < 1e-12);
        let (_, l, s) = rgb_to_hls(255, 255, 255);
        assert_eq!(l, 1.0);
        assert_eq!(s, 0.0);
    }
}
