//! sRGB colors, CIE L*a*b* / LCh(ab) under D65, and WCAG contrast.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An 8-bit sRGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Color {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

/// Cylindrical CIELAB coordinates: lightness 0–100, chroma ≥ 0, hue in
/// degrees `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lch {
    pub l: f64,
    pub c: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid color `{0}` (expected #RRGGBB)")]
pub struct ParseColorError(pub String);

// D65 reference white, Y normalized to 1.
const WHITE_X: f64 = 0.950_47;
const WHITE_Y: f64 = 1.0;
const WHITE_Z: f64 = 1.088_83;

const EPSILON: f64 = 216.0 / 24_389.0;
const KAPPA: f64 = 24_389.0 / 27.0;

impl Color {
    pub const BLACK: Color = Color::rgb(0, 0, 0);
    pub const WHITE: Color = Color::rgb(255, 255, 255);

    pub const fn rgb(r: u8, g: u8, b: u8) -> Self {
        Color { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    pub fn to_hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }

    pub fn to_lch(self) -> Lch {
        to_perceptual(self)
    }

    /// WCAG relative luminance. The weights are applied as integers so that
    /// white comes out at exactly 1.0.
    pub fn relative_luminance(self) -> f64 {
        let [r, g, b] = self.channels().map(wcag_linear);
        (2126.0 * r + 7152.0 * g + 722.0 * b) / 10_000.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Color {
    type Err = ParseColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseColorError(s.to_string());
        let hex = s.strip_prefix('#').ok_or_else(bad)?;
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
        Ok(Color::rgb(channel(0)?, channel(2)?, channel(4)?))
    }
}

fn srgb_to_linear(v: f64) -> f64 {
    if v <= 0.040_45 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

fn linear_to_srgb(v: f64) -> f64 {
    if v <= 0.003_130_8 {
        v * 12.92
    } else {
        1.055 * v.powf(1.0 / 2.4) - 0.055
    }
}

// WCAG 2.x keeps the older 0.03928 breakpoint.
fn wcag_linear(channel: u8) -> f64 {
    let v = channel as f64 / 255.0;
    if v <= 0.039_28 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

fn lab_f(t: f64) -> f64 {
    if t > EPSILON {
        t.cbrt()
    } else {
        (KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    let cubed = f * f * f;
    if cubed > EPSILON {
        cubed
    } else {
        (116.0 * f - 16.0) / KAPPA
    }
}

/// sRGB → linear → XYZ(D65) → L*a*b* → LCh.
pub fn to_perceptual(c: Color) -> Lch {
    let [r, g, b] = c.channels().map(|v| srgb_to_linear(v as f64 / 255.0));
    let x = 0.412_456_4 * r + 0.357_576_1 * g + 0.180_437_5 * b;
    let y = 0.212_672_9 * r + 0.715_152_2 * g + 0.072_175_0 * b;
    let z = 0.019_333_9 * r + 0.119_192_0 * g + 0.950_304_1 * b;

    let fx = lab_f(x / WHITE_X);
    let fy = lab_f(y / WHITE_Y);
    let fz = lab_f(z / WHITE_Z);
    let l = 116.0 * fy - 16.0;
    let a = 500.0 * (fx - fy);
    let bb = 200.0 * (fy - fz);
    Lch {
        l: l.clamp(0.0, 100.0),
        c: a.hypot(bb),
        h: normalize_hue(bb.atan2(a).to_degrees()),
    }
}

/// Inverse pipeline without clamping; channels are gamma-encoded in `[0, 1]`
/// when the color is inside the sRGB gamut.
pub fn lch_to_srgb_unclamped(lch: Lch) -> [f64; 3] {
    let (sin, cos) = lch.h.to_radians().sin_cos();
    let (a, b) = (lch.c * cos, lch.c * sin);
    let fy = (lch.l + 16.0) / 116.0;
    let fx = fy + a / 500.0;
    let fz = fy - b / 200.0;
    let x = WHITE_X * lab_f_inv(fx);
    let y = WHITE_Y * if lch.l > KAPPA * EPSILON { fy * fy * fy } else { lch.l / KAPPA };
    let z = WHITE_Z * lab_f_inv(fz);

    let r = 3.240_454_2 * x - 1.537_138_5 * y - 0.498_531_4 * z;
    let g = -0.969_266_0 * x + 1.876_010_8 * y + 0.041_556_0 * z;
    let bl = 0.055_643_4 * x - 0.204_025_9 * y + 1.057_225_2 * z;
    [r, g, bl].map(|v| if v < 0.0 { -linear_to_srgb(-v) } else { linear_to_srgb(v) })
}

/// Inverse pipeline; out-of-gamut results are clamped per channel.
pub fn from_perceptual(l: f64, c: f64, h: f64) -> Color {
    let [r, g, b] = lch_to_srgb_unclamped(Lch { l, c, h });
    let q = |v: f64| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
    Color::rgb(q(r), q(g), q(b))
}

pub fn in_gamut(lch: Lch) -> bool {
    const TOL: f64 = 1e-9;
    lch_to_srgb_unclamped(lch)
        .iter()
        .all(|v| (-TOL..=1.0 + TOL).contains(v))
}

/// Largest chroma at (`l`, `h`) that stays inside the sRGB gamut.
pub fn max_chroma(l: f64, h: f64) -> f64 {
    if !(0.0..=100.0).contains(&l) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 200.0);
    if !in_gamut(Lch { l, c: lo, h }) {
        return 0.0;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if in_gamut(Lch { l, c: mid, h }) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// WCAG 2.x contrast ratio, always ≥ 1.
pub fn contrast_ratio(a: Color, b: Color) -> f64 {
    let (la, lb) = (a.relative_luminance(), b.relative_luminance());
    let (light, dark) = if la >= lb { (la, lb) } else { (lb, la) };
    // (L1 + 0.05) / (L2 + 0.05), scaled by 20 to keep the endpoints exact.
    (20.0 * light + 1.0) / (20.0 * dark + 1.0)
}

pub fn normalize_hue(h: f64) -> f64 {
    let h = h.rem_euclid(360.0);
    if h >= 360.0 {
        0.0
    } else {
        h
    }
}

/// Shortest angular distance between two hues, in `[0, 180]`.
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex(s: &str) -> Color {
        s.parse().unwrap()
    }

    #[test]
    fn white_and_black() {
        let w = to_perceptual(Color::WHITE);
        assert!((w.l - 100.0).abs() < 1e-3, "{w:?}");
        assert!(w.c < 0.05, "{w:?}");
        assert!(to_perceptual(Color::BLACK).l.abs() < 1e-9);
    }

    #[test]
    fn pure_red() {
        // Reference CIELAB for #FF0000 under D65: L* 53.24, a* 80.09, b* 67.20.
        let red = to_perceptual(hex("#FF0000"));
        assert!((red.l - 53.24).abs() < 0.05, "{red:?}");
        assert!((red.h - 40.0).abs() < 0.1, "{red:?}");
        assert!((red.c - 104.55).abs() < 0.1, "{red:?}");
    }

    #[test]
    fn inverse_conversion() {
        assert_eq!(from_perceptual(100.0, 0.0, 0.0), Color::WHITE);
        let c = hex("#4080C0");
        let lch = to_perceptual(c);
        assert_eq!(from_perceptual(lch.l, lch.c, lch.h), c);
    }

    #[test]
    fn out_of_gamut_is_clamped() {
        assert!(!in_gamut(Lch { l: 50.0, c: 200.0, h: 40.0 }));
        let c = from_perceptual(50.0, 200.0, 40.0);
        let raw = lch_to_srgb_unclamped(Lch { l: 50.0, c: 200.0, h: 40.0 });
        let expect = raw.map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8);
        assert_eq!(c.channels(), expect);
        assert_eq!(c.r, 255);
    }

    #[test]
    fn contrast_endpoints() {
        assert_eq!(contrast_ratio(Color::BLACK, Color::WHITE), 21.0);
        assert_eq!(contrast_ratio(Color::WHITE, Color::BLACK), 21.0);
        let c = hex("#336699");
        assert_eq!(contrast_ratio(c, c), 1.0);
    }

    #[test]
    fn contrast_mid_gray() {
        // 0x77/255 linearizes to 0.18448; (1.05) / (0.18448 + 0.05) = 4.478.
        let r = contrast_ratio(hex("#777777"), Color::WHITE);
        assert!((r - 4.478).abs() < 0.005, "{r}");
        // 0xAA -> 0.40198, 0xBB -> 0.49693; 0.45198 / 0.54693 inverted = 1.210.
        let r = contrast_ratio(hex("#AAAAAA"), hex("#BBBBBB"));
        assert!((r - 1.210).abs() < 0.001, "{r}");
    }

    #[test]
    fn max_chroma_is_on_the_gamut_boundary() {
        let c = max_chroma(60.0, 140.0);
        assert!(in_gamut(Lch { l: 60.0, c, h: 140.0 }));
        assert!(!in_gamut(Lch { l: 60.0, c: c + 0.01, h: 140.0 }));
        assert!(max_chroma(0.0, 40.0) < 1e-6);
    }

    #[test]
    fn hex_round_trip_and_errors() {
        assert_eq!(hex("#0a0B0c").to_hex(), "#0A0B0C");
        assert!("0A0B0C".parse::<Color>().is_err());
        assert!("#0A0B0".parse::<Color>().is_err());
        assert!("#GG0000".parse::<Color>().is_err());
    }

    #[test]
    fn hue_distance_wraps() {
        assert_eq!(hue_distance(350.0, 10.0), 20.0);
        assert_eq!(hue_distance(0.0, 180.0), 180.0);
        assert_eq!(normalize_hue(-30.0), 330.0);
    }
}
