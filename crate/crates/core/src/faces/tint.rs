//! Author colors and modification-age tints.

use super::color::{from_perceptual, max_chroma, to_perceptual};
use super::{Color, FaceError};

/// Hues at `360 / n` spacing starting from 0°.
pub fn hue_wheel(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 * 360.0 / n as f64).collect()
}

/// `n` colors of equal lightness and chroma, evenly spaced in hue.
pub fn distinct_hues(n: usize, lightness: f64, chroma: f64) -> Result<Vec<Color>, FaceError> {
    if n == 0 {
        return Err(FaceError::InvalidThreshold("distinct_hues needs at least one color"));
    }
    Ok(hue_wheel(n)
        .into_iter()
        .map(|h| from_perceptual(lightness, chroma, h))
        .collect())
}

/// Tints `base` by modification age: `age = 1` (recent) keeps the base
/// lightness, `age = 0` (old) sits just off the background, 10% of the
/// way back toward the base. Hue is kept; chroma is kept where the gamut
/// allows at the interpolated lightness.
pub fn age_tint(base: Color, bg: Color, age: f64) -> Result<Color, FaceError> {
    if !(0.0..=1.0).contains(&age) {
        return Err(FaceError::InvalidThreshold("age must lie in [0, 1]"));
    }
    let b = to_perceptual(base);
    let l = age_lightness(b.l, to_perceptual(bg).l, age);
    let c = b.c.min(max_chroma(l, b.h));
    Ok(from_perceptual(l, c, b.h))
}

pub(crate) fn age_lightness(base_l: f64, bg_l: f64, age: f64) -> f64 {
    let old = bg_l + 0.1 * (base_l - bg_l);
    old + age * (base_l - old)
}
