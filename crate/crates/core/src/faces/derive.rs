//! Face derivation.
//!
//! Each face is placed at a target in LCh, quantized to 8-bit sRGB, and then
//! checked by measurement: quantization moves hue and lightness, so a small
//! neighborhood of the rounded color is searched for the candidate that
//! satisfies its clause with some headroom.

use super::color::{contrast_ratio, from_perceptual, hue_distance, max_chroma, normalize_hue, to_perceptual};
use super::{Color, FaceError, FaceName, FaceOptions, FaceSet, FaceSpec, Lch, Thresholds};
use crate::exec::Strategy;

// Headroom kept inside every threshold so that a second, independent
// conversion does not flip a borderline clause.
const L_MARGIN: f64 = 0.25;
const H_MARGIN: f64 = 0.75;
const C_MARGIN: f64 = 1.0;

/// Searches the rounded target and its sRGB neighbors within `radius` for
/// the accepted candidate of lowest cost.
fn snap(
    target: Lch,
    radius: i16,
    accept: impl Fn(Color, Lch) -> bool,
    cost: impl Fn(Lch) -> f64,
) -> Option<Color> {
    let center = from_perceptual(target.l, target.c, target.h);
    let mut best: Option<(f64, Color)> = None;
    for dr in -radius..=radius {
        for dg in -radius..=radius {
            for db in -radius..=radius {
                let shift = |v: u8, d: i16| (v as i16 + d).clamp(0, 255) as u8;
                let cand = Color::rgb(shift(center.r, dr), shift(center.g, dg), shift(center.b, db));
                let m = to_perceptual(cand);
                if !accept(cand, m) {
                    continue;
                }
                let c = cost(m);
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, cand));
                }
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Hues ordered by distance from `preferred`, in `step` degree increments.
fn hue_sweep(preferred: f64, step: f64) -> impl Iterator<Item = f64> {
    let n = (180.0 / step).ceil() as i64;
    (0..=n).flat_map(move |k| {
        let d = k as f64 * step;
        let a = normalize_hue(preferred + d);
        let b = normalize_hue(preferred - d);
        if k == 0 || k == n && (a - b).abs() < 1e-9 {
            vec![a]
        } else {
            vec![a, b]
        }
    })
}

struct Base {
    fg: Lch,
    bg: Lch,
    fg_chromatic: bool,
    bg_chromatic: bool,
}

fn salient(base: &Base, t: &Thresholds, preferred: f64) -> Option<Color> {
    let fg = base.fg;
    let accept = |_: Color, m: Lch| {
        (m.l - fg.l).abs() <= t.salient_max_dl - L_MARGIN
            && if base.fg_chromatic {
                hue_distance(m.h, fg.h) >= t.salient_min_dh + H_MARGIN
            } else {
                m.c >= t.salient_min_chroma + C_MARGIN
            }
    };
    let span = (t.salient_max_dl - L_MARGIN).max(0.0);
    let offsets = [0.0, 0.3, -0.3, 0.6, -0.6, 0.9, -0.9].map(|f| f * span);

    // First look for a hue with comfortable chroma; then accept anything
    // colorful enough for the hue to read.
    for min_chroma in [t.salient_min_chroma + 3.0, 12.0] {
        for dl in offsets {
            let l = (fg.l + dl).clamp(0.0, 100.0);
            for h in hue_sweep(preferred, 2.0) {
                if base.fg_chromatic && hue_distance(h, fg.h) < t.salient_min_dh + 3.0 {
                    continue;
                }
                let c = (max_chroma(l, h) * 0.95).min(60.0);
                if c < min_chroma {
                    continue;
                }
                let found = snap(Lch { l, c, h }, 1, accept, |m| (m.l - fg.l).abs());
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

fn faded(base: &Base, t: &Thresholds) -> Option<Color> {
    let (fg, bg) = (base.fg, base.bg);
    let target_dl = t.faded_factor * (fg.l - bg.l).abs();
    let l = bg.l + t.faded_factor * (fg.l - bg.l);
    let accept = |_: Color, m: Lch| {
        ((m.l - bg.l).abs() - target_dl).abs() <= t.faded_dl_tolerance - L_MARGIN
            && (!base.fg_chromatic || hue_distance(m.h, fg.h) <= t.faded_max_dh - H_MARGIN)
    };
    let cost = |m: Lch| (m.l - l).abs() + 0.1 * hue_distance(m.h, fg.h);
    let limit = max_chroma(l, fg.h);
    let mut chroma = fg.c.min(limit * 0.98);
    // Low chroma makes the hue fragile under rounding; raise it if needed.
    for _ in 0..6 {
        if let Some(c) = snap(Lch { l, c: chroma, h: fg.h }, 2, accept, cost) {
            return Some(c);
        }
        if !base.fg_chromatic {
            break;
        }
        chroma = (chroma * 1.4).min(limit * 0.98);
    }
    None
}

fn subtle(base: &Base, t: &Thresholds) -> Option<Color> {
    let (fg, bg) = (base.fg, base.bg);
    let mid = 0.5 * (t.subtle_min_dl + t.subtle_max_dl);
    let toward_fg = if fg.l >= bg.l { 1.0 } else { -1.0 };
    let accept = |_: Color, m: Lch| {
        let dl = (m.l - bg.l).abs();
        dl >= t.subtle_min_dl + L_MARGIN
            && dl <= t.subtle_max_dl - L_MARGIN
            && (!base.bg_chromatic || hue_distance(m.h, bg.h) <= t.subtle_max_dh - H_MARGIN)
    };
    for sign in [toward_fg, -toward_fg] {
        let l = bg.l + sign * mid;
        if !(0.0..=100.0).contains(&l) {
            continue;
        }
        let c = bg.c.min(max_chroma(l, bg.h) * 0.98);
        let found = snap(Lch { l, c, h: bg.h }, 2, accept, |m| ((m.l - bg.l).abs() - mid).abs());
        if found.is_some() {
            return found;
        }
    }
    None
}

fn popout(base: &Base, t: &Thresholds, salient_hue: f64, preferred: f64, bg: Color) -> Option<Color> {
    let fg = base.fg;
    let hue_ok = |h: f64, margin: f64| {
        hue_distance(h, salient_hue) >= t.popout_min_dh + margin
            && (!base.fg_chromatic || hue_distance(h, fg.h) >= t.popout_min_dh + margin)
    };
    let mut levels = vec![fg.l];
    for k in 1..=12 {
        let step = 5.0 * k as f64;
        let toward = fg.l + step * (base.bg.l - fg.l).signum();
        let away = fg.l - step * (base.bg.l - fg.l).signum();
        levels.extend([toward, away].into_iter().filter(|l| (0.0..=100.0).contains(l)));
    }
    // Prefer a popout that stays readable on the background.
    for min_contrast in [3.0, 1.0] {
        for &l in &levels {
            for h in hue_sweep(preferred, 3.0) {
                if !hue_ok(h, 2.0) {
                    continue;
                }
                let c = (max_chroma(l, h) * 0.95).min(75.0);
                if c < t.popout_min_chroma + 3.0 {
                    continue;
                }
                let accept = |cand: Color, m: Lch| {
                    hue_ok(m.h, H_MARGIN)
                        && m.c >= t.popout_min_chroma + C_MARGIN
                        && contrast_ratio(cand, bg) >= min_contrast
                };
                let found = snap(Lch { l, c, h }, 1, accept, |m| hue_distance(m.h, h));
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

fn critical(t: &Thresholds, preferred: f64) -> Option<(Color, Color)> {
    let hue_ok = |h: f64| h >= t.critical_hue_min + H_MARGIN && h <= t.critical_hue_max - H_MARGIN;
    let center = 0.5 * (t.critical_hue_min + t.critical_hue_max);
    let h = if (t.critical_hue_min..=t.critical_hue_max).contains(&preferred) { preferred } else { center };
    let white_text = (0..=50).rev().map(|l| (Color::WHITE, l as f64));
    let black_text = (50..=95).map(|l| (Color::BLACK, l as f64));
    for (text, l) in white_text.chain(black_text) {
        let c = max_chroma(l, h) * 0.95;
        let accept = |cand: Color, m: Lch| hue_ok(m.h) && contrast_ratio(text, cand) >= t.critical_contrast + 0.05;
        if let Some(bg) = snap(Lch { l, c, h }, 1, accept, |m| hue_distance(m.h, h) - 0.01 * m.c) {
            return Some((text, bg));
        }
    }
    None
}

/// Derives the full face family from a base foreground and background.
pub fn derive_faces(default_fg: Color, default_bg: Color, options: &FaceOptions) -> Result<FaceSet, FaceError> {
    let t = options.thresholds;
    t.check()?;
    if options.ladder.is_empty() || options.base_weight >= options.ladder.len() {
        return Err(FaceError::InvalidLadder);
    }
    let ratio = contrast_ratio(default_fg, default_bg);
    if ratio < t.base_contrast {
        return Err(FaceError::InsufficientContrast { ratio, required: t.base_contrast });
    }
    if !(t.critical_hue_min..=t.critical_hue_max).contains(&normalize_hue(options.critical_hue)) {
        return Err(FaceError::Unsatisfiable("critical.hue"));
    }

    let fg = to_perceptual(default_fg);
    let bg = to_perceptual(default_bg);
    let base = Base {
        fg,
        bg,
        fg_chromatic: fg.c >= t.achromatic_chroma,
        bg_chromatic: bg.c >= t.achromatic_chroma,
    };

    let strong_weight = options
        .ladder
        .next_heavier(options.base_weight)
        .ok_or(FaceError::Unsatisfiable("strong.weight-step"))?;
    let salient_fg = salient(&base, &t, options.salient_hue).ok_or(FaceError::Unsatisfiable("salient.hue"))?;
    let faded_fg = faded(&base, &t).ok_or(FaceError::Unsatisfiable("faded.lightness"))?;
    let subtle_bg = subtle(&base, &t).ok_or(FaceError::Unsatisfiable("subtle.lightness"))?;
    let popout_fg = popout(&base, &t, to_perceptual(salient_fg).h, options.popout_hue, default_bg)
        .ok_or(FaceError::Unsatisfiable("popout.hue-salient"))?;
    let (critical_fg, critical_bg) =
        critical(&t, normalize_hue(options.critical_hue)).ok_or(FaceError::Unsatisfiable("critical.contrast"))?;

    let w = options.base_weight;
    let mut set = FaceSet::uniform(default_fg, default_bg, options.ladder.clone(), w, t);
    let spec = |name, fg, bg, weight| FaceSpec { name, fg, bg, weight };
    set.set(spec(FaceName::Strong, default_fg, None, strong_weight));
    set.set(spec(FaceName::Salient, salient_fg, None, w));
    set.set(spec(FaceName::Faded, faded_fg, None, w));
    set.set(spec(FaceName::Subtle, default_fg, Some(subtle_bg), w));
    set.set(spec(FaceName::Popout, popout_fg, None, w));
    set.set(spec(FaceName::Critical, critical_fg, Some(critical_bg), w));

    match set.validate().first_failure() {
        Some(check) => Err(FaceError::Unsatisfiable(check.clause)),
        None => Ok(set),
    }
}

/// Derives face sets for many palettes, in input order.
pub fn derive_faces_batch(
    palettes: &[(Color, Color)],
    options: &FaceOptions,
    strategy: Strategy,
) -> Vec<Result<FaceSet, FaceError>> {
    strategy.map(palettes, |&(fg, bg)| derive_faces(fg, bg, options))
}
