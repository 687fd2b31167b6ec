//! Independent color measurements for checking derived faces.
//!
//! CIELAB goes through the `palette` crate; WCAG luminance is evaluated
//! straight from its definition. Neither path touches `folio::faces::color`.

use folio::faces::{Color, FaceName, FaceSet};
use palette::white_point::D65;
use palette::{IntoColor, Lab, Lch, Srgb};

#[derive(Debug, Clone, Copy)]
pub struct Measured {
    pub l: f64,
    pub c: f64,
    pub h: f64,
}

pub fn lch(c: Color) -> Measured {
    let rgb: Srgb<f64> = Srgb::new(c.r, c.g, c.b).into_format();
    let lab: Lab<D65, f64> = rgb.into_linear::<f64>().into_color();
    let lch: Lch<D65, f64> = lab.into_color();
    Measured {
        l: lch.l,
        c: lch.chroma,
        h: lch.hue.into_positive_degrees(),
    }
}

pub fn luminance(c: Color) -> f64 {
    let lin = |v: u8| {
        let s = v as f64 / 255.0;
        if s <= 0.03928 { s / 12.92 } else { ((s + 0.055) / 1.055).powf(2.4) }
    };
    0.2126 * lin(c.r) + 0.7152 * lin(c.g) + 0.0722 * lin(c.b)
}

pub fn contrast(a: Color, b: Color) -> f64 {
    let (x, y) = (luminance(a), luminance(b));
    (x.max(y) + 0.05) / (x.min(y) + 0.05)
}

pub fn hue_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % 360.0;
    d.min(360.0 - d)
}

/// Re-checks every face rule with the oracle; returns the violated clauses.
pub fn violations(fs: &FaceSet) -> Vec<String> {
    let t = &fs.thresholds;
    let mut out = Vec::new();
    let mut fail = |what: String| out.push(what);
    let fg = lch(fs.fg);
    let bg = lch(fs.bg);
    let fg_chromatic = fg.c >= t.achromatic_chroma;
    let bg_chromatic = bg.c >= t.achromatic_chroma;

    let strong = fs.get(FaceName::Strong);
    if strong.fg.to_hex() != fs.fg.to_hex() {
        fail(format!("strong fg {} != {}", strong.fg, fs.fg));
    }
    if fs.weight_of(FaceName::Strong) <= fs.weight_of(FaceName::Default) {
        fail("strong weight not heavier".into());
    }

    let salient = lch(fs.get(FaceName::Salient).fg);
    if (salient.l - fg.l).abs() > t.salient_max_dl {
        fail(format!("salient dL {:.3}", (salient.l - fg.l).abs()));
    }
    if fg_chromatic {
        if hue_gap(salient.h, fg.h) < t.salient_min_dh {
            fail(format!("salient dh {:.3}", hue_gap(salient.h, fg.h)));
        }
    } else if salient.c < t.salient_min_chroma {
        fail(format!("salient C {:.3}", salient.c));
    }

    let faded = lch(fs.get(FaceName::Faded).fg);
    if fg_chromatic && hue_gap(faded.h, fg.h) > t.faded_max_dh {
        fail(format!("faded dh {:.3}", hue_gap(faded.h, fg.h)));
    }
    let want = t.faded_factor * (fg.l - bg.l).abs();
    let got = (faded.l - bg.l).abs();
    if (got - want).abs() > t.faded_dl_tolerance {
        fail(format!("faded dL {got:.3} vs {want:.3}"));
    }

    match fs.get(FaceName::Subtle).bg {
        Some(s) => {
            let s = lch(s);
            let dl = (s.l - bg.l).abs();
            if !(t.subtle_min_dl..=t.subtle_max_dl).contains(&dl) {
                fail(format!("subtle dL {dl:.3}"));
            }
            if bg_chromatic && hue_gap(s.h, bg.h) > t.subtle_max_dh {
                fail(format!("subtle dh {:.3}", hue_gap(s.h, bg.h)));
            }
        }
        None => fail("subtle has no background".into()),
    }

    let popout = lch(fs.get(FaceName::Popout).fg);
    if fg_chromatic && hue_gap(popout.h, fg.h) < t.popout_min_dh {
        fail(format!("popout dh(default) {:.3}", hue_gap(popout.h, fg.h)));
    }
    if hue_gap(popout.h, salient.h) < t.popout_min_dh {
        fail(format!("popout dh(salient) {:.3}", hue_gap(popout.h, salient.h)));
    }
    if popout.c < t.popout_min_chroma {
        fail(format!("popout C {:.3}", popout.c));
    }

    let critical = fs.get(FaceName::Critical);
    match critical.bg {
        Some(cbg) => {
            let h = lch(cbg).h;
            if !(t.critical_hue_min..=t.critical_hue_max).contains(&h) {
                fail(format!("critical hue {h:.3}"));
            }
            let r = contrast(critical.fg, cbg);
            if r < t.critical_contrast {
                fail(format!("critical contrast {r:.3}"));
            }
        }
        None => fail("critical has no background".into()),
    }
    out
}
