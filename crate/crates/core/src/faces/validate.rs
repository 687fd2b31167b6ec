use std::fmt;

use super::color::{contrast_ratio, hue_distance, to_perceptual};
use super::{FaceName, FaceSet};

/// One measured rule clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub face: FaceName,
    pub clause: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub requirement: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<20} measured {:>8.2}  ({})",
            if self.passed { "pass" } else { "FAIL" },
            self.clause,
            self.measured,
            self.requirement
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn find(&self, clause: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.clause == clause)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

/// Measures every face rule against `faces`.
pub fn validate_faces(faces: &FaceSet) -> ValidationReport {
    let t = &faces.thresholds;
    let mut checks = Vec::new();
    let mut push = |face, clause, passed, measured, requirement: String| {
        checks.push(Check { face, clause, passed, measured, requirement })
    };

    let fg = to_perceptual(faces.fg);
    let bg = to_perceptual(faces.bg);
    let fg_chromatic = fg.c >= t.achromatic_chroma;
    let bg_chromatic = bg.c >= t.achromatic_chroma;

    let base = contrast_ratio(faces.fg, faces.bg);
    push(FaceName::Default, "default.contrast", base >= t.base_contrast, base, format!(">= {}", t.base_contrast));

    let strong = faces.get(FaceName::Strong);
    let diff = strong
        .fg
        .channels()
        .iter()
        .zip(faces.fg.channels())
        .map(|(a, b)| a.abs_diff(b))
        .max()
        .unwrap_or(0);
    push(FaceName::Strong, "strong.same-fg", diff == 0, diff as f64, "fg identical to default".into());
    let base_weight = faces.get(FaceName::Default).weight;
    let step_ok = faces.ladder.next_heavier(base_weight) == Some(strong.weight);
    let step = faces.weight_of(FaceName::Strong) as f64 - faces.weight_of(FaceName::Default) as f64;
    push(FaceName::Strong, "strong.weight-step", step_ok, step, "next heavier ladder entry".into());

    let salient = to_perceptual(faces.get(FaceName::Salient).fg);
    let dl = (salient.l - fg.l).abs();
    push(FaceName::Salient, "salient.lightness", dl <= t.salient_max_dl, dl, format!("|dL*| <= {}", t.salient_max_dl));
    if fg_chromatic {
        let dh = hue_distance(salient.h, fg.h);
        push(FaceName::Salient, "salient.hue", dh >= t.salient_min_dh, dh, format!("dh >= {}", t.salient_min_dh));
    } else {
        push(
            FaceName::Salient,
            "salient.chroma",
            salient.c >= t.salient_min_chroma,
            salient.c,
            format!("C* >= {} (achromatic default)", t.salient_min_chroma),
        );
    }

    let faded = to_perceptual(faces.get(FaceName::Faded).fg);
    let dh = hue_distance(faded.h, fg.h);
    if fg_chromatic {
        push(FaceName::Faded, "faded.hue", dh <= t.faded_max_dh, dh, format!("dh <= {}", t.faded_max_dh));
    } else {
        push(FaceName::Faded, "faded.hue", true, dh, "relaxed (achromatic default)".into());
    }
    let target = t.faded_factor * (fg.l - bg.l).abs();
    let actual = (faded.l - bg.l).abs();
    push(
        FaceName::Faded,
        "faded.lightness",
        (actual - target).abs() <= t.faded_dl_tolerance,
        actual,
        format!("|L* - L*bg| = {target:.2} +/- {}", t.faded_dl_tolerance),
    );

    match faces.get(FaceName::Subtle).bg {
        Some(subtle_bg) => {
            let subtle = to_perceptual(subtle_bg);
            let dl = (subtle.l - bg.l).abs();
            push(
                FaceName::Subtle,
                "subtle.lightness",
                (t.subtle_min_dl..=t.subtle_max_dl).contains(&dl),
                dl,
                format!("dL* in [{}, {}]", t.subtle_min_dl, t.subtle_max_dl),
            );
            let dh = hue_distance(subtle.h, bg.h);
            if bg_chromatic {
                push(FaceName::Subtle, "subtle.hue", dh <= t.subtle_max_dh, dh, format!("dh <= {}", t.subtle_max_dh));
            } else {
                push(FaceName::Subtle, "subtle.hue", true, dh, "relaxed (achromatic background)".into());
            }
        }
        None => push(FaceName::Subtle, "subtle.background", false, f64::NAN, "background required".into()),
    }

    let popout = to_perceptual(faces.get(FaceName::Popout).fg);
    let dh = hue_distance(popout.h, fg.h);
    if fg_chromatic {
        push(FaceName::Popout, "popout.hue-default", dh >= t.popout_min_dh, dh, format!("dh >= {}", t.popout_min_dh));
    } else {
        push(FaceName::Popout, "popout.hue-default", true, dh, "relaxed (achromatic default)".into());
    }
    let dh = hue_distance(popout.h, salient.h);
    push(FaceName::Popout, "popout.hue-salient", dh >= t.popout_min_dh, dh, format!("dh >= {}", t.popout_min_dh));
    push(
        FaceName::Popout,
        "popout.chroma",
        popout.c >= t.popout_min_chroma,
        popout.c,
        format!("C* >= {}", t.popout_min_chroma),
    );

    let critical = faces.get(FaceName::Critical);
    match critical.bg {
        Some(critical_bg) => {
            let h = to_perceptual(critical_bg).h;
            push(
                FaceName::Critical,
                "critical.hue",
                (t.critical_hue_min..=t.critical_hue_max).contains(&h),
                h,
                format!("h in [{}, {}]", t.critical_hue_min, t.critical_hue_max),
            );
            let ratio = contrast_ratio(critical.fg, critical_bg);
            push(
                FaceName::Critical,
                "critical.contrast",
                ratio >= t.critical_contrast,
                ratio,
                format!(">= {}", t.critical_contrast),
            );
        }
        None => push(FaceName::Critical, "critical.background", false, f64::NAN, "background required".into()),
    }

    ValidationReport { checks }
}
