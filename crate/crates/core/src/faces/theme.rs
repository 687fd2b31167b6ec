//! Theme files: one `key = value` per line, `#` starts a comment line.
//!
//! ```text
//! # light
//! default.fg = #383A42
//! default.bg = #FAFAFA
//! salient.hue = 250
//! thresholds.salient_dL = 4
//! ```

use std::collections::HashSet;

use thiserror::Error;

use super::{Color, FaceOptions, Thresholds};

#[derive(Debug, Clone, PartialEq)]
pub struct Theme {
    pub fg: Color,
    pub bg: Color,
    pub options: FaceOptions,
    /// Non-fatal remarks such as duplicate keys.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theme line {line}: {message}")]
pub struct ThemeError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

pub fn parse_theme(text: &str) -> Result<Theme, ThemeError> {
    let mut fg = None;
    let mut bg = None;
    let mut options = FaceOptions::default();
    let mut warnings = Vec::new();
    let mut seen = HashSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ThemeError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected `key = value`, found `{trimmed}`")))?;
        if value.is_empty() {
            return Err(err(format!("missing value for `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            warnings.push(format!("line {line}: duplicate key `{key}`, last value wins"));
        }
        let color = || value.parse::<Color>().map_err(|e| err(e.to_string()));
        let number = || {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("`{key}` expects a number, found `{value}`")))
        };
        match key {
            "default.fg" => fg = Some(color()?),
            "default.bg" => bg = Some(color()?),
            "salient.hue" => options.salient_hue = number()?,
            "popout.hue" => options.popout_hue = number()?,
            "critical.hue" => options.critical_hue = number()?,
            _ => {
                let field = key
                    .strip_prefix("thresholds.")
                    .and_then(|k| options.thresholds.field_mut(k))
                    .ok_or_else(|| err(format!("unknown key `{key}`")))?;
                *field = number()?;
            }
        }
    }

    let missing = |what: &str| ThemeError { line: 0, message: format!("missing required key `{what}`") };
    let fg = fg.ok_or_else(|| missing("default.fg"))?;
    let bg = bg.ok_or_else(|| missing("default.bg"))?;
    options
        .thresholds
        .check()
        .map_err(|e| ThemeError { line: 0, message: e.to_string() })?;
    Ok(Theme { fg, bg, options, warnings })
}

/// Renders thresholds back into theme-file lines.
pub fn thresholds_to_theme_lines(t: &Thresholds) -> Vec<String> {
    let mut t = *t;
    Thresholds::KEYS
        .iter()
        .map(|k| format!("thresholds.{k} = {}", t.field_mut(k).map(|v| *v).unwrap_or_default()))
        .collect()
}
