use std::collections::HashSet;
use std::fmt;

use super::{Context, RenderConfig};
use crate::faces::{FaceName, FaceSet};
use crate::layout::Book;

/// Most of the page may use critical and popout together, in percent.
pub const SCARCITY_LIMIT: f64 = 5.0;

/// Past this many foreground colors the page reads as a fruit salad.
pub const MAX_DISTINCT_COLORS: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct UsageReport {
    /// Visible (non-whitespace) characters per face, in `FaceName::ALL` order.
    pub counts: [(FaceName, usize); 7],
    pub total: usize,
    pub distinct_colors: usize,
    pub warnings: Vec<String>,
}

impl UsageReport {
    pub fn count(&self, face: FaceName) -> usize {
        self.counts.iter().find(|(f, _)| *f == face).map_or(0, |(_, n)| *n)
    }

    /// Share of visible characters in `face`, 0–100; 0 for an empty book.
    pub fn percent(&self, face: FaceName) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.count(face) as f64 / self.total as f64
        }
    }
}

impl fmt::Display for UsageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (face, n) in &self.counts {
            writeln!(f, "{:<9} {:>7.2}%  {n}", face.as_str(), self.percent(*face))?;
        }
        writeln!(f, "colors    {}", self.distinct_colors)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Counts the visible characters of every body page by face and checks the
/// scarcity rules: critical and popout together stay at or under
/// [`SCARCITY_LIMIT`] percent, and no more than [`MAX_DISTINCT_COLORS`]
/// foreground colors appear.
pub fn usage_report(book: &Book, faces: &FaceSet, cfg: &RenderConfig) -> UsageReport {
    let ctx = Context::new(book, faces, cfg);
    let mut counts = FaceName::ALL.map(|f| (f, 0usize));
    let mut colors = HashSet::new();
    for (p, page) in book.pages.iter().enumerate() {
        for (r, row) in page.rows.iter().enumerate() {
            let cells = [(&row.comment, row.comment_line), (&row.code, ctx.row_lines[p][r])];
            for (spans, line) in cells {
                for span in spans {
                    let visible = ctx.display(span).chars().filter(|c| !c.is_whitespace()).count();
                    if visible == 0 {
                        continue;
                    }
                    counts[span.face.index()].1 += visible;
                    colors.insert(ctx.style(span.face, line).fg);
                }
            }
        }
    }
    let total = counts.iter().map(|(_, n)| n).sum();
    let mut report = UsageReport { counts, total, distinct_colors: colors.len(), warnings: Vec::new() };
    let loud = report.percent(FaceName::Critical) + report.percent(FaceName::Popout);
    if loud > SCARCITY_LIMIT {
        report.warnings.push(format!(
            "critical and popout cover {loud:.1}% of visible characters (limit {SCARCITY_LIMIT}%); use them scarcely"
        ));
    }
    if report.distinct_colors > MAX_DISTINCT_COLORS {
        report.warnings.push(format!(
            "{} distinct foreground colors (limit {MAX_DISTINCT_COLORS})",
            report.distinct_colors
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotations::Annotations;
    use crate::faces::{derive_faces, FaceOptions};
    use crate::layout::{build_book, Document, LayoutConfig};
    use crate::tokens::Language;

    fn report(src: &str, lang: Language, cfg: &RenderConfig) -> UsageReport {
        let faces =
            derive_faces("#383A42".parse().unwrap(), "#FAFAFA".parse().unwrap(), &FaceOptions::default()).unwrap();
        let book = build_book(Document::new("t", src, lang), &LayoutConfig::default(), None, None).unwrap();
        usage_report(&book, &faces, cfg)
    }

    #[test]
    fn plain_text_is_all_default() {
        let r = report("The quick brown fox jumps over the lazy dog.\n", Language::Plain, &RenderConfig::default());
        assert_eq!(r.percent(FaceName::Default), 100.0);
        assert_eq!(r.total, 36);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn heavy_popout_warns() {
        let r = report("x = 1  # TODO FIXME TODO\n", Language::PythonLike, &RenderConfig::default());
        assert!(r.percent(FaceName::Popout) > 50.0);
        assert_eq!(r.warnings.len(), 1, "{r}");
    }

    #[test]
    fn percentages_sum_to_100() {
        let r = report("def f(a):\n    return 'x' + a  # add\n", Language::PythonLike, &RenderConfig::default());
        let sum: f64 = FaceName::ALL.iter().map(|f| r.percent(*f)).sum();
        assert!((sum - 100.0).abs() < 0.01);
        assert!(report("", Language::Plain, &RenderConfig::default()).warnings.is_empty());
    }

    #[test]
    fn many_authors_warn_about_colors() {
        let src: String = (0..10).map(|i| format!("v{i} = {i}\n")).collect();
        let ann: String = (1..=10).map(|i| format!("{i}\tauthor={i}\n")).collect();
        let cfg = RenderConfig { annotations: Some(Annotations::parse(&ann).unwrap()), ..RenderConfig::default() };
        let r = report(&src, Language::PythonLike, &cfg);
        assert!(r.distinct_colors > MAX_DISTINCT_COLORS);
        assert!(r.warnings.iter().any(|w| w.contains("colors")), "{r}");
    }
}
