//! Output back ends: 24-bit ANSI for terminals, self-contained HTML, and a
//! face-usage report.

mod ansi;
mod html;
mod ligature;
mod usage;

use std::collections::HashMap;

pub use ansi::{render_ansi, strip_sgr, StripError};
pub use html::render_html;
pub use ligature::{apply_ligatures, LigatureTable, Substitutions};
pub use usage::{usage_report, UsageReport, MAX_DISTINCT_COLORS, SCARCITY_LIMIT};

use crate::annotations::Annotations;
use crate::faces::{age_tint, distinct_hues, to_perceptual, Color, FaceName, FaceSet};
use crate::layout::{Book, StyledSpan};
use crate::tokens::Category;
use crate::Strategy;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Off by default: substitutions are sometimes wrong, and the reader
    /// should opt in.
    pub ligatures: bool,
    pub ligature_table: LigatureTable,
    /// Emit the preface (title, context, contents) and index pages.
    pub chrome: bool,
    /// Per-line author colors and age tints.
    pub annotations: Option<Annotations>,
    pub strategy: Strategy,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            ligatures: false,
            ligature_table: LigatureTable::default(),
            chrome: true,
            annotations: None,
            strategy: Strategy::default(),
        }
    }
}

impl RenderConfig {
    /// Body pages only, no substitutions: stripping the escapes gives back
    /// the source when paired with a neutral layout.
    pub fn neutral() -> Self {
        RenderConfig { chrome: false, ..RenderConfig::default() }
    }
}

/// Terminal weight: the ladder collapses to three states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Emphasis {
    Normal,
    Bold,
    Faint,
}

/// Resolved drawing attributes of one span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Style {
    pub face: FaceName,
    pub fg: Color,
    /// Only for faces with their own background; the default background is
    /// the page itself.
    pub bg: Option<Color>,
    pub emphasis: Emphasis,
    /// Index into the tint palette when an annotation recolored the span.
    pub tint: Option<usize>,
}

/// Everything page renderers share.
pub(crate) struct Context<'a> {
    pub book: &'a Book,
    pub faces: &'a FaceSet,
    pub subs: Substitutions,
    /// Line → tint palette index.
    pub line_tints: HashMap<u32, usize>,
    pub tints: Vec<Color>,
    /// Per body page, the source line of each row (continuations inherit).
    pub row_lines: Vec<Vec<Option<u32>>>,
}

impl<'a> Context<'a> {
    pub fn new(book: &'a Book, faces: &'a FaceSet, cfg: &RenderConfig) -> Self {
        let doc = &book.document;
        let subs = apply_ligatures(&doc.tokens, &doc.source, &cfg.ligature_table, cfg.ligatures);
        let (line_tints, tints) = match &cfg.annotations {
            Some(a) => tint_palette(a, faces),
            None => (HashMap::new(), Vec::new()),
        };
        let mut current = None;
        let row_lines = book
            .pages
            .iter()
            .map(|p| {
                let lines = row_lines(&p.rows, current);
                current = lines.last().copied().flatten();
                lines
            })
            .collect();
        Context { book, faces, subs, line_tints, tints, row_lines }
    }

    pub fn style(&self, face: FaceName, line: Option<u32>) -> Style {
        let spec = self.faces.get(face);
        let base = self.faces.get(FaceName::Default).weight;
        let emphasis = match spec.weight.cmp(&base) {
            std::cmp::Ordering::Greater => Emphasis::Bold,
            std::cmp::Ordering::Less => Emphasis::Faint,
            std::cmp::Ordering::Equal => Emphasis::Normal,
        };
        let tint = match face {
            FaceName::Default => line.and_then(|l| self.line_tints.get(&l).copied()),
            _ => None,
        };
        Style {
            face,
            fg: tint.map_or(spec.fg, |t| self.tints[t]),
            bg: if face == FaceName::Default { None } else { spec.bg },
            emphasis,
            tint,
        }
    }

    /// Display text of a span: the ligature glyph when the span is a whole
    /// substituted operator token.
    pub fn display<'s>(&'s self, span: &'s StyledSpan) -> &'s str {
        let token = &self.book.document.tokens[span.token];
        match self.subs.get(&span.token) {
            Some(glyph) if token.span == span.source => glyph,
            _ => &span.text,
        }
    }

    pub fn is_blank(&self, span: &StyledSpan) -> bool {
        self.book.document.tokens[span.token].category == Category::Whitespace
    }
}

/// Author hues at the default foreground's lightness, then aged toward the
/// background. Returns the per-line palette index and the palette.
fn tint_palette(a: &Annotations, faces: &FaceSet) -> (HashMap<u32, usize>, Vec<Color>) {
    const AUTHOR_CHROMA: f64 = 40.0;
    let authors = a.authors();
    let hues = distinct_hues(authors.len().max(1), to_perceptual(faces.fg).l, AUTHOR_CHROMA).unwrap_or_default();
    let mut palette: Vec<Color> = Vec::new();
    let mut lines = HashMap::new();
    for (&line, ann) in &a.lines {
        let base = match ann.author {
            Some(id) => authors.iter().position(|&x| x == id).map_or(faces.fg, |i| hues[i]),
            None => faces.fg,
        };
        let color = match ann.age {
            Some(age) => age_tint(base, faces.bg, age).unwrap_or(base),
            None => base,
        };
        if color == faces.fg {
            continue;
        }
        let idx = palette.iter().position(|&c| c == color).unwrap_or_else(|| {
            palette.push(color);
            palette.len() - 1
        });
        lines.insert(line, idx);
    }
    (lines, palette)
}

/// Source line each row belongs to: its own, or the line it continues.
fn row_lines(rows: &[crate::layout::Row], mut current: Option<u32>) -> Vec<Option<u32>> {
    rows.iter()
        .map(|r| {
            if r.source_line.is_some() {
                current = r.source_line;
            } else if !r.continuation {
                current = None;
            }
            current
        })
        .collect()
}

/// Page footer label for body page `n`.
pub(crate) fn page_label(n: u32) -> String {
    format!("p. {n}")
}
