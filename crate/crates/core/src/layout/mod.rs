//! Page geometry, rows, pagination and book assembly.
//!
//! All measurements are in monospace character cells; pixel sizes are
//! derived from a configurable cell size and only matter for the page
//! shape.

mod book;
mod paginate;
mod rows;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use book::{build_book, Book, Document, HeaderBlock, IndexEntry, TocEntry};
pub use paginate::{paginate, Page};
pub use rows::{build_rows, reconstruct, split_comment_column, wrap_long_line, Row, StyledSpan};

/// Columns between the comment cell and the code cell.
pub const GUTTER: usize = 2;

/// Narrowest code cell that wrapping accepts.
pub const MIN_WRAP_WIDTH: usize = 8;

/// Fewest text rows a page may hold.
pub const MIN_ROWS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ratio {
    /// Height is width × √2.
    Iso216,
    /// Height follows from a fixed row count.
    None,
}

impl FromStr for Ratio {
    type Err = LayoutError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iso216" => Ok(Ratio::Iso216),
            "none" => Ok(Ratio::None),
            other => Err(LayoutError::Config(format!("unknown ratio `{other}` (expected iso216 or none)"))),
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ratio::Iso216 => "iso216",
            Ratio::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig {
    /// Text measure in characters, 40–200.
    pub columns: usize,
    pub ratio: Ratio,
    /// Text rows per page when `ratio` is `None`.
    pub rows: usize,
    /// Horizontal margin in cells on each side; also used, in pixels, as the
    /// vertical margin.
    pub margin: usize,
    /// Row height as a multiple of the cell height, 1.0–3.0.
    pub line_spacing: f64,
    pub comment_column: bool,
    /// Share of the measure given to the comment column, 0.2–0.5.
    pub comment_fraction: f64,
    /// Cell size in pixels (width, height).
    pub cell: (u32, u32),
    /// Hard-wrap code lines that exceed the code cell.
    pub wrap: bool,
    /// Display tabs as spaces (to the next multiple of this width); 0 keeps
    /// tabs verbatim.
    pub tab_width: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            columns: 80,
            ratio: Ratio::Iso216,
            rows: 24,
            margin: 4,
            line_spacing: 1.25,
            comment_column: true,
            comment_fraction: 0.35,
            cell: (8, 16),
            wrap: true,
            tab_width: 4,
        }
    }
}

impl LayoutConfig {
    /// The configuration under which rendering is a pure pass-through of the
    /// source text: no comment column, no margins, no wrapping, no tab
    /// expansion, fixed row count.
    pub fn neutral() -> Self {
        LayoutConfig {
            ratio: Ratio::None,
            margin: 0,
            comment_column: false,
            wrap: false,
            tab_width: 0,
            ..LayoutConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), LayoutError> {
        let bad = |m: String| Err(LayoutError::Config(m));
        if !(40..=200).contains(&self.columns) {
            return bad(format!("columns must be in 40..=200, got {}", self.columns));
        }
        if !(1.0..=3.0).contains(&self.line_spacing) {
            return bad(format!("line spacing must be in [1.0, 3.0], got {}", self.line_spacing));
        }
        if !(0.2..=0.5).contains(&self.comment_fraction) {
            return bad(format!("comment fraction must be in [0.2, 0.5], got {}", self.comment_fraction));
        }
        if self.cell.0 == 0 || self.cell.1 == 0 {
            return bad("cell size must be positive".into());
        }
        if self.margin > self.columns {
            return bad(format!("margin {} exceeds the measure", self.margin));
        }
        if self.tab_width > 16 {
            return bad(format!("tab width must be at most 16, got {}", self.tab_width));
        }
        Ok(())
    }

    /// Width of the comment cell, 0 when the column is off.
    pub fn comment_columns(&self) -> usize {
        if self.comment_column {
            (self.comment_fraction * self.columns as f64).round() as usize
        } else {
            0
        }
    }

    pub fn code_columns(&self) -> usize {
        match self.comment_columns() {
            0 => self.columns,
            c => self.columns - c - GUTTER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("invalid layout: {0}")]
    Config(String),
    #[error("page too small: {rows} text rows (need at least {MIN_ROWS})")]
    PageTooSmall { rows: usize },
    #[error("wrap width {0} is below the minimum of {MIN_WRAP_WIDTH}")]
    WrapTooNarrow(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageGeometry {
    pub width_px: f64,
    pub height_px: f64,
    pub text_columns: usize,
    pub text_rows: usize,
    pub margin_cells: usize,
    pub margin_px: f64,
    pub row_height_px: f64,
    pub comment_columns: usize,
    pub code_columns: usize,
}

pub fn compute_page_geometry(cfg: &LayoutConfig) -> Result<PageGeometry, LayoutError> {
    cfg.validate()?;
    let (cell_w, cell_h) = (cfg.cell.0 as f64, cfg.cell.1 as f64);
    let width_px = (cfg.columns + 2 * cfg.margin) as f64 * cell_w;
    let margin_px = cfg.margin as f64 * cell_w;
    let row_height_px = cell_h * cfg.line_spacing;
    let (height_px, text_rows) = match cfg.ratio {
        Ratio::Iso216 => {
            let h = width_px * std::f64::consts::SQRT_2;
            (h, ((h - 2.0 * margin_px) / row_height_px).floor().max(0.0) as usize)
        }
        Ratio::None => (cfg.rows as f64 * row_height_px + 2.0 * margin_px, cfg.rows),
    };
    if text_rows < MIN_ROWS {
        return Err(LayoutError::PageTooSmall { rows: text_rows });
    }
    Ok(PageGeometry {
        width_px,
        height_px,
        text_columns: cfg.columns,
        text_rows,
        margin_cells: cfg.margin,
        margin_px,
        row_height_px,
        comment_columns: cfg.comment_columns(),
        code_columns: cfg.code_columns(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_page() {
        let cfg = LayoutConfig { comment_column: false, ..LayoutConfig::default() };
        let g = compute_page_geometry(&cfg).unwrap();
        assert_eq!(g.width_px, 704.0);
        assert!((g.height_px - 995.61).abs() < 0.01, "{}", g.height_px);
        assert_eq!(g.row_height_px, 20.0);
        assert_eq!(g.text_rows, 46);
        assert_eq!(g.code_columns, 80);
    }

    #[test]
    fn fixed_rows() {
        let cfg = LayoutConfig { margin: 0, ratio: Ratio::None, comment_column: false, ..LayoutConfig::default() };
        let g = compute_page_geometry(&cfg).unwrap();
        assert_eq!((g.text_columns, g.text_rows), (80, 24));
    }

    #[test]
    fn bounds() {
        let bad = |cfg: LayoutConfig| compute_page_geometry(&cfg).is_err();
        assert!(bad(LayoutConfig { columns: 39, ..LayoutConfig::default() }));
        assert!(bad(LayoutConfig { columns: 201, ..LayoutConfig::default() }));
        assert!(bad(LayoutConfig { line_spacing: 0.9, ..LayoutConfig::default() }));
        assert!(bad(LayoutConfig { comment_fraction: 0.6, ..LayoutConfig::default() }));
        let tiny = LayoutConfig { ratio: Ratio::None, rows: 3, ..LayoutConfig::default() };
        assert_eq!(compute_page_geometry(&tiny), Err(LayoutError::PageTooSmall { rows: 3 }));
    }

    #[test]
    fn column_split() {
        let cfg = LayoutConfig::default();
        assert_eq!(cfg.comment_columns(), 28);
        assert_eq!(cfg.code_columns(), 50);
        let cfg = LayoutConfig { columns: 40, comment_fraction: 0.5, ..LayoutConfig::default() };
        assert_eq!(cfg.code_columns(), 18);
    }
}
