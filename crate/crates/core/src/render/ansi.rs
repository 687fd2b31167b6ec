//! 24-bit ANSI rendering and its inverse.
//!
//! Only five escape sequences are ever written: `ESC[38;2;R;G;Bm`,
//! `ESC[48;2;R;G;Bm`, `ESC[1m`, `ESC[2m` and `ESC[0m`. Each styled span
//! closes with a reset, every row ends with one, and pages are joined by a
//! form feed after a centered footer line.

use std::fmt::Write as _;

use thiserror::Error;

use super::{page_label, Context, Emphasis, RenderConfig, Style};
use crate::faces::{FaceName, FaceSet};
use crate::layout::{Book, StyledSpan, GUTTER};

const RESET: &str = "\x1b[0m";
const FAINT: &str = "\x1b[2m";
const FORM_FEED: char = '\x0C';
const DASH: &str = "—";

pub fn render_ansi(book: &Book, faces: &FaceSet, cfg: &RenderConfig) -> Vec<u8> {
    let ctx = Context::new(book, faces, cfg);
    let mut sheets: Vec<String> = Vec::new();
    if cfg.chrome {
        sheets.push(preface(&ctx));
    }
    let last = book.pages.len().saturating_sub(1);
    sheets.extend(cfg.strategy.map_indexed(book.pages.len(), |i| body_page(&ctx, i, i == last)));
    if cfg.chrome && !book.index.is_empty() {
        sheets.push(index_page(&ctx));
    }
    sheets.join(&FORM_FEED.to_string()).into_bytes()
}

fn push_styled(out: &mut String, style: Style, text: &str) {
    if text.is_empty() {
        return;
    }
    match style.emphasis {
        Emphasis::Bold => out.push_str("\x1b[1m"),
        Emphasis::Faint => out.push_str(FAINT),
        Emphasis::Normal => {}
    }
    let c = style.fg;
    let _ = write!(out, "\x1b[38;2;{};{};{}m", c.r, c.g, c.b);
    if let Some(b) = style.bg {
        let _ = write!(out, "\x1b[48;2;{};{};{}m", b.r, b.g, b.b);
    }
    out.push_str(text);
    out.push_str(RESET);
}

fn push_spans(out: &mut String, ctx: &Context, spans: &[StyledSpan], line: Option<u32>) -> usize {
    let mut width = 0;
    for span in spans {
        let text = ctx.display(span);
        width += text.chars().count();
        if ctx.is_blank(span) {
            out.push_str(text);
        } else {
            push_styled(out, ctx.style(span.face, line), text);
        }
    }
    width
}

/// Margins open each row as `ESC[0m`, the padding, `ESC[0m`, which is
/// what lets [`strip_sgr`] tell them apart from leading whitespace.
fn push_margin(out: &mut String, cells: usize) {
    if cells > 0 {
        out.push_str(RESET);
        out.extend(std::iter::repeat_n(' ', cells));
        out.push_str(RESET);
    }
}

fn push_footer(out: &mut String, label: &str, total_width: usize) {
    let open_line = !out.is_empty() && !out.ends_with(['\n', '\r']);
    out.push_str(FAINT);
    if open_line {
        out.push('\n');
    }
    let text = format!("{DASH} {label} {DASH}");
    let pad = total_width.saturating_sub(text.chars().count()) / 2;
    out.extend(std::iter::repeat_n(' ', pad));
    out.push_str(&text);
    out.push_str(RESET);
    out.push('\n');
}

fn body_page(ctx: &Context, index: usize, last_page: bool) -> String {
    let book = ctx.book;
    let geom = &book.geometry;
    let page = &book.pages[index];
    let source = &book.document.source;
    let mut out = String::new();
    for (r, row) in page.rows.iter().enumerate() {
        let line = ctx.row_lines[index][r];
        push_margin(&mut out, geom.margin_cells);
        if geom.comment_columns > 0 {
            let used = push_spans(&mut out, ctx, &row.comment, row.comment_line);
            out.extend(std::iter::repeat_n(' ', geom.comment_columns.saturating_sub(used) + GUTTER));
        }
        push_spans(&mut out, ctx, &row.code, line);
        out.push_str(RESET);
        match row.terminator {
            Some(t) => out.push_str(&source[t.range()]),
            None if last_page && r + 1 == page.rows.len() => {}
            None => out.push('\n'),
        }
    }
    push_footer(&mut out, &page_label(page.number), geom.text_columns + 2 * geom.margin_cells);
    out
}

/// A chrome line: margin, styled pieces, reset, newline.
fn chrome_line(out: &mut String, ctx: &Context, pieces: &[(FaceName, &str)]) {
    push_margin(out, ctx.book.geometry.margin_cells);
    for (face, text) in pieces {
        push_styled(out, ctx.style(*face, None), text);
    }
    out.push_str(RESET);
    out.push('\n');
}

/// `name ····· page`, padded to the measure.
pub(crate) fn leader_line(indent: usize, name: &str, page: &str, width: usize) -> (String, String, String) {
    let room = width.saturating_sub(indent + page.chars().count() + 2);
    let name: String = name.chars().take(room.max(1)).collect();
    let dots = room.saturating_sub(name.chars().count()).max(1);
    (
        format!("{}{name}", " ".repeat(indent)),
        format!(" {} ", "·".repeat(dots.saturating_sub(1).max(1))),
        page.to_string(),
    )
}

fn preface(ctx: &Context) -> String {
    let book = ctx.book;
    let header = book.header();
    let width = book.geometry.text_columns;
    let mut out = String::new();
    chrome_line(&mut out, ctx, &[(FaceName::Strong, &header.title)]);
    if let Some(b) = &header.branch {
        chrome_line(&mut out, ctx, &[(FaceName::Faded, &format!("branch {b}"))]);
    }
    if let Some(c) = &header.commit {
        chrome_line(&mut out, ctx, &[(FaceName::Faded, &format!("commit {c}"))]);
    }
    let stats = format!("{} lines, {} definitions", header.line_count, header.definition_count);
    chrome_line(&mut out, ctx, &[(FaceName::Faded, &stats)]);
    if !book.toc.is_empty() {
        chrome_line(&mut out, ctx, &[]);
        chrome_line(&mut out, ctx, &[(FaceName::Strong, "Contents")]);
        for entry in &book.toc {
            let (name, dots, page) =
                leader_line(2 * entry.item.depth as usize, &entry.item.name, &entry.page.to_string(), width);
            chrome_line(&mut out, ctx, &[(FaceName::Default, &name), (FaceName::Faded, &dots), (FaceName::Default, &page)]);
        }
    }
    push_footer(&mut out, "contents", width + 2 * book.geometry.margin_cells);
    out
}

fn index_page(ctx: &Context) -> String {
    let book = ctx.book;
    let width = book.geometry.text_columns;
    let mut out = String::new();
    chrome_line(&mut out, ctx, &[(FaceName::Strong, "Index")]);
    for entry in &book.index {
        let pages: Vec<String> = entry.pages.iter().map(u32::to_string).collect();
        let (name, dots, pages) = leader_line(0, &entry.name, &pages.join(", "), width);
        chrome_line(&mut out, ctx, &[(FaceName::Default, &name), (FaceName::Faded, &dots), (FaceName::Default, &pages)]);
    }
    push_footer(&mut out, "index", width + 2 * book.geometry.margin_cells);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed escape sequence at byte {offset}")]
pub struct StripError {
    pub offset: usize,
}

/// Removes everything [`render_ansi`] adds: SGR sequences, margins, page
/// footers and the form feeds that follow them. Form feeds elsewhere are
/// source text and stay. Any escape other than an SGR sequence is an error.
pub fn strip_sgr(input: &[u8]) -> Result<Vec<u8>, StripError> {
    let mut out = Vec::with_capacity(input.len());
    let mut i = 0;
    let mut line_start = true;
    while i < input.len() {
        let rest = &input[i..];
        if line_start {
            if let Some(n) = margin_len(rest) {
                i += n;
                line_start = false;
                continue;
            }
        }
        if let Some(n) = footer_len(rest) {
            i += n;
            if input.get(i) == Some(&(FORM_FEED as u8)) {
                i += 1;
            }
            line_start = true;
            continue;
        }
        match rest[0] {
            0x1b => i += sgr_len(rest).ok_or(StripError { offset: i })?,
            b => {
                out.push(b);
                line_start = b == b'\n' || b == b'\r';
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Length of a complete `ESC[<digits and ;>m` sequence.
fn sgr_len(s: &[u8]) -> Option<usize> {
    if s.get(1) != Some(&b'[') {
        return None;
    }
    let params = s[2..].iter().take_while(|b| b.is_ascii_digit() || **b == b';').count();
    (s.get(2 + params) == Some(&b'm')).then_some(3 + params)
}

fn margin_len(s: &[u8]) -> Option<usize> {
    let body = s.strip_prefix(RESET.as_bytes())?;
    let spaces = body.iter().take_while(|b| **b == b' ').count();
    (spaces > 0 && body[spaces..].starts_with(RESET.as_bytes())).then_some(2 * RESET.len() + spaces)
}

/// `ESC[2m` [`\n`] spaces `— label —` `ESC[0m` `\n`.
fn footer_len(s: &[u8]) -> Option<usize> {
    let mut p = FAINT.len();
    if !s.starts_with(FAINT.as_bytes()) {
        return None;
    }
    if s.get(p) == Some(&b'\n') {
        p += 1;
    }
    p += s[p..].iter().take_while(|b| **b == b' ').count();
    let open = format!("{DASH} ");
    if !s[p..].starts_with(open.as_bytes()) {
        return None;
    }
    p += open.len();
    let close = format!(" {DASH}{RESET}\n");
    let label = s[p..].iter().take_while(|b| **b != b'\n' && **b != 0x1b).count();
    p += label;
    let close_at = p.checked_sub(DASH.len() + 1)?;
    s[close_at..].starts_with(close.as_bytes()).then_some(close_at + close.len())
}
