//! Self-contained XHTML output: one style block, no scripts, no external
//! resources. The markup is well-formed XML so it can be checked with any
//! XML parser.

use std::fmt::Write as _;

use super::ansi::leader_line;
use super::{page_label, Context, RenderConfig};
use crate::faces::{Color, FaceName, FaceSet};
use crate::layout::{Book, StyledSpan};

pub fn render_html(book: &Book, faces: &FaceSet, cfg: &RenderConfig) -> String {
    let ctx = Context::new(book, faces, cfg);
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html xmlns=\"http://www.w3.org/1999/xhtml\" lang=\"en\">\n<head>\n");
    out.push_str("<meta charset=\"utf-8\"/>\n");
    let _ = writeln!(out, "<title>{}</title>", escape(&book.header().title));
    out.push_str("<style>\n");
    out.push_str(&stylesheet(&ctx));
    out.push_str("</style>\n</head>\n<body>\n");
    if cfg.chrome {
        preface(&mut out, &ctx);
    }
    let pages = cfg.strategy.map_indexed(book.pages.len(), |i| body_page(&ctx, i));
    for page in pages {
        out.push_str(&page);
    }
    if cfg.chrome && !book.index.is_empty() {
        index_page(&mut out, &ctx);
    }
    out.push_str("</body>\n</html>\n");
    out
}

fn hex(c: Color) -> String {
    c.to_hex()
}

fn stylesheet(ctx: &Context) -> String {
    let faces = ctx.faces;
    let g = &ctx.book.geometry;
    let mut css = String::new();
    let _ = writeln!(
        css,
        "body {{ background: {}; color: {}; margin: 0; padding: 1em; font-family: monospace; }}",
        hex(faces.bg),
        hex(faces.fg)
    );
    let _ = writeln!(
        css,
        ".page {{ box-sizing: border-box; width: {w}px; min-height: {h}px; padding: {m}px; margin: 0 auto 2em auto; \
         line-height: {lh}px; box-shadow: 0 0 0.3em rgba(0, 0, 0, 0.2); }}",
        w = g.width_px.round(),
        h = g.height_px.round(),
        m = g.margin_px.round(),
        lh = g.row_height_px,
    );
    css.push_str(".preface {}\n");
    css.push_str(".row { white-space: pre; min-height: 1em; }\n");
    let _ = writeln!(
        css,
        ".margin {{ display: inline-block; width: {}ch; margin-right: {}ch; vertical-align: top; white-space: pre; \
         overflow: hidden; font-family: sans-serif; font-stretch: condensed; }}",
        g.comment_columns,
        if g.comment_columns > 0 { crate::layout::GUTTER } else { 0 },
    );
    css.push_str(".code { white-space: pre; }\n");
    css.push_str(".title { font-size: 1.6em; margin: 0 0 0.5em 0; }\n");
    css.push_str(".meta { margin: 0; }\n");
    css.push_str(".toc, .index { list-style: none; padding: 0; }\n");
    css.push_str(".entry { white-space: pre; }\n");
    css.push_str(".footer { text-align: center; margin-top: 1em; }\n");
    for spec in faces.iter() {
        let _ = write!(css, ".face-{} {{ color: {}; font-weight: {};", spec.name, hex(spec.fg), faces.ladder.weight(spec.weight));
        if let (Some(bg), false) = (spec.bg, spec.name == FaceName::Default) {
            let _ = write!(css, " background: {};", hex(bg));
        }
        css.push_str(" }\n");
    }
    for (i, c) in ctx.tints.iter().enumerate() {
        let _ = writeln!(css, ".tint-{i} {{ color: {}; }}", hex(*c));
    }
    css
}

/// XML text escaping (text content only; user text never lands in
/// attributes). C0 controls other than tab and line breaks are not
/// allowed in XML, so they show as their Unicode control pictures.
fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\t' | '\n' | '\r' => out.push(ch),
            c if (c as u32) < 0x20 => out.push(char::from_u32(0x2400 + c as u32).unwrap_or('\u{FFFD}')),
            '\u{7F}' => out.push('\u{2421}'),
            c => out.push(c),
        }
    }
    out
}

fn push_spans(out: &mut String, ctx: &Context, spans: &[StyledSpan], line: Option<u32>) {
    for span in spans {
        let text = escape(ctx.display(span));
        if ctx.is_blank(span) {
            out.push_str(&text);
            continue;
        }
        let style = ctx.style(span.face, line);
        match style.tint {
            Some(t) => {
                let _ = write!(out, "<span class=\"face-{} tint-{t}\">{text}</span>", span.face);
            }
            None => {
                let _ = write!(out, "<span class=\"face-{}\">{text}</span>", span.face);
            }
        }
    }
}

fn body_page(ctx: &Context, index: usize) -> String {
    let page = &ctx.book.pages[index];
    let mut out = String::new();
    let _ = writeln!(out, "<div class=\"page\" id=\"p{}\">", page.number);
    for (r, row) in page.rows.iter().enumerate() {
        out.push_str("<div class=\"row\"><span class=\"margin\">");
        push_spans(&mut out, ctx, &row.comment, row.comment_line);
        out.push_str("</span><span class=\"code\">");
        push_spans(&mut out, ctx, &row.code, ctx.row_lines[index][r]);
        out.push_str("</span></div>\n");
    }
    let _ = writeln!(out, "<div class=\"footer face-faded\">— {} —</div>\n</div>", page_label(page.number));
    out
}

fn preface(out: &mut String, ctx: &Context) {
    let book = ctx.book;
    let h = book.header();
    out.push_str("<div class=\"page preface\" id=\"contents\">\n");
    let _ = writeln!(out, "<h1 class=\"title face-strong\">{}</h1>", escape(&h.title));
    if let Some(b) = &h.branch {
        let _ = writeln!(out, "<p class=\"meta face-faded\">branch {}</p>", escape(b));
    }
    if let Some(c) = &h.commit {
        let _ = writeln!(out, "<p class=\"meta face-faded\">commit {}</p>", escape(c));
    }
    let _ = writeln!(
        out,
        "<p class=\"meta face-faded\">{} lines, {} definitions</p>",
        h.line_count, h.definition_count
    );
    if !book.toc.is_empty() {
        out.push_str("<ul class=\"toc\">\n");
        for e in &book.toc {
            let (name, dots, page) =
                leader_line(2 * e.item.depth as usize, &e.item.name, &e.page.to_string(), book.geometry.text_columns);
            let _ = writeln!(
                out,
                "<li class=\"entry\"><a class=\"face-default\" href=\"#p{p}\">{}</a><span class=\"face-faded\">{}</span><a class=\"face-default\" href=\"#p{p}\">{}</a></li>",
                escape(&name),
                escape(&dots),
                page,
                p = e.page,
            );
        }
        out.push_str("</ul>\n");
    }
    out.push_str("<div class=\"footer face-faded\">— contents —</div>\n</div>\n");
}

fn index_page(out: &mut String, ctx: &Context) {
    out.push_str("<div class=\"page\" id=\"index\">\n<h2 class=\"title face-strong\">Index</h2>\n<ul class=\"index\">\n");
    for e in &ctx.book.index {
        let _ = write!(out, "<li class=\"entry\"><span class=\"face-default\">{}</span> ", escape(&e.name));
        let links: Vec<String> =
            e.pages.iter().map(|p| format!("<a class=\"face-default\" href=\"#p{p}\">{p}</a>")).collect();
        out.push_str(&links.join(", "));
        out.push_str("</li>\n");
    }
    out.push_str("</ul>\n<div class=\"footer face-faded\">— index —</div>\n</div>\n");
}
