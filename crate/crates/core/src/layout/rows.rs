use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::{compute_page_geometry, Document, LayoutConfig, LayoutError, PageGeometry, MIN_WRAP_WIDTH};
use crate::faces::{face_for_token, FaceName, Marker, TokenContext};
use crate::tokens::{Category, CommentKind, Span};

/// A run of display text with one face, cut from one token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StyledSpan {
    /// What is shown. Equal to the source slice unless tabs are expanded.
    pub text: String,
    pub face: FaceName,
    /// The source bytes this span stands for.
    pub source: Span,
    /// Index of the originating token.
    pub token: usize,
}

/// One visual row: an optional comment cell beside a code cell.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Row {
    pub comment: Vec<StyledSpan>,
    pub code: Vec<StyledSpan>,
    /// Source line whose code starts on this row; `None` for continuation
    /// and filler rows.
    pub source_line: Option<u32>,
    /// A wrapped piece of the line above.
    pub continuation: bool,
    /// Source line the comment cell text comes from.
    pub comment_line: Option<u32>,
    /// First row of a function or class definition.
    pub starts_definition: bool,
    /// Line terminator that ends this row in the source.
    pub terminator: Option<Span>,
    /// Source bytes accounted to this row but not shown: indentation of
    /// moved comments, the gap before a detached trailing comment, and the
    /// terminators of comment-only lines.
    pub elided: Vec<Span>,
}

impl Row {
    pub fn code_text(&self) -> String {
        self.code.iter().map(|s| s.text.as_str()).collect()
    }

    pub fn comment_text(&self) -> String {
        self.comment.iter().map(|s| s.text.as_str()).collect()
    }

    pub fn code_width(&self) -> usize {
        self.code.iter().map(|s| s.text.chars().count()).sum()
    }

    fn spans(&self) -> impl Iterator<Item = Span> + '_ {
        self.code
            .iter()
            .chain(&self.comment)
            .map(|s| s.source)
            .chain(self.elided.iter().copied())
            .chain(self.terminator)
    }
}

/// Reassembles the source from rows: every byte must be claimed by exactly
/// one span, cell, elision or terminator.
pub fn reconstruct(source: &str, rows: &[Row]) -> String {
    let mut spans: Vec<Span> = rows.iter().flat_map(Row::spans).filter(|s| !s.is_empty()).collect();
    spans.sort_by_key(|s| (s.start, s.end));
    spans.iter().map(|s| &source[s.range()]).collect()
}

/// Hard-wraps `line` into rows of at most `width` characters.
pub fn wrap_long_line(line: &str, width: usize) -> Result<Vec<String>, LayoutError> {
    if width < MIN_WRAP_WIDTH {
        return Err(LayoutError::WrapTooNarrow(width));
    }
    let chars: Vec<char> = line.chars().collect();
    if chars.is_empty() {
        return Ok(vec![String::new()]);
    }
    Ok(chars.chunks(width).map(|c| c.iter().collect()).collect())
}

/// Builds rows with the geometry implied by `cfg`.
pub fn build_rows(doc: &Document, cfg: &LayoutConfig) -> Result<Vec<Row>, LayoutError> {
    let geom = compute_page_geometry(cfg)?;
    Ok(split_comment_column(doc, &geom, cfg))
}

/// Lays the document out as rows. With a comment column, full-line comment
/// blocks move into the comment cell starting at the row of the line they
/// annotate, and single-line trailing comments move beside their code. When
/// a block has not finished by the time the next one must start, filler
/// rows push the code down. Without a comment column every source line
/// becomes one row (plus continuations when wrapping).
pub fn split_comment_column(doc: &Document, geom: &PageGeometry, cfg: &LayoutConfig) -> Vec<Row> {
    let styler = Styler::new(doc, cfg.tab_width);
    let code_width = cfg.wrap.then_some(geom.code_columns.max(MIN_WRAP_WIDTH));
    let defs: HashSet<u32> = doc
        .structure
        .iter()
        .filter(|s| s.kind.is_definition())
        .map(|s| s.line)
        .collect();

    if geom.comment_columns == 0 {
        let mut rows = Vec::with_capacity(doc.lines.len());
        for line in doc.lines.lines() {
            let units = styler.units(line.content);
            push_code_rows(&mut rows, &styler, &units, code_width, line.number, &defs, line.terminator);
        }
        return rows;
    }

    let comment_width = geom.comment_columns;
    let mut comment_only: HashSet<u32> = HashSet::new();
    let mut anchored: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut detached: HashMap<u32, usize> = HashMap::new();
    for (b, block) in doc.blocks.iter().enumerate() {
        match block.kind {
            CommentKind::Leading | CommentKind::Header => {
                comment_only.extend(block.lines());
                let anchor = block.anchor_line.unwrap_or(block.last_line + 1);
                anchored.entry(anchor).or_default().push(b);
            }
            CommentKind::Trailing if block.first_line == block.last_line => {
                if let Some(t) = doc.token_at(block.tokens[0].span.start) {
                    detached.insert(block.first_line, t);
                }
            }
            CommentKind::Trailing => {}
        }
    }

    let block_pieces = |b: usize| -> Vec<CommentPiece> {
        let block = &doc.blocks[b];
        let mut pieces = Vec::new();
        for n in block.lines() {
            let Some(line) = doc.lines.get(n) else { continue };
            let units = styler.units(line.content);
            let (lead, rest) = split_leading_blank(&units);
            let (body, trail) = split_trailing_blank(rest);
            let mut elided = merge_units(lead);
            elided.extend(merge_units(trail));
            elided.extend((!line.terminator.is_empty()).then_some(line.terminator));
            push_pieces(&mut pieces, &styler, body, comment_width, n, elided);
        }
        pieces
    };

    let mut rows = Vec::new();
    let mut queue: VecDeque<CommentPiece> = VecDeque::new();
    let flush = |rows: &mut Vec<Row>, queue: &mut VecDeque<CommentPiece>| {
        rows.extend(queue.drain(..).map(|p| p.into_row(Row::default())));
    };

    for line in doc.lines.lines() {
        let n = line.number;
        if comment_only.contains(&n) {
            continue;
        }
        let is_anchor = match anchored.get(&n) {
            Some(blocks) => {
                flush(&mut rows, &mut queue);
                for &b in blocks {
                    queue.extend(block_pieces(b));
                }
                true
            }
            None => false,
        };

        let units = styler.units(line.content);
        let mut gap = Vec::new();
        let code_units = match detached.get(&n).and_then(|&t| detach(&units, t)) {
            Some((code, gap_units, comment, tail)) => {
                if !is_anchor {
                    flush(&mut rows, &mut queue);
                }
                gap = merge_units(gap_units);
                let mut tail_spans = merge_units(tail);
                // The tail rides with the first comment piece, beside the code.
                let mut pieces = Vec::new();
                push_pieces(&mut pieces, &styler, comment, comment_width, n, Vec::new());
                if let Some(first) = pieces.first_mut() {
                    first.elided.append(&mut tail_spans);
                }
                queue.extend(pieces);
                code
            }
            None => &units[..],
        };

        let start = rows.len();
        push_code_rows(&mut rows, &styler, code_units, code_width, n, &defs, line.terminator);
        rows[start].elided.extend(gap);
        for row in &mut rows[start..] {
            if let Some(piece) = queue.pop_front() {
                *row = piece.into_row(std::mem::take(row));
            }
        }
    }
    flush(&mut rows, &mut queue);
    let last = doc.lines.len() as u32;
    for blocks in anchored.range(last + 1..).map(|(_, b)| b) {
        for &b in blocks {
            queue.extend(block_pieces(b));
        }
        flush(&mut rows, &mut queue);
    }
    rows
}

fn push_code_rows(
    rows: &mut Vec<Row>,
    styler: &Styler,
    units: &[Unit],
    width: Option<usize>,
    line: u32,
    defs: &HashSet<u32>,
    terminator: Span,
) {
    let chunks = styler.chunk(units, width);
    let count = chunks.len();
    for (i, code) in chunks.into_iter().enumerate() {
        rows.push(Row {
            code,
            source_line: (i == 0).then_some(line),
            continuation: i > 0,
            starts_definition: i == 0 && defs.contains(&line),
            terminator: (i + 1 == count && !terminator.is_empty()).then_some(terminator),
            ..Row::default()
        });
    }
}

struct CommentPiece {
    spans: Vec<StyledSpan>,
    elided: Vec<Span>,
    line: u32,
}

impl CommentPiece {
    fn into_row(self, mut row: Row) -> Row {
        row.comment = self.spans;
        row.comment_line = Some(self.line);
        row.elided.extend(self.elided);
        row
    }
}

fn push_pieces(out: &mut Vec<CommentPiece>, styler: &Styler, units: &[Unit], width: usize, line: u32, elided: Vec<Span>) {
    let mut elided = Some(elided);
    for spans in styler.chunk(units, Some(width)) {
        out.push(CommentPiece { spans, elided: elided.take().unwrap_or_default(), line });
    }
}

/// Code, gap, comment and tail of a line with a detached comment.
type Detached<'a> = (&'a [Unit], &'a [Unit], &'a [Unit], &'a [Unit]);

/// Splits a line holding a detached trailing comment at token `t` into
/// (code, gap before the comment, comment, blank tail). `None` when code
/// follows the comment on the same line.
fn detach(units: &[Unit], t: usize) -> Option<Detached<'_>> {
    let start = units.iter().position(|u| u.token == t)?;
    let end = start + units[start..].iter().take_while(|u| u.token == t).count();
    let (before, rest) = units.split_at(start);
    let (comment, tail) = rest.split_at(end - start);
    if tail.iter().any(|u| !u.blank) {
        return None;
    }
    let (code, gap) = split_trailing_blank(before);
    Some((code, gap, comment, tail))
}

fn split_leading_blank(units: &[Unit]) -> (&[Unit], &[Unit]) {
    units.split_at(units.iter().take_while(|u| u.blank).count())
}

fn split_trailing_blank(units: &[Unit]) -> (&[Unit], &[Unit]) {
    units.split_at(units.len() - units.iter().rev().take_while(|u| u.blank).count())
}

/// Source spans covered by `units`, merged where contiguous.
fn merge_units(units: &[Unit]) -> Vec<Span> {
    let mut out: Vec<Span> = Vec::new();
    for u in units {
        let s = Span::new(u.offset, u.offset + u.ch.len_utf8());
        match out.last_mut() {
            Some(last) if last.end == s.start => last.end = s.end,
            _ => out.push(s),
        }
    }
    out
}

/// One source character with its face.
#[derive(Debug, Clone, Copy)]
struct Unit {
    ch: char,
    offset: usize,
    face: FaceName,
    token: usize,
    /// Part of a whitespace token.
    blank: bool,
}

struct Styler<'d> {
    doc: &'d Document,
    tab_width: usize,
    /// Byte ranges of TODO/FIXME markers inside comments.
    markers: Vec<Span>,
}

impl<'d> Styler<'d> {
    fn new(doc: &'d Document, tab_width: usize) -> Self {
        let markers = doc
            .tokens
            .iter()
            .filter(|t| t.category == Category::Comment)
            .flat_map(|t| marker_spans(t.text(&doc.source), t.span.start))
            .collect();
        Styler { doc, tab_width, markers }
    }

    fn face_at(&self, category: Category, offset: usize) -> FaceName {
        let in_marker = |m: &Span| m.start <= offset && offset < m.end;
        let marker = if category == Category::Comment && self.markers.iter().any(in_marker) {
            Some(Marker::Todo)
        } else {
            None
        };
        face_for_token(category, TokenContext { in_header: false, marker })
    }

    fn units(&self, range: Span) -> Vec<Unit> {
        let tokens = &self.doc.tokens;
        let first = tokens.partition_point(|t| t.span.end <= range.start);
        let mut out = Vec::with_capacity(range.len());
        for (i, t) in tokens.iter().enumerate().skip(first) {
            if t.span.start >= range.end {
                break;
            }
            let (lo, hi) = (t.span.start.max(range.start), t.span.end.min(range.end));
            for (k, ch) in self.doc.source[lo..hi].char_indices() {
                let offset = lo + k;
                out.push(Unit {
                    ch,
                    offset,
                    face: self.face_at(t.category, offset),
                    token: i,
                    blank: t.category == Category::Whitespace,
                });
            }
        }
        out
    }

    /// Packs units into rows no wider than `width` display cells (unbounded
    /// when `None`). Always yields at least one row.
    fn chunk(&self, units: &[Unit], width: Option<usize>) -> Vec<Vec<StyledSpan>> {
        let mut rows = vec![Vec::<StyledSpan>::new()];
        let mut col = 0;
        for u in units {
            let cells = match (u.ch, self.tab_width) {
                ('\t', tw) if tw > 0 => tw - col % tw,
                _ => 1,
            };
            if let Some(w) = width {
                if col > 0 && col + cells > w {
                    rows.push(Vec::new());
                    col = 0;
                }
            }
            let display_cells = match (u.ch, self.tab_width) {
                ('\t', tw) if tw > 0 => tw - col % tw,
                _ => cells,
            };
            col += display_cells;
            let row = rows.last_mut().expect("at least one row");
            let end = u.offset + u.ch.len_utf8();
            match row.last_mut() {
                Some(s) if s.token == u.token && s.face == u.face && s.source.end == u.offset => {
                    push_display(&mut s.text, u.ch, display_cells, self.tab_width);
                    s.source.end = end;
                }
                _ => {
                    let mut text = String::new();
                    push_display(&mut text, u.ch, display_cells, self.tab_width);
                    row.push(StyledSpan { text, face: u.face, source: Span::new(u.offset, end), token: u.token });
                }
            }
        }
        rows
    }
}

fn push_display(text: &mut String, ch: char, cells: usize, tab_width: usize) {
    if ch == '\t' && tab_width > 0 {
        text.extend(std::iter::repeat_n(' ', cells));
    } else {
        text.push(ch);
    }
}

/// Whole-word TODO/FIXME occurrences in a comment, as absolute byte spans.
fn marker_spans(text: &str, base: usize) -> Vec<Span> {
    let word = |c: char| c.is_alphanumeric() || c == '_';
    let mut out = Vec::new();
    for m in Marker::ALL {
        let needle = m.as_str();
        for (i, _) in text.match_indices(needle) {
            let before = text[..i].chars().next_back();
            let after = text[i + needle.len()..].chars().next();
            if !before.is_some_and(word) && !after.is_some_and(word) {
                out.push(Span::new(base + i, base + i + needle.len()));
            }
        }
    }
    out
}
