//! Headless modal editing.
//!
//! A [`Buffer`] holds text as code points, a cursor, a bounded kill ring and
//! an append-only history. Scripts of vi-style keystrokes (`2wd2w3wP…`) are
//! parsed into [`Command`]s and applied one by one.
//!
//! Undo is recursive: undoing appends the inverse edit to the history like
//! any other edit, so once a non-undo command breaks a run of `u`s, the next
//! `u` undoes the undo.

mod motion;
mod parse;
mod rect;

use std::collections::VecDeque;

pub use motion::motion_target;
pub use parse::{parse_script, Command, MotionKind, ParseError, MAX_COUNT};
pub use rect::RectError;

pub const KILL_RING_CAPACITY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditKind {
    Insert,
    Delete,
}

/// One primitive text change, with enough context to invert it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditRecord {
    pub kind: EditKind,
    /// Code-point offset of the inserted or deleted text.
    pub offset: usize,
    pub text: String,
    pub cursor_before: usize,
    pub cursor_after: usize,
}

impl EditRecord {
    pub fn inverse(&self) -> EditRecord {
        EditRecord {
            kind: match self.kind {
                EditKind::Insert => EditKind::Delete,
                EditKind::Delete => EditKind::Insert,
            },
            offset: self.offset,
            text: self.text.clone(),
            cursor_before: self.cursor_after,
            cursor_after: self.cursor_before,
        }
    }
}

/// The records produced by one command; undone as a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Change {
    pub records: Vec<EditRecord>,
}

impl Change {
    fn inverse(&self) -> Change {
        Change { records: self.records.iter().rev().map(EditRecord::inverse).collect() }
    }
}

/// Why a command did nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditWarning {
    EmptyKillRing,
    NothingToUndo,
    NothingToDelete,
}

impl std::fmt::Display for EditWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EditWarning::EmptyKillRing => "paste with an empty kill ring",
            EditWarning::NothingToUndo => "undo history exhausted",
            EditWarning::NothingToDelete => "delete covered no text",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Buffer {
    text: Vec<char>,
    cursor: usize,
    kill_ring: VecDeque<String>,
    history: Vec<Change>,
    undo_walk: Option<usize>,
}

impl Buffer {
    pub fn new(text: &str) -> Self {
        Buffer { text: text.chars().collect(), ..Buffer::default() }
    }

    pub fn with_cursor(text: &str, cursor: usize) -> Self {
        let mut b = Buffer::new(text);
        b.cursor = b.clamp(cursor);
        b
    }

    pub fn text(&self) -> String {
        self.text.iter().collect()
    }

    pub fn chars(&self) -> &[char] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Newest entry first.
    pub fn kill_ring(&self) -> impl Iterator<Item = &str> {
        self.kill_ring.iter().map(String::as_str)
    }

    pub fn history(&self) -> &[Change] {
        &self.history
    }

    pub fn undo_walk(&self) -> Option<usize> {
        self.undo_walk
    }

    fn clamp(&self, pos: usize) -> usize {
        pos.min(self.text.len().saturating_sub(1))
    }

    /// Pushes onto the kill ring, evicting the oldest entry when full.
    pub fn kill(&mut self, text: String) {
        if self.kill_ring.len() == KILL_RING_CAPACITY {
            self.kill_ring.pop_back();
        }
        self.kill_ring.push_front(text);
    }

    /// Applies one command. A command that cannot do anything leaves the
    /// buffer untouched and reports why.
    pub fn apply(&mut self, command: Command) -> Option<EditWarning> {
        if !matches!(command, Command::Undo { .. }) {
            self.undo_walk = None;
        }
        match command {
            Command::Motion { kind, count } => {
                let target = motion_target(&self.text, self.cursor, kind, count);
                self.cursor = self.clamp(target);
                None
            }
            Command::Delete { kind, count } => self.delete(kind, count),
            Command::PasteBefore { count } => self.paste(count, false),
            Command::PasteAfter { count } => self.paste(count, true),
            Command::Undo { count } => {
                for _ in 0..count {
                    if let Some(w) = self.undo() {
                        return Some(w);
                    }
                }
                None
            }
        }
    }

    /// Parses and applies `script`, collecting warnings in order.
    pub fn apply_script(&mut self, script: &str) -> Result<Vec<EditWarning>, ParseError> {
        let commands = parse_script(script)?;
        Ok(commands.into_iter().filter_map(|c| self.apply(c)).collect())
    }

    fn delete(&mut self, kind: MotionKind, count: u32) -> Option<EditWarning> {
        if self.text.is_empty() {
            return Some(EditWarning::NothingToDelete);
        }
        let target = motion_target(&self.text, self.cursor, kind, count);
        let (start, end) = match kind {
            MotionKind::Word => (self.cursor, target),
            MotionKind::Back => (target, self.cursor),
            MotionKind::End => (self.cursor, (target + 1).min(self.text.len())),
        };
        if start >= end {
            return Some(EditWarning::NothingToDelete);
        }
        let removed: String = self.text[start..end].iter().collect();
        let before = self.cursor;
        self.text.drain(start..end);
        self.cursor = self.clamp(start);
        self.kill(removed.clone());
        self.record(vec![EditRecord {
            kind: EditKind::Delete,
            offset: start,
            text: removed,
            cursor_before: before,
            cursor_after: self.cursor,
        }]);
        None
    }

    fn paste(&mut self, count: u32, after: bool) -> Option<EditWarning> {
        let head = match self.kill_ring.front() {
            Some(h) if !h.is_empty() => h.repeat(count as usize),
            _ => return Some(EditWarning::EmptyKillRing),
        };
        let at = if after && !self.text.is_empty() { self.cursor + 1 } else { self.cursor };
        let inserted = head.chars().count();
        let before = self.cursor;
        self.text.splice(at..at, head.chars());
        self.cursor = at + inserted - 1;
        self.record(vec![EditRecord {
            kind: EditKind::Insert,
            offset: at,
            text: head,
            cursor_before: before,
            cursor_after: self.cursor,
        }]);
        None
    }

    fn undo(&mut self) -> Option<EditWarning> {
        let walk = self.undo_walk.unwrap_or(self.history.len());
        if walk == 0 {
            return Some(EditWarning::NothingToUndo);
        }
        let inverse = self.history[walk - 1].inverse();
        for r in &inverse.records {
            self.apply_record(r);
        }
        self.history.push(inverse);
        self.undo_walk = Some(walk - 1);
        None
    }

    fn apply_record(&mut self, r: &EditRecord) {
        match r.kind {
            EditKind::Insert => {
                self.text.splice(r.offset..r.offset, r.text.chars());
            }
            EditKind::Delete => {
                let n = r.text.chars().count();
                self.text.drain(r.offset..r.offset + n);
            }
        }
        self.cursor = self.clamp(r.cursor_after);
    }

    fn record(&mut self, records: Vec<EditRecord>) {
        if !records.is_empty() {
            self.history.push(Change { records });
        }
    }
}

/// Applies `script` to `text` with the cursor starting at `cursor`.
pub fn apply_script(text: &str, cursor: usize, script: &str) -> Result<Buffer, ParseError> {
    let mut buffer = Buffer::with_cursor(text, cursor);
    buffer.apply_script(script)?;
    Ok(buffer)
}
