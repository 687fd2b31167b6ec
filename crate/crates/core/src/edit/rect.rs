//! Rectangle cut and paste. Lines and columns are 0-based and counted in
//! code points; lines are separated by `\n`.

use thiserror::Error;

use super::{Buffer, EditKind, EditRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RectError {
    #[error("line {line} is out of range (buffer has {lines} lines)")]
    LineOutOfRange { line: usize, lines: usize },
    #[error("rectangle corners are not ordered: ({0}, {1}) .. ({2}, {3})")]
    Unordered(usize, usize, usize, usize),
}

impl Buffer {
    /// Code-point offset of the start of each line.
    fn line_starts(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.text.iter().enumerate().filter(|(_, c)| **c == '\n').map(|(i, _)| i + 1))
            .collect()
    }

    fn line_len(&self, starts: &[usize], line: usize) -> usize {
        let end = starts.get(line + 1).map_or(self.text.len(), |next| next - 1);
        end - starts[line]
    }

    pub fn line_count(&self) -> usize {
        self.line_starts().len()
    }

    /// Removes the inclusive character rectangle and returns the removed
    /// text of each covered line (empty for lines too short to reach it).
    pub fn rect_cut(
        &mut self,
        (top, left): (usize, usize),
        (bottom, right): (usize, usize),
    ) -> Result<Vec<String>, RectError> {
        if top > bottom || left > right {
            return Err(RectError::Unordered(top, left, bottom, right));
        }
        let starts = self.line_starts();
        if bottom >= starts.len() {
            return Err(RectError::LineOutOfRange { line: bottom, lines: starts.len() });
        }
        self.undo_walk = None;
        let before = self.cursor;
        let mut removed = Vec::new();
        let mut records = Vec::new();
        // Bottom-up so earlier offsets stay valid.
        for line in (top..=bottom).rev() {
            let len = self.line_len(&starts, line);
            let (from, to) = (left.min(len), (right + 1).min(len));
            let offset = starts[line] + from;
            let text: String = self.text.drain(offset..starts[line] + to).collect();
            if !text.is_empty() {
                records.push(EditRecord {
                    kind: EditKind::Delete,
                    offset,
                    text: text.clone(),
                    cursor_before: before,
                    cursor_after: before,
                });
            }
            removed.push(text);
        }
        removed.reverse();
        self.cursor = self.clamp(starts[top] + left.min(self.line_len(&self.line_starts(), top)));
        self.finish_group(records);
        Ok(removed)
    }

    /// Inserts line `i` of `rect` at (`line + i`, `col`), padding short
    /// lines with spaces and appending lines past the end of the buffer.
    pub fn rect_paste(&mut self, (line, col): (usize, usize), rect: &[String]) -> Result<(), RectError> {
        let lines = self.line_count();
        if line >= lines {
            return Err(RectError::LineOutOfRange { line, lines });
        }
        self.undo_walk = None;
        let before = self.cursor;
        let mut records = Vec::new();
        let mut insert = |buf: &mut Buffer, offset: usize, text: String| {
            buf.text.splice(offset..offset, text.chars());
            records.push(EditRecord { kind: EditKind::Insert, offset, text, cursor_before: before, cursor_after: before });
        };
        for (i, piece) in rect.iter().enumerate() {
            if piece.is_empty() {
                continue;
            }
            let target = line + i;
            let mut starts = self.line_starts();
            if target >= starts.len() {
                let missing = target + 1 - starts.len();
                let end = self.text.len();
                insert(self, end, "\n".repeat(missing));
                starts = self.line_starts();
            }
            let len = self.line_len(&starts, target);
            if len < col {
                insert(self, starts[target] + len, " ".repeat(col - len));
            }
            insert(self, starts[target] + col, piece.clone());
        }
        self.cursor = self.clamp(before);
        self.finish_group(records);
        Ok(())
    }

    fn finish_group(&mut self, mut records: Vec<EditRecord>) {
        if let Some(last) = records.last_mut() {
            last.cursor_after = self.cursor;
        }
        self.record(records);
    }
}
