use super::Span;

/// One physical source line: its content and its terminator (`\n`, `\r\n`,
/// a lone `\r`, or nothing on an unterminated last line).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceLine {
    pub number: u32,
    pub content: Span,
    pub terminator: Span,
}

impl SourceLine {
    pub fn full(&self) -> Span {
        Span::new(self.content.start, self.terminator.end)
    }
}

/// Line table for a source text. An empty source has no lines; a trailing
/// terminator does not open a new (empty) line.
#[derive(Debug, Clone, Default)]
pub struct LineIndex {
    lines: Vec<SourceLine>,
}

impl LineIndex {
    pub fn new(source: &str) -> Self {
        let bytes = source.as_bytes();
        let mut lines = Vec::new();
        let mut start = 0;
        let mut i = 0;
        while i < bytes.len() {
            let term_len = match bytes[i] {
                b'\n' => 1,
                b'\r' if bytes.get(i + 1) == Some(&b'\n') => 2,
                b'\r' => 1,
                _ => 0,
            };
            if term_len > 0 {
                lines.push(SourceLine {
                    number: lines.len() as u32 + 1,
                    content: Span::new(start, i),
                    terminator: Span::new(i, i + term_len),
                });
                i += term_len;
                start = i;
            } else {
                i += 1;
            }
        }
        if start < bytes.len() {
            lines.push(SourceLine {
                number: lines.len() as u32 + 1,
                content: Span::new(start, bytes.len()),
                terminator: Span::new(bytes.len(), bytes.len()),
            });
        }
        LineIndex { lines }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[SourceLine] {
        &self.lines
    }

    /// 1-based lookup.
    pub fn get(&self, number: u32) -> Option<&SourceLine> {
        (number as usize).checked_sub(1).and_then(|i| self.lines.get(i))
    }

    /// 1-based line containing byte `offset`.
    pub fn line_of(&self, offset: usize) -> u32 {
        let idx = self.lines.partition_point(|l| l.terminator.end <= offset);
        (idx.min(self.lines.len().saturating_sub(1)) + 1) as u32
    }
}
