use super::{Category, LineIndex, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommentKind {
    /// Full-line comments immediately above the line they annotate.
    Leading,
    /// A single comment sharing its line with code.
    Trailing,
    /// Full-line comments that open the file at line 1.
    Header,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentBlock {
    pub kind: CommentKind,
    pub tokens: Vec<Token>,
    /// Line the block annotates. For a leading block this is the line right
    /// after the block (it may be blank, or one past the end of the file);
    /// for a trailing block it is the comment's own line; headers have none.
    pub anchor_line: Option<u32>,
    pub first_line: u32,
    pub last_line: u32,
}

impl CommentBlock {
    pub fn lines(&self) -> std::ops::RangeInclusive<u32> {
        self.first_line..=self.last_line
    }
}

/// Classifies every comment token into exactly one block.
pub fn group_comments(source: &str, tokens: &[Token]) -> Vec<CommentBlock> {
    let index = LineIndex::new(source);
    let end_line = |t: &Token| {
        if t.span.is_empty() {
            t.line
        } else {
            index.line_of(t.span.end - 1)
        }
    };

    let mut code_lines = vec![false; index.len() + 2];
    for t in tokens.iter().filter(|t| t.category.is_code()) {
        for line in t.line..=end_line(t) {
            code_lines[line as usize] = true;
        }
    }

    let mut blocks: Vec<CommentBlock> = Vec::new();
    let mut group: Option<CommentBlock> = None;

    for t in tokens.iter().filter(|t| t.category == Category::Comment) {
        let (first, last) = (t.line, end_line(t));
        if (first..=last).any(|l| code_lines[l as usize]) {
            blocks.extend(group.take().map(finish));
            blocks.push(CommentBlock {
                kind: CommentKind::Trailing,
                tokens: vec![*t],
                anchor_line: Some(first),
                first_line: first,
                last_line: last,
            });
            continue;
        }
        match group.as_mut() {
            Some(g) if first <= g.last_line + 1 => {
                g.tokens.push(*t);
                g.last_line = g.last_line.max(last);
            }
            _ => {
                blocks.extend(group.take().map(finish));
                group = Some(CommentBlock {
                    kind: CommentKind::Leading,
                    tokens: vec![*t],
                    anchor_line: None,
                    first_line: first,
                    last_line: last,
                });
            }
        }
    }
    blocks.extend(group.map(finish));
    blocks
}

fn finish(mut block: CommentBlock) -> CommentBlock {
    if block.first_line == 1 {
        block.kind = CommentKind::Header;
        block.anchor_line = None;
    } else {
        block.anchor_line = Some(block.last_line + 1);
    }
    block
}
