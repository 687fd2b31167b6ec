//! Small-word motions: a word is a maximal run of word characters (letters,
//! digits, underscore) or of other non-blank characters. Whitespace,
//! newlines included, only separates words.

use super::MotionKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Blank,
    Word,
    Punct,
}

fn class(c: char) -> Class {
    if c.is_whitespace() {
        Class::Blank
    } else if c.is_alphanumeric() || c == '_' {
        Class::Word
    } else {
        Class::Punct
    }
}

/// Where `count` repetitions of `kind` from `cursor` land. `w` may return
/// `text.len()` when it runs off the end; everything else stays in bounds.
pub fn motion_target(text: &[char], cursor: usize, kind: MotionKind, count: u32) -> usize {
    if text.is_empty() {
        return 0;
    }
    let mut pos = cursor.min(text.len() - 1);
    for _ in 0..count {
        let next = match kind {
            MotionKind::Word => next_word_start(text, pos),
            MotionKind::Back => prev_word_start(text, pos),
            MotionKind::End => next_word_end(text, pos),
        };
        if next == pos {
            break;
        }
        pos = next;
    }
    pos
}

fn next_word_start(text: &[char], pos: usize) -> usize {
    let len = text.len();
    if pos >= len {
        return len;
    }
    let mut p = pos;
    let start = class(text[p]);
    if start != Class::Blank {
        while p < len && class(text[p]) == start {
            p += 1;
        }
    }
    while p < len && class(text[p]) == Class::Blank {
        p += 1;
    }
    p
}

fn prev_word_start(text: &[char], pos: usize) -> usize {
    if pos == 0 {
        return 0;
    }
    let mut p = pos.min(text.len()) - 1;
    while p > 0 && class(text[p]) == Class::Blank {
        p -= 1;
    }
    let c = class(text[p]);
    while p > 0 && class(text[p - 1]) == c {
        p -= 1;
    }
    p
}

fn next_word_end(text: &[char], pos: usize) -> usize {
    let last = text.len() - 1;
    if pos >= last {
        return last;
    }
    let mut p = pos + 1;
    while p < last && class(text[p]) == Class::Blank {
        p += 1;
    }
    let c = class(text[p]);
    while p < last && class(text[p + 1]) == c {
        p += 1;
    }
    p
}
