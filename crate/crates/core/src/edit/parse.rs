use std::fmt;

use thiserror::Error;

/// The three small-word motions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotionKind {
    /// `w`: start of the next word.
    Word,
    /// `b`: start of the current or previous word.
    Back,
    /// `e`: last character of the current or next word.
    End,
}

impl MotionKind {
    pub const ALL: [MotionKind; 3] = [MotionKind::Word, MotionKind::Back, MotionKind::End];

    pub fn key(self) -> char {
        match self {
            MotionKind::Word => 'w',
            MotionKind::Back => 'b',
            MotionKind::End => 'e',
        }
    }

    fn from_key(c: char) -> Option<Self> {
        match c {
            'w' => Some(MotionKind::Word),
            'b' => Some(MotionKind::Back),
            'e' => Some(MotionKind::End),
            _ => None,
        }
    }
}

/// One parsed keystroke command. Every count is at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Motion { kind: MotionKind, count: u32 },
    /// `d` with its motion; a count before and after `d` multiply.
    Delete { kind: MotionKind, count: u32 },
    PasteBefore { count: u32 },
    PasteAfter { count: u32 },
    Undo { count: u32 },
}

impl Command {
    pub fn count(self) -> u32 {
        match self {
            Command::Motion { count, .. }
            | Command::Delete { count, .. }
            | Command::PasteBefore { count }
            | Command::PasteAfter { count }
            | Command::Undo { count } => count,
        }
    }
}

impl fmt::Display for Command {
    /// Writes the canonical keystrokes, with the count omitted when it is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let count = self.count();
        let prefix = if count != 1 { count.to_string() } else { String::new() };
        match self {
            Command::Delete { kind, .. } => return write!(f, "d{prefix}{}", kind.key()),
            _ => f.write_str(&prefix)?,
        }
        match self {
            Command::Motion { kind, .. } | Command::Delete { kind, .. } => write!(f, "{}", kind.key()),
            Command::PasteBefore { .. } => f.write_str("P"),
            Command::PasteAfter { .. } => f.write_str("p"),
            Command::Undo { .. } => f.write_str("u"),
        }
    }
}

/// Counts (and products of counts) above this are rejected.
pub const MAX_COUNT: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script error at position {position}: {reason}")]
pub struct ParseError {
    /// 0-based character position; equals the script length when the
    /// script ends too early.
    pub position: usize,
    pub reason: &'static str,
}

/// Parses a keystroke script.
///
/// ```text
/// cmd := count? ('w'|'b'|'e'|'P'|'p'|'u') | count? 'd' count? ('w'|'b'|'e')
/// ```
pub fn parse_script(script: &str) -> Result<Vec<Command>, ParseError> {
    let chars: Vec<char> = script.chars().collect();
    let mut pos = 0;
    let mut commands = Vec::new();
    while pos < chars.len() {
        let outer = parse_count(&chars, &mut pos)?;
        let Some(&c) = chars.get(pos) else {
            return Err(ParseError { position: pos, reason: "count without a command" });
        };
        let here = pos;
        pos += 1;
        let command = match c {
            'P' => Command::PasteBefore { count: outer.unwrap_or(1) },
            'p' => Command::PasteAfter { count: outer.unwrap_or(1) },
            'u' => Command::Undo { count: outer.unwrap_or(1) },
            'd' => {
                let inner = parse_count(&chars, &mut pos)?;
                let Some(&m) = chars.get(pos) else {
                    return Err(ParseError { position: pos, reason: "`d` needs a motion" });
                };
                let kind = MotionKind::from_key(m)
                    .ok_or(ParseError { position: pos, reason: "`d` needs one of w, b, e" })?;
                pos += 1;
                let count = outer.unwrap_or(1) as u64 * inner.unwrap_or(1) as u64;
                if count > MAX_COUNT as u64 {
                    return Err(ParseError { position: here, reason: "count too large" });
                }
                Command::Delete { kind, count: count as u32 }
            }
            other => match MotionKind::from_key(other) {
                Some(kind) => Command::Motion { kind, count: outer.unwrap_or(1) },
                None => return Err(ParseError { position: here, reason: "unknown command" }),
            },
        };
        commands.push(command);
    }
    Ok(commands)
}

fn parse_count(chars: &[char], pos: &mut usize) -> Result<Option<u32>, ParseError> {
    let start = *pos;
    match chars.get(start) {
        Some('0') => return Err(ParseError { position: start, reason: "count may not start with 0" }),
        Some(c) if c.is_ascii_digit() => {}
        _ => return Ok(None),
    }
    let mut value: u32 = 0;
    while let Some(d) = chars.get(*pos).and_then(|c| c.to_digit(10)) {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(d))
            .filter(|&v| v <= MAX_COUNT)
            .ok_or(ParseError { position: start, reason: "count too large" })?;
        *pos += 1;
    }
    Ok(Some(value))
}
