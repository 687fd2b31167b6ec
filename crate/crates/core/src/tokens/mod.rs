//! Lexical tokenization and structural extraction.
//!
//! Tokens tile the source exactly: every byte belongs to one token and the
//! concatenated token texts reproduce the input. Line breaks are always
//! their own whitespace token; strings and block comments may span lines.

mod comments;
mod lines;
pub mod rules;
mod structure;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use comments::{group_comments, CommentBlock, CommentKind};
pub use lines::{LineIndex, SourceLine};
pub use structure::{extract_structure, StructureItem, StructureKind};

use rules::{C_NON_TYPE_KEYWORDS, C_OPERATORS, PYTHON_OPERATORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Keyword,
    Identifier,
    DefName,
    String,
    Number,
    Operator,
    Punctuation,
    Comment,
    Whitespace,
    Text,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Keyword => "keyword",
            Category::Identifier => "identifier",
            Category::DefName => "def-name",
            Category::String => "string",
            Category::Number => "number",
            Category::Operator => "operator",
            Category::Punctuation => "punctuation",
            Category::Comment => "comment",
            Category::Whitespace => "whitespace",
            Category::Text => "text",
        }
    }

    /// Anything that is neither whitespace nor a comment.
    pub fn is_code(self) -> bool {
        !matches!(self, Category::Whitespace | Category::Comment)
    }
}

/// Byte range `[start, end)` into the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub category: Category,
    pub span: Span,
    /// 1-based line of the token's first byte.
    pub line: u32,
}

impl Token {
    pub fn text<'s>(&self, source: &'s str) -> &'s str {
        &source[self.span.range()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    PythonLike,
    CLike,
    Plain,
}

impl Language {
    /// Picks a language from a file extension (without the dot).
    pub fn from_extension(ext: &str) -> Language {
        match ext.to_ascii_lowercase().as_str() {
            "py" | "pyi" | "pyw" => Language::PythonLike,
            "c" | "h" | "cc" | "cpp" | "cxx" | "hpp" | "hh" | "js" | "mjs" | "cjs" | "ts"
            | "tsx" | "jsx" | "java" | "cs" | "go" | "rs" | "swift" | "kt" => Language::CLike,
            _ => Language::Plain,
        }
    }

    pub fn from_path(path: &std::path::Path) -> Language {
        path.extension()
            .and_then(|e| e.to_str())
            .map(Language::from_extension)
            .unwrap_or(Language::Plain)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Language::PythonLike => "python-like",
            Language::CLike => "c-like",
            Language::Plain => "plain",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "python-like" => Ok(Language::PythonLike),
            "c-like" => Ok(Language::CLike),
            "plain" => Ok(Language::Plain),
            other => Err(format!(
                "unknown language `{other}` (expected python-like, c-like or plain)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenizeError {
    #[error("input is not valid UTF-8 (first bad byte at offset {offset})")]
    InvalidUtf8 { offset: usize },
}

/// Tokenizes raw bytes, rejecting invalid UTF-8.
pub fn tokenize(source: &[u8], language: Language) -> Result<Vec<Token>, TokenizeError> {
    let text = std::str::from_utf8(source).map_err(|e| TokenizeError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(tokenize_str(text, language))
}

/// Tokenizes text that is already known to be valid UTF-8.
pub fn tokenize_str(source: &str, language: Language) -> Vec<Token> {
    let mut tokens = Lexer::new(source, language).run();
    match language {
        Language::PythonLike => mark_python_def_names(source, &mut tokens),
        Language::CLike => mark_c_def_names(source, &mut tokens),
        Language::Plain => {}
    }
    tokens
}

struct Lexer<'s> {
    src: &'s str,
    language: Language,
    pos: usize,
    line: u32,
    out: Vec<Token>,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str, language: Language) -> Self {
        Lexer { src, language, pos: 0, line: 1, out: Vec::new() }
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn emit(&mut self, category: Category, end: usize) {
        debug_assert!(end > self.pos);
        let span = Span::new(self.pos, end);
        self.out.push(Token { category, span, line: self.line });
        self.line += count_breaks(&self.src[span.range()]);
        self.pos = end;
    }

    /// End of the current line's content (before `\r\n` or `\n`).
    fn line_end(&self, from: usize) -> usize {
        let tail = &self.src[from..];
        match tail.find(['\n', '\r']) {
            Some(i) => from + i,
            None => self.src.len(),
        }
    }

    fn run(mut self) -> Vec<Token> {
        while let Some(c) = self.peek() {
            if c == '\n' {
                self.emit(Category::Whitespace, self.pos + 1);
            } else if c == '\r' {
                let len = if self.rest().starts_with("\r\n") { 2 } else { 1 };
                self.emit(Category::Whitespace, self.pos + len);
            } else if c.is_whitespace() {
                let end = self.scan_while(|ch| ch.is_whitespace() && ch != '\n' && ch != '\r');
                self.emit(Category::Whitespace, end);
            } else {
                match self.language {
                    Language::Plain => {
                        let end = self.scan_while(|ch| !ch.is_whitespace());
                        self.emit(Category::Text, end);
                    }
                    _ => self.code_token(c),
                }
            }
        }
        self.out
    }

    fn scan_while(&self, keep: impl Fn(char) -> bool) -> usize {
        let rest = self.rest();
        let len = rest.find(|ch: char| !keep(ch)).unwrap_or(rest.len());
        self.pos + len
    }

    fn code_token(&mut self, c: char) {
        let rest = self.rest();
        let python = self.language == Language::PythonLike;

        if python && c == '#' || !python && rest.starts_with("//") {
            let end = self.line_end(self.pos);
            self.emit(Category::Comment, end);
        } else if !python && rest.starts_with("/*") {
            let end = match rest[2..].find("*/") {
                Some(i) => self.pos + 2 + i + 2,
                None => self.src.len(),
            };
            self.emit(Category::Comment, end);
        } else if c == '"' || c == '\'' || (!python && c == '`') {
            let end = self.string_end(c);
            self.emit(Category::String, end);
        } else if c.is_ascii_digit() {
            let end = self.scan_while(|ch| ch.is_alphanumeric() || ch == '_' || ch == '.');
            self.emit(Category::Number, end);
        } else if c == '_' || c.is_alphabetic() {
            let end = self.scan_while(|ch| ch == '_' || ch.is_alphanumeric());
            let word = &self.src[self.pos..end];
            let keyword = if python {
                rules::is_python_keyword(word)
            } else {
                rules::is_c_keyword(word)
            };
            let category = if keyword { Category::Keyword } else { Category::Identifier };
            self.emit(category, end);
        } else {
            let table: &[&str] = if python { &PYTHON_OPERATORS } else { &C_OPERATORS };
            match rules::match_operator(table, rest) {
                Some(op) => self.emit(Category::Operator, self.pos + op.len()),
                None => self.emit(Category::Punctuation, self.pos + c.len_utf8()),
            }
        }
    }

    /// Strings honor backslash escapes. A single-quoted string that reaches
    /// the end of its line stops there; Python triple-quoted strings run
    /// until their closing delimiter or the end of input.
    fn string_end(&self, quote: char) -> usize {
        let rest = self.rest();
        if self.language == Language::PythonLike {
            let triple: String = std::iter::repeat_n(quote, 3).collect();
            if rest.starts_with(&triple) {
                return self.pos + 3 + scan_quoted(&rest[3..], &triple, true);
            }
        }
        // Template literals may span lines.
        let multiline = quote == '`';
        let closing = quote.to_string();
        self.pos + 1 + scan_quoted(&rest[1..], &closing, multiline)
    }
}

/// Number of line breaks (`\n`, `\r\n` or a lone `\r`) in `text`.
pub(crate) fn count_breaks(text: &str) -> u32 {
    let bytes = text.as_bytes();
    bytes
        .iter()
        .enumerate()
        .filter(|&(i, &b)| b == b'\n' || (b == b'\r' && bytes.get(i + 1) != Some(&b'\n')))
        .count() as u32
}

/// Returns the byte length of the string body plus its closing delimiter
/// (when found).
fn scan_quoted(body: &str, closing: &str, multiline: bool) -> usize {
    let mut chars = body.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        if ch == '\\' {
            match chars.peek() {
                Some(&(_, next)) if multiline || (next != '\n' && next != '\r') => {
                    chars.next();
                }
                _ => {}
            }
        } else if !multiline && (ch == '\n' || ch == '\r') {
            return i;
        } else if body[i..].starts_with(closing) {
            return i + closing.len();
        }
    }
    body.len()
}

fn significant(tokens: &[Token]) -> impl Iterator<Item = (usize, &Token)> {
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.category != Category::Whitespace && t.category != Category::Comment)
}

/// An identifier right after `def` or `class` names a definition.
fn mark_python_def_names(source: &str, tokens: &mut [Token]) {
    let mut prev: Option<usize> = None;
    let indices: Vec<usize> = significant(tokens).map(|(i, _)| i).collect();
    for i in indices {
        if let Some(p) = prev {
            let introducer = tokens[p].category == Category::Keyword
                && matches!(tokens[p].text(source), "def" | "class");
            if introducer && tokens[i].category == Category::Identifier && tokens[p].line == tokens[i].line {
                tokens[i].category = Category::DefName;
            }
        }
        prev = Some(i);
    }
}

/// C-like heuristic: at brace depth 0, an identifier that follows a
/// type-ish token (a type keyword, another identifier, or a `*` after one)
/// and is followed by `(` names a function. A parameter list closed by `;`
/// is a prototype, not a definition.
fn mark_c_def_names(source: &str, tokens: &mut [Token]) {
    let sig: Vec<usize> = significant(tokens).map(|(i, _)| i).collect();
    let text = |t: &Token| t.text(source);
    let is_typeish = |t: &Token| match t.category {
        Category::Identifier => true,
        Category::Keyword => !C_NON_TYPE_KEYWORDS.contains(&t.text(source)),
        _ => false,
    };

    let mut depth: i64 = 0;
    let mut marks = Vec::new();
    for (k, &i) in sig.iter().enumerate() {
        let tok = tokens[i];
        if tok.category == Category::Punctuation {
            match text(&tok) {
                "{" => depth += 1,
                "}" => depth = (depth - 1).max(0),
                _ => {}
            }
            continue;
        }
        if depth != 0 || tok.category != Category::Identifier || k == 0 {
            continue;
        }
        let Some(&next) = sig.get(k + 1) else { continue };
        if text(&tokens[next]) != "(" || tokens[next].line != tok.line {
            continue;
        }
        let prev = tokens[sig[k - 1]];
        let typed = if is_typeish(&prev) {
            true
        } else if prev.category == Category::Operator && matches!(text(&prev), "*" | "**" | "&") {
            k >= 2 && is_typeish(&tokens[sig[k - 2]])
        } else {
            false
        };
        if typed && !is_prototype(source, tokens, &sig, k + 1) {
            marks.push(i);
        }
    }
    for i in marks {
        tokens[i].category = Category::DefName;
    }
}

/// `open` indexes into `sig` at a `(`; true when the matching `)` is
/// followed by `;` or `,`.
fn is_prototype(source: &str, tokens: &[Token], sig: &[usize], open: usize) -> bool {
    let mut parens = 0i64;
    for (k, &i) in sig.iter().enumerate().skip(open) {
        match tokens[i].text(source) {
            "(" => parens += 1,
            ")" => {
                parens -= 1;
                if parens == 0 {
                    return sig
                        .get(k + 1)
                        .map(|&n| matches!(tokens[n].text(source), ";" | ","))
                        .unwrap_or(false);
                }
            }
            _ => {}
        }
    }
    false
}
