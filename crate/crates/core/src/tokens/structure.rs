use super::{Category, Language, LineIndex, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Function,
    Class,
    SectionComment,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Function => "function",
            StructureKind::Class => "class",
            StructureKind::SectionComment => "section",
        }
    }

    pub fn is_definition(self) -> bool {
        !matches!(self, StructureKind::SectionComment)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureItem {
    pub kind: StructureKind,
    pub name: String,
    pub line: u32,
    pub depth: u32,
}

const TAB_WIDTH: u32 = 4;

/// What starts each physical line.
struct LineView<'t> {
    /// Tokens that begin on this line.
    tokens: Vec<&'t Token>,
    /// A token from an earlier line (multi-line string or comment) runs
    /// into this one.
    continued: bool,
}

impl LineView<'_> {
    fn significant(&self) -> impl Iterator<Item = &&Token> {
        self.tokens.iter().filter(|t| t.category != Category::Whitespace)
    }

    fn is_blank(&self) -> bool {
        !self.continued && self.significant().next().is_none()
    }

    fn indent(&self, source: &str) -> u32 {
        match self.tokens.first() {
            Some(t) if t.category == Category::Whitespace => t
                .text(source)
                .chars()
                .filter(|c| *c != '\n' && *c != '\r')
                .map(|c| if c == '\t' { TAB_WIDTH } else { 1 })
                .sum(),
            _ => 0,
        }
    }
}

fn line_views<'t>(source: &str, tokens: &'t [Token]) -> Vec<LineView<'t>> {
    let index = LineIndex::new(source);
    let mut views: Vec<LineView<'t>> = (0..index.len())
        .map(|_| LineView { tokens: Vec::new(), continued: false })
        .collect();
    for t in tokens {
        let first = t.line as usize;
        if let Some(v) = views.get_mut(first - 1) {
            v.tokens.push(t);
        }
        if t.span.len() > 1 {
            let last = index.line_of(t.span.end - 1) as usize;
            for v in views.iter_mut().take(last).skip(first) {
                v.continued = true;
            }
        }
    }
    views
}

/// Banner text of a single-line comment, or `None` when nothing is left
/// after removing the comment leader and decoration.
fn banner_text(comment: &str) -> Option<String> {
    let body = if let Some(rest) = comment.strip_prefix("/*") {
        rest.strip_suffix("*/").unwrap_or(rest)
    } else {
        comment.trim_start_matches(['#', '/'])
    };
    let name = body.trim_matches(|c: char| c.is_whitespace() || "-=*#/~".contains(c));
    (!name.is_empty()).then(|| name.to_string())
}

pub fn extract_structure(source: &str, tokens: &[Token], language: Language) -> Vec<StructureItem> {
    let views = line_views(source, tokens);
    let mut items = match language {
        Language::PythonLike => python_items(source, &views),
        Language::CLike => c_items(source, &views, tokens),
        Language::Plain => Vec::new(),
    };
    items.sort_by_key(|i| i.line);
    items.dedup_by_key(|i| i.line);
    items
}

fn python_definition(source: &str, view: &LineView) -> Option<(StructureKind, String)> {
    if view.continued {
        return None;
    }
    let mut sig = view.significant();
    let mut first = sig.next()?;
    if first.category == Category::Keyword && first.text(source) == "async" {
        first = sig.next()?;
    }
    let kind = match (first.category, first.text(source)) {
        (Category::Keyword, "def") => StructureKind::Function,
        (Category::Keyword, "class") => StructureKind::Class,
        _ => return None,
    };
    let name = sig.next().filter(|t| t.category == Category::DefName)?;
    Some((kind, name.text(source).to_string()))
}

fn lone_comment<'a>(source: &'a str, view: &LineView) -> Option<&'a str> {
    if view.continued {
        return None;
    }
    let mut sig = view.significant();
    let t = sig.next()?;
    if t.category != Category::Comment || sig.next().is_some() {
        return None;
    }
    let text = t.text(source);
    (!text.contains(['\n', '\r'])).then_some(text)
}

fn python_items(source: &str, views: &[LineView]) -> Vec<StructureItem> {
    let mut items = Vec::new();
    // (indent, depth) of definitions that may enclose later lines.
    let mut open: Vec<(u32, u32)> = Vec::new();

    for (i, view) in views.iter().enumerate() {
        let line = i as u32 + 1;
        let indent = view.indent(source);
        if let Some((kind, name)) = python_definition(source, view) {
            while open.last().is_some_and(|&(ind, _)| ind >= indent) {
                open.pop();
            }
            let depth = open.len() as u32;
            open.push((indent, depth));
            items.push(StructureItem { kind, name, line, depth });
        } else if let Some(comment) = lone_comment(source, view) {
            let followed = views
                .get(i + 1)
                .is_some_and(|next| next.is_blank() || python_definition(source, next).is_some());
            if let (true, Some(name)) = (followed, banner_text(comment)) {
                let depth = open.iter().filter(|&&(ind, _)| ind < indent).count() as u32;
                items.push(StructureItem { kind: StructureKind::SectionComment, name, line, depth });
            }
        }
    }
    items
}

fn c_items(source: &str, views: &[LineView], tokens: &[Token]) -> Vec<StructureItem> {
    let mut items = Vec::new();
    let sig: Vec<&Token> = tokens
        .iter()
        .filter(|t| t.category != Category::Whitespace && t.category != Category::Comment)
        .collect();

    let mut depth = 0i64;
    // Brace depth in effect at the start of each line.
    let mut line_depth = vec![0i64; views.len() + 1];
    let mut next_line = 1usize;
    for (k, t) in sig.iter().enumerate() {
        while next_line <= t.line as usize && next_line < line_depth.len() {
            line_depth[next_line] = depth;
            next_line += 1;
        }
        match (t.category, t.text(source)) {
            (Category::Punctuation, "{") => depth += 1,
            (Category::Punctuation, "}") => depth = (depth - 1).max(0),
            (Category::DefName, name) => items.push(StructureItem {
                kind: StructureKind::Function,
                name: name.to_string(),
                line: t.line,
                depth: 0,
            }),
            (Category::Keyword, "struct" | "union" | "enum") if depth == 0 => {
                let named = sig.get(k + 1).filter(|n| n.category == Category::Identifier);
                let opens = sig.get(k + 2).is_some_and(|n| n.text(source) == "{");
                if let (Some(name), true) = (named, opens) {
                    items.push(StructureItem {
                        kind: StructureKind::Class,
                        name: name.text(source).to_string(),
                        line: t.line,
                        depth: 0,
                    });
                }
            }
            _ => {}
        }
    }
    while next_line < line_depth.len() {
        line_depth[next_line] = depth;
        next_line += 1;
    }

    let def_lines: std::collections::HashSet<u32> = items.iter().map(|i| i.line).collect();
    for (i, view) in views.iter().enumerate() {
        let line = i as u32 + 1;
        if line_depth[line as usize] != 0 {
            continue;
        }
        let Some(comment) = lone_comment(source, view) else { continue };
        let followed = views
            .get(i + 1)
            .is_some_and(|next| next.is_blank() || def_lines.contains(&(line + 1)));
        if let (true, Some(name)) = (followed, banner_text(comment)) {
            items.push(StructureItem { kind: StructureKind::SectionComment, name, line, depth: 0 });
        }
    }
    items
}
