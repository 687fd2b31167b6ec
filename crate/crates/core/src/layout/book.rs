use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{compute_page_geometry, paginate, split_comment_column, LayoutConfig, LayoutError, Page, PageGeometry};
use crate::tokens::{
    extract_structure, group_comments, tokenize, tokenize_str, Category, CommentBlock, Language, LineIndex,
    StructureItem, Token, TokenizeError,
};

/// A tokenized source file with its structure and comment blocks.
#[derive(Debug, Clone)]
pub struct Document {
    pub title: String,
    pub source: String,
    pub language: Language,
    pub tokens: Vec<Token>,
    pub lines: LineIndex,
    pub blocks: Vec<CommentBlock>,
    pub structure: Vec<StructureItem>,
}

impl Document {
    pub fn new(title: impl Into<String>, source: impl Into<String>, language: Language) -> Self {
        let source = source.into();
        let tokens = tokenize_str(&source, language);
        Self::assemble(title.into(), source, language, tokens)
    }

    pub fn from_bytes(title: impl Into<String>, bytes: &[u8], language: Language) -> Result<Self, TokenizeError> {
        let tokens = tokenize(bytes, language)?;
        let source = String::from_utf8(bytes.to_vec()).expect("tokenize validated UTF-8");
        Ok(Self::assemble(title.into(), source, language, tokens))
    }

    fn assemble(title: String, source: String, language: Language, tokens: Vec<Token>) -> Self {
        let lines = LineIndex::new(&source);
        let blocks = group_comments(&source, &tokens);
        let structure = extract_structure(&source, &tokens, language);
        Document { title, source, language, tokens, lines, blocks, structure }
    }

    /// Index of the token starting exactly at byte `offset`.
    pub fn token_at(&self, offset: usize) -> Option<usize> {
        self.tokens.binary_search_by_key(&offset, |t| t.span.start).ok()
    }

    pub fn token_text(&self, index: usize) -> &str {
        self.tokens[index].text(&self.source)
    }
}

/// The preface: title plus contextual information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaderBlock {
    pub title: String,
    pub branch: Option<String>,
    pub commit: Option<String>,
    pub line_count: usize,
    pub definition_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TocEntry {
    pub item: StructureItem,
    pub page: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub name: String,
    pub pages: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct Book {
    pub document: Document,
    /// Page 0, carrying the header block; its rows are empty.
    pub preface: Page,
    pub toc: Vec<TocEntry>,
    pub pages: Vec<Page>,
    /// Sorted by name; names are unique.
    pub index: Vec<IndexEntry>,
    pub geometry: PageGeometry,
}

impl Book {
    pub fn header(&self) -> &HeaderBlock {
        self.preface.header.as_ref().expect("preface carries the header")
    }

    /// Page holding `line`, either as code or as comment-cell text.
    pub fn page_of_line(&self, line: u32) -> Option<u32> {
        self.pages
            .iter()
            .find(|p| p.rows.iter().any(|r| r.source_line == Some(line) || r.comment_line == Some(line)))
            .map(|p| p.number)
    }
}

/// Lays out, paginates, and indexes one document.
pub fn build_book(
    doc: Document,
    cfg: &LayoutConfig,
    branch: Option<&str>,
    commit: Option<&str>,
) -> Result<Book, LayoutError> {
    let geometry = compute_page_geometry(cfg)?;
    let rows = split_comment_column(&doc, &geometry, cfg);
    let pages = paginate(rows, &geometry);

    let toc = doc
        .structure
        .iter()
        .map(|item| {
            let page = pages
                .iter()
                .find(|p| p.rows.iter().any(|r| r.source_line == Some(item.line) || r.comment_line == Some(item.line)))
                .or(pages.last())
                .map_or(1, |p| p.number);
            TocEntry { item: item.clone(), page }
        })
        .collect();

    let names: BTreeSet<&str> = doc
        .structure
        .iter()
        .filter(|s| s.kind.is_definition())
        .map(|s| s.name.as_str())
        .collect();
    let mut token_page: HashMap<usize, u32> = HashMap::new();
    for page in &pages {
        for span in page.rows.iter().flat_map(|r| &r.code) {
            token_page.entry(span.token).or_insert(page.number);
        }
    }
    let mut found: BTreeMap<&str, BTreeSet<u32>> = names.iter().map(|n| (*n, BTreeSet::new())).collect();
    for (i, t) in doc.tokens.iter().enumerate() {
        if !matches!(t.category, Category::Identifier | Category::DefName) {
            continue;
        }
        if let (Some(pages), Some(&page)) = (found.get_mut(t.text(&doc.source)), token_page.get(&i)) {
            pages.insert(page);
        }
    }
    let index = found
        .into_iter()
        .map(|(name, pages)| IndexEntry { name: name.to_string(), pages: pages.into_iter().collect() })
        .collect();

    let title = if doc.title.trim().is_empty() { "untitled".to_string() } else { doc.title.clone() };
    let header = HeaderBlock {
        title,
        branch: branch.map(str::to_string),
        commit: commit.map(str::to_string),
        line_count: doc.lines.len(),
        definition_count: doc.structure.iter().filter(|s| s.kind.is_definition()).count(),
    };
    Ok(Book {
        preface: Page { number: 0, rows: Vec::new(), header: Some(header) },
        toc,
        pages,
        index,
        geometry,
        document: doc,
    })
}
