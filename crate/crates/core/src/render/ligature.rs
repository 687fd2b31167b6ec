use std::collections::BTreeMap;

use crate::tokens::{Category, Token};

/// Operator spellings and the glyph shown in their place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LigatureTable {
    entries: Vec<(String, String)>,
}

impl Default for LigatureTable {
    /// `>=`, `<=`, `!=`, `->` and `=>`. `==` stays literal: a single glyph
    /// for it is too easily mistaken for assignment.
    fn default() -> Self {
        LigatureTable::new([(">=", "≥"), ("<=", "≤"), ("!=", "≠"), ("->", "→"), ("=>", "⇒")]).expect("valid table")
    }
}

impl LigatureTable {
    /// Keys must be at least two characters; entries are kept longest key
    /// first.
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (k, v) in pairs {
            if k.chars().count() < 2 {
                return Err(format!("ligature key `{k}` is shorter than two characters"));
            }
            entries.push((k.to_string(), v.to_string()));
        }
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        entries.dedup_by(|a, b| a.0 == b.0);
        Ok(LigatureTable { entries })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Glyph for a complete operator spelling.
    pub fn lookup(&self, spelling: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == spelling).map(|(_, v)| v.as_str())
    }
}

/// Display replacements keyed by token index. Tokens and source are never
/// touched; renderers consult this map when drawing a whole operator token.
pub type Substitutions = BTreeMap<usize, String>;

/// Records a substitution for every operator token whose full spelling is
/// in the table. The lexer already splits operators by longest match, so
/// `>>=` is one token and never shows a `≥`.
pub fn apply_ligatures(tokens: &[Token], source: &str, table: &LigatureTable, enabled: bool) -> Substitutions {
    if !enabled {
        return Substitutions::new();
    }
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.category == Category::Operator)
        .filter_map(|(i, t)| table.lookup(t.text(source)).map(|g| (i, g.to_string())))
        .collect()
}
