//! Sidecar annotations: per-line modification age and author, plus
//! optional VCS context.
//!
//! One record per line, a tab between the line number and `key=value`:
//!
//! ```text
//! # line<TAB>key=value
//! 3<TAB>age=0.8
//! 3<TAB>author=2
//! *<TAB>branch=main
//! *<TAB>commit=4f2a9c1
//! ```
//!
//! `age` runs from 0 (oldest) to 1 (most recent). `author` is a small
//! integer id. Records with `*` in place of a line number carry the
//! document-wide `branch` and `commit`.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LineAnnotation {
    pub age: Option<f64>,
    pub author: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Annotations {
    pub lines: BTreeMap<u32, LineAnnotation>,
    pub branch: Option<String>,
    pub commit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("annotations line {line}: {message}")]
pub struct AnnotationError {
    pub line: usize,
    pub message: String,
}

/// Largest accepted author id; ids index a small hue wheel.
pub const MAX_AUTHOR: u32 = 255;

impl Annotations {
    pub fn parse(text: &str) -> Result<Self, AnnotationError> {
        let mut out = Annotations::default();
        for (i, raw) in text.lines().enumerate() {
            let err = |message: String| AnnotationError { line: i + 1, message };
            let record = raw.trim_end_matches('\r');
            if record.trim().is_empty() || record.trim_start().starts_with('#') {
                continue;
            }
            let (target, pair) = record
                .split_once('\t')
                .ok_or_else(|| err("expected `LINE<TAB>KEY=VALUE`".into()))?;
            let (key, value) = pair
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `KEY=VALUE`, found `{pair}`")))?;
            let target = target.trim();

            if target == "*" {
                match key {
                    "branch" => out.branch = Some(value.to_string()),
                    "commit" => out.commit = Some(value.to_string()),
                    _ => return Err(err(format!("unknown document key `{key}`"))),
                }
                continue;
            }

            let line: u32 = target
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| err(format!("line number must be >= 1, found `{target}`")))?;
            let entry = out.lines.entry(line).or_default();
            match key {
                "age" => {
                    let age: f64 = value
                        .parse()
                        .ok()
                        .filter(|a| (0.0..=1.0).contains(a))
                        .ok_or_else(|| err(format!("age must be a number in [0, 1], found `{value}`")))?;
                    entry.age = Some(age);
                }
                "author" => {
                    let author: u32 = value
                        .parse()
                        .ok()
                        .filter(|&a| a <= MAX_AUTHOR)
                        .ok_or_else(|| err(format!("author must be an integer in 0..={MAX_AUTHOR}, found `{value}`")))?;
                    entry.author = Some(author);
                }
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        Ok(out)
    }

    pub fn get(&self, line: u32) -> Option<&LineAnnotation> {
        self.lines.get(&line)
    }

    /// Distinct author ids in ascending order.
    pub fn authors(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.lines.values().filter_map(|a| a.author).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}
