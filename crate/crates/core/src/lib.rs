//! Source-code presentation toolkit.
//!
//! `folio` typesets source files as small books: a perceptual face family
//! derived from two base colors, margins and an ISO 216 page shape, a
//! comment column beside the code, pagination with a table of contents and
//! an index. It also carries a headless modal edit engine driven by
//! vi-style keystroke scripts.
//!
//! The pipeline is `tokens` → `layout` → `render`, with `faces` supplying
//! colors and `edit` standing on its own.

pub mod annotations;
pub mod edit;
pub mod exec;
pub mod faces;
pub mod layout;
pub mod render;
pub mod tokens;

pub use exec::Strategy;
