//! The seven-face family (default plus six cognitive faces) and its
//! derivation from a two-color base palette.
//!
//! Faces are chosen by perception rather than content: *critical* demands
//! immediate action, *popout* attracts attention through hue, *strong* is
//! structural and differs from the default only in weight, *salient* keeps
//! the default intensity under another hue, *faded* keeps the hue at lower
//! intensity, and *subtle* is a barely perceptible background.

pub mod color;
mod derive;
pub mod theme;
mod tint;
mod validate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use color::{contrast_ratio, from_perceptual, hue_distance, to_perceptual, Color, Lch};
pub use derive::{derive_faces, derive_faces_batch};
pub use tint::{age_tint, distinct_hues, hue_wheel};
pub use validate::{validate_faces, Check, ValidationReport};

use crate::tokens::Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceName {
    Default,
    Critical,
    Popout,
    Strong,
    Salient,
    Faded,
    Subtle,
}

impl FaceName {
    pub const ALL: [FaceName; 7] = [
        FaceName::Default,
        FaceName::Critical,
        FaceName::Popout,
        FaceName::Strong,
        FaceName::Salient,
        FaceName::Faded,
        FaceName::Subtle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FaceName::Default => "default",
            FaceName::Critical => "critical",
            FaceName::Popout => "popout",
            FaceName::Strong => "strong",
            FaceName::Salient => "salient",
            FaceName::Faded => "faded",
            FaceName::Subtle => "subtle",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FaceName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FaceName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown face `{s}`"))
    }
}

/// Named font weights, lightest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightLadder {
    entries: Vec<(String, u16)>,
}

impl Default for WeightLadder {
    fn default() -> Self {
        WeightLadder {
            entries: [("thin", 100), ("light", 300), ("regular", 400), ("medium", 500), ("bold", 700)]
                .into_iter()
                .map(|(n, w)| (n.to_string(), w))
                .collect(),
        }
    }
}

impl WeightLadder {
    pub fn new(entries: Vec<(String, u16)>) -> Result<Self, FaceError> {
        let increasing = entries.windows(2).all(|w| w[0].1 < w[1].1);
        let in_range = entries.iter().all(|(_, w)| (100..=900).contains(w));
        if entries.is_empty() || !increasing || !in_range {
            return Err(FaceError::InvalidLadder);
        }
        Ok(WeightLadder { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.entries[index].0
    }

    pub fn weight(&self, index: usize) -> u16 {
        self.entries[index].1
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn next_heavier(&self, index: usize) -> Option<usize> {
        (index + 1 < self.entries.len()).then_some(index + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceSpec {
    pub name: FaceName,
    pub fg: Color,
    /// `None` inherits the surrounding background.
    pub bg: Option<Color>,
    /// Index into the face set's [`WeightLadder`].
    pub weight: usize,
}

/// Numeric thresholds that turn the face rules into checkable clauses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Minimum WCAG contrast between the two base colors.
    pub base_contrast: f64,
    /// Below this chroma a color counts as achromatic and its hue is ignored.
    pub achromatic_chroma: f64,
    pub salient_max_dl: f64,
    pub salient_min_dh: f64,
    pub salient_min_chroma: f64,
    /// Faded sits at this fraction of the default's lightness distance from
    /// the background.
    pub faded_factor: f64,
    pub faded_dl_tolerance: f64,
    pub faded_max_dh: f64,
    pub subtle_min_dl: f64,
    pub subtle_max_dl: f64,
    pub subtle_max_dh: f64,
    pub popout_min_dh: f64,
    pub popout_min_chroma: f64,
    pub critical_hue_min: f64,
    pub critical_hue_max: f64,
    pub critical_contrast: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            base_contrast: 4.5,
            achromatic_chroma: 10.0,
            salient_max_dl: 5.0,
            salient_min_dh: 30.0,
            salient_min_chroma: 30.0,
            faded_factor: 0.55,
            faded_dl_tolerance: 2.0,
            faded_max_dh: 5.0,
            subtle_min_dl: 2.0,
            subtle_max_dl: 8.0,
            subtle_max_dh: 10.0,
            popout_min_dh: 60.0,
            popout_min_chroma: 40.0,
            critical_hue_min: 10.0,
            critical_hue_max: 45.0,
            critical_contrast: 4.5,
        }
    }
}

impl Thresholds {
    /// Theme-file keys (after the `thresholds.` prefix) paired with the field
    /// they set.
    pub const KEYS: [&'static str; 16] = [
        "base_contrast",
        "achromatic_C",
        "salient_dL",
        "salient_dh",
        "salient_C",
        "faded_factor",
        "faded_dL_tol",
        "faded_dh",
        "subtle_dL_min",
        "subtle_dL_max",
        "subtle_dh",
        "popout_dh",
        "popout_C",
        "critical_hue_min",
        "critical_hue_max",
        "critical_contrast",
    ];

    pub fn field_mut(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "base_contrast" => &mut self.base_contrast,
            "achromatic_C" => &mut self.achromatic_chroma,
            "salient_dL" => &mut self.salient_max_dl,
            "salient_dh" => &mut self.salient_min_dh,
            "salient_C" => &mut self.salient_min_chroma,
            "faded_factor" => &mut self.faded_factor,
            "faded_dL_tol" => &mut self.faded_dl_tolerance,
            "faded_dh" => &mut self.faded_max_dh,
            "subtle_dL_min" => &mut self.subtle_min_dl,
            "subtle_dL_max" => &mut self.subtle_max_dl,
            "subtle_dh" => &mut self.subtle_max_dh,
            "popout_dh" => &mut self.popout_min_dh,
            "popout_C" => &mut self.popout_min_chroma,
            "critical_hue_min" => &mut self.critical_hue_min,
            "critical_hue_max" => &mut self.critical_hue_max,
            "critical_contrast" => &mut self.critical_contrast,
            _ => return None,
        })
    }

    pub fn check(&self) -> Result<(), FaceError> {
        let bad = |name: &'static str| Err(FaceError::InvalidThreshold(name));
        let all = [
            self.base_contrast,
            self.achromatic_chroma,
            self.salient_max_dl,
            self.salient_min_dh,
            self.salient_min_chroma,
            self.faded_factor,
            self.faded_dl_tolerance,
            self.faded_max_dh,
            self.subtle_min_dl,
            self.subtle_max_dl,
            self.subtle_max_dh,
            self.popout_min_dh,
            self.popout_min_chroma,
            self.critical_hue_min,
            self.critical_hue_max,
            self.critical_contrast,
        ];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return bad("thresholds must be finite and non-negative");
        }
        if !(1.0..=21.0).contains(&self.base_contrast) || !(1.0..=21.0).contains(&self.critical_contrast) {
            return bad("contrast thresholds must lie in [1, 21]");
        }
        if self.faded_factor >= 1.0 {
            return bad("faded_factor must be below 1");
        }
        if self.subtle_min_dl > self.subtle_max_dl {
            return bad("subtle_dL_min exceeds subtle_dL_max");
        }
        if self.critical_hue_min > self.critical_hue_max || self.critical_hue_max >= 360.0 {
            return bad("critical hue range is empty or exceeds 360");
        }
        if self.salient_min_dh > 180.0 || self.popout_min_dh > 180.0 {
            return bad("hue distances cannot exceed 180");
        }
        Ok(())
    }
}

/// Everything `derive_faces` needs besides the base palette.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceOptions {
    pub thresholds: Thresholds,
    /// Preferred hues; the derivation moves away from them only as far as
    /// the rules require.
    pub salient_hue: f64,
    pub popout_hue: f64,
    pub critical_hue: f64,
    pub ladder: WeightLadder,
    /// Ladder entry used for default text.
    pub base_weight: usize,
}

impl Default for FaceOptions {
    fn default() -> Self {
        let ladder = WeightLadder::default();
        let base_weight = ladder.position("medium").expect("default ladder has medium");
        FaceOptions {
            thresholds: Thresholds::default(),
            salient_hue: 270.0,
            popout_hue: 60.0,
            critical_hue: 30.0,
            ladder,
            base_weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaceError {
    #[error("base palette contrast {ratio:.2} is below the required {required}")]
    InsufficientContrast { ratio: f64, required: f64 },
    #[error("no color satisfies clause `{0}`")]
    Unsatisfiable(&'static str),
    #[error("invalid threshold: {0}")]
    InvalidThreshold(&'static str),
    #[error("weight ladder must be non-empty with strictly increasing weights in 100..=900")]
    InvalidLadder,
}

/// The complete face family plus the inputs it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceSet {
    faces: [FaceSpec; 7],
    pub fg: Color,
    pub bg: Color,
    pub ladder: WeightLadder,
    pub thresholds: Thresholds,
}

impl FaceSet {
    /// A set where every face equals the default; useful as a starting point
    /// for hand-built sets.
    pub fn uniform(fg: Color, bg: Color, ladder: WeightLadder, weight: usize, thresholds: Thresholds) -> Self {
        let faces = FaceName::ALL.map(|name| FaceSpec {
            name,
            fg,
            bg: (name == FaceName::Default).then_some(bg),
            weight,
        });
        FaceSet { faces, fg, bg, ladder, thresholds }
    }

    pub fn get(&self, name: FaceName) -> &FaceSpec {
        &self.faces[name.index()]
    }

    /// Replaces one face. The default face's background always stays the
    /// concrete base background.
    pub fn set(&mut self, mut spec: FaceSpec) {
        if spec.name == FaceName::Default {
            spec.bg = Some(self.bg);
        }
        self.faces[spec.name.index()] = spec;
    }

    pub fn iter(&self) -> impl Iterator<Item = &FaceSpec> {
        self.faces.iter()
    }

    pub fn weight_of(&self, name: FaceName) -> u16 {
        self.ladder.weight(self.get(name).weight)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_faces(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Todo,
    Fixme,
}

impl Marker {
    pub const ALL: [Marker; 2] = [Marker::Todo, Marker::Fixme];

    pub fn as_str(self) -> &'static str {
        match self {
            Marker::Todo => "TODO",
            Marker::Fixme => "FIXME",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenContext {
    pub in_header: bool,
    pub marker: Option<Marker>,
}

/// Default mapping from token category to face. Critical is never assigned
/// here; it is reserved for explicit diagnostics.
pub fn face_for_token(category: Category, ctx: TokenContext) -> FaceName {
    match category {
        Category::Comment if ctx.marker.is_some() => FaceName::Popout,
        Category::Comment => FaceName::Faded,
        Category::Keyword | Category::DefName => FaceName::Strong,
        Category::String => FaceName::Salient,
        Category::Text | Category::Identifier if ctx.in_header => FaceName::Strong,
        Category::Identifier
        | Category::Number
        | Category::Operator
        | Category::Punctuation
        | Category::Whitespace
        | Category::Text => FaceName::Default,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_faces() {
        let plain = TokenContext::default();
        assert_eq!(face_for_token(Category::Comment, plain), FaceName::Faded);
        assert_eq!(face_for_token(Category::Keyword, plain), FaceName::Strong);
        assert_eq!(face_for_token(Category::Identifier, plain), FaceName::Default);
        assert_eq!(face_for_token(Category::String, plain), FaceName::Salient);
        assert_eq!(face_for_token(Category::Number, plain), FaceName::Default);
        assert_eq!(face_for_token(Category::Operator, plain), FaceName::Default);
        let marked = TokenContext { marker: Some(Marker::Fixme), ..plain };
        assert_eq!(face_for_token(Category::Comment, marked), FaceName::Popout);
        let header = TokenContext { in_header: true, marker: None };
        assert_eq!(face_for_token(Category::DefName, header), FaceName::Strong);
        assert_eq!(face_for_token(Category::Text, header), FaceName::Strong);
    }

    #[test]
    fn no_category_maps_to_critical() {
        use Category::*;
        for cat in [Keyword, Identifier, DefName, String, Number, Operator, Punctuation, Comment, Whitespace, Text] {
            for in_header in [false, true] {
                for marker in [None, Some(Marker::Todo)] {
                    let face = face_for_token(cat, TokenContext { in_header, marker });
                    assert_ne!(face, FaceName::Critical);
                }
            }
        }
    }

    #[test]
    fn ladder_rules() {
        let ladder = WeightLadder::default();
        assert_eq!(ladder.len(), 5);
        assert_eq!(ladder.next_heavier(ladder.position("medium").unwrap()), ladder.position("bold"));
        assert_eq!(ladder.next_heavier(4), None);
        assert!(WeightLadder::new(vec![("a".into(), 400), ("b".into(), 400)]).is_err());
        assert!(WeightLadder::new(vec![]).is_err());
        assert!(WeightLadder::new(vec![("x".into(), 50)]).is_err());
    }

    #[test]
    fn threshold_keys_all_resolve() {
        let mut t = Thresholds::default();
        for key in Thresholds::KEYS {
            assert!(t.field_mut(key).is_some(), "{key}");
        }
        assert!(t.field_mut("nope").is_none());
        assert!(t.check().is_ok());
        t.subtle_min_dl = 9.0;
        assert!(t.check().is_err());
    }

    #[test]
    fn face_names_parse() {
        for f in FaceName::ALL {
            assert_eq!(f.as_str().parse::<FaceName>(), Ok(f));
        }
    }
}
