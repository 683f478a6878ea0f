//! Core domain types: varieties, part-of-speech categories, feature bundles,
//! raw dictionary entries, form records and analyses.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::norm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown variety label `{0}`")]
    UnknownVariety(String),
    #[error("invalid feature bundle `{input}`: {reason}")]
    InvalidFeatures { input: String, reason: String },
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },
}

/// The six written varieties handled by the toolkit, in canonical order.
/// The order is load-bearing: it breaks ties in classification and fixes the
/// row order of multi-variety output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    Sursilvan,
    Sutsilvan,
    Surmiran,
    Puter,
    Vallader,
    RumantschGrischun,
}

impl Variety {
    pub const ALL: [Variety; 6] = [
        Variety::Sursilvan,
        Variety::Sutsilvan,
        Variety::Surmiran,
        Variety::Puter,
        Variety::Vallader,
        Variety::RumantschGrischun,
    ];

    /// Canonical lowercase label; also the file-name stem used on disk.
    pub fn label(self) -> &'static str {
        match self {
            Variety::Sursilvan => "sursilvan",
            Variety::Sutsilvan => "sutsilvan",
            Variety::Surmiran => "surmiran",
            Variety::Puter => "puter",
            Variety::Vallader => "vallader",
            Variety::RumantschGrischun => "rumantsch-grischun",
        }
    }

    /// Position in [`Variety::ALL`]; used as a sort key.
    pub fn rank(self) -> usize {
        Variety::ALL.iter().position(|v| *v == self).unwrap()
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variety {
    type Err = ModelError;

    /// Accepts the canonical label plus a few common aliases
    /// (`rm-vallader`, `rumantschgrischun`, `rg`, any casing).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut key = s.trim().to_lowercase().replace('_', "-");
        if let Some(stripped) = key.strip_prefix("rm-") {
            key = stripped.to_string();
        }
        match key.as_str() {
            "sursilvan" => Ok(Variety::Sursilvan),
            "sutsilvan" => Ok(Variety::Sutsilvan),
            "surmiran" => Ok(Variety::Surmiran),
            "puter" => Ok(Variety::Puter),
            "vallader" => Ok(Variety::Vallader),
            "rumantsch-grischun" | "rumantschgrischun" | "rg" => {
                Ok(Variety::RumantschGrischun)
            }
            _ => Err(ModelError::UnknownVariety(s.to_string())),
        }
    }
}

impl Serialize for Variety {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Variety {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

macro_rules! feature_enum {
    ($(#[$doc:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn parse_value(s: &str) -> Option<Self> {
                match s {
                    $($text => Some($name::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

feature_enum!(
    /// Coarse part-of-speech categories used for lexicon statistics and
    /// feature serialization.
    PosCategory {
        Noun => "N",
        Verb => "V",
        Adjective => "ADJ",
        Other => "OTHER",
    }
);

feature_enum!(Gender { Masc => "MASC", Fem => "FEM" });
feature_enum!(Number { Sg => "SG", Pl => "PL" });
feature_enum!(VerbForm { Fin => "FIN", Inf => "INF", Ptcp => "PTCP", Ger => "GER" });
feature_enum!(Tense { Prs => "PRS", Pst => "PST", Impf => "IMPF", Fut => "FUT" });
feature_enum!(Person { First => "1", Second => "2", Third => "3" });
feature_enum!(Mood { Ind => "IND", Subj => "SUBJ", Cond => "COND", Imp => "IMP" });

/// A morphological feature bundle.
///
/// The verbal slots (`verb_form`, `tense`, `person`, `mood`) may only be set
/// when `pos` is [`PosCategory::Verb`]; the constructors and the parser
/// enforce this, so a bundle obtained through the public API is always valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureBundle {
    pos: PosCategory,
    verb_form: Option<VerbForm>,
    tense: Option<Tense>,
    person: Option<Person>,
    mood: Option<Mood>,
    gender: Option<Gender>,
    number: Option<Number>,
}

impl FeatureBundle {
    pub fn new(pos: PosCategory) -> Self {
        FeatureBundle {
            pos,
            verb_form: None,
            tense: None,
            person: None,
            mood: None,
            gender: None,
            number: None,
        }
    }

    pub fn pos(&self) -> PosCategory {
        self.pos
    }

    pub fn gender(&self) -> Option<Gender> {
        self.gender
    }

    pub fn number(&self) -> Option<Number> {
        self.number
    }

    pub fn verb_form(&self) -> Option<VerbForm> {
        self.verb_form
    }

    pub fn tense(&self) -> Option<Tense> {
        self.tense
    }

    pub fn person(&self) -> Option<Person> {
        self.person
    }

    pub fn mood(&self) -> Option<Mood> {
        self.mood
    }

    pub fn with_gender(mut self, gender: Gender) -> Self {
        self.gender = Some(gender);
        self
    }

    pub fn with_gender_opt(mut self, gender: Option<Gender>) -> Self {
        self.gender = gender;
        self
    }

    pub fn with_number(mut self, number: Number) -> Self {
        self.number = Some(number);
        self
    }

    fn verbal(&self, slot: &'static str) -> Result<(), ModelError> {
        if self.pos == PosCategory::Verb {
            Ok(())
        } else {
            Err(ModelError::InvalidFeatures {
                input: self.to_string(),
                reason: format!("{slot} requires PoS=V, found PoS={}", self.pos),
            })
        }
    }

    pub fn with_verb_form(mut self, verb_form: VerbForm) -> Result<Self, ModelError> {
        self.verbal("VerbForm")?;
        self.verb_form = Some(verb_form);
        Ok(self)
    }

    pub fn with_tense(mut self, tense: Tense) -> Result<Self, ModelError> {
        self.verbal("Tense")?;
        self.tense = Some(tense);
        Ok(self)
    }

    pub fn with_person(mut self, person: Person) -> Result<Self, ModelError> {
        self.verbal("Person")?;
        self.person = Some(person);
        Ok(self)
    }

    pub fn with_mood(mut self, mood: Mood) -> Result<Self, ModelError> {
        self.verbal("Mood")?;
        self.mood = Some(mood);
        Ok(self)
    }

    /// Compact value-only form used in annotation files, e.g. `ADJ;MASC;SG`
    /// or `V;PTCP;PST;FEM;SG`.
    pub fn to_compact(&self) -> String {
        let mut parts = vec![self.pos.as_str().to_string()];
        if let Some(v) = self.verb_form {
            parts.push(v.to_string());
        }
        if let Some(v) = self.tense {
            parts.push(v.to_string());
        }
        if let Some(v) = self.person {
            parts.push(v.to_string());
        }
        if let Some(v) = self.mood {
            parts.push(v.to_string());
        }
        if let Some(v) = self.gender {
            parts.push(v.to_string());
        }
        if let Some(v) = self.number {
            parts.push(v.to_string());
        }
        parts.join(";")
    }

    fn parse_canonical(input: &str) -> Result<Self, ModelError> {
        let err = |reason: String| ModelError::InvalidFeatures {
            input: input.to_string(),
            reason,
        };
        let mut pos = None;
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for part in input.split(';') {
            let part = part.trim();
            if part.is_empty() {
                return Err(err("empty component".into()));
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(format!("missing `=` in `{part}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if key.eq_ignore_ascii_case("pos") {
                if pos.is_some() {
                    return Err(err("duplicate PoS".into()));
                }
                pos = Some(
                    PosCategory::parse_value(value)
                        .ok_or_else(|| err(format!("unknown PoS value `{value}`")))?,
                );
            } else {
                fields.push((key, value));
            }
        }
        let pos = pos.ok_or_else(|| err("missing PoS".into()))?;
        let mut bundle = FeatureBundle::new(pos);
        for (key, value) in fields {
            let unknown = || err(format!("unknown value `{value}` for key `{key}`"));
            let dup = |k: &str| err(format!("duplicate key `{k}`"));
            match key.to_ascii_lowercase().as_str() {
                "verbform" => {
                    if bundle.verb_form.is_some() {
                        return Err(dup(key));
                    }
                    bundle = bundle
                        .with_verb_form(VerbForm::parse_value(value).ok_or_else(unknown)?)?;
                }
                "tense" => {
                    if bundle.tense.is_some() {
                        return Err(dup(key));
                    }
                    bundle = bundle.with_tense(Tense::parse_value(value).ok_or_else(unknown)?)?;
                }
                "person" => {
                    if bundle.person.is_some() {
                        return Err(dup(key));
                    }
                    bundle = bundle.with_person(Person::parse_value(value).ok_or_else(unknown)?)?;
                }
                "mood" => {
                    if bundle.mood.is_some() {
                        return Err(dup(key));
                    }
                    bundle = bundle.with_mood(Mood::parse_value(value).ok_or_else(unknown)?)?;
                }
                "gender" => {
                    if bundle.gender.is_some() {
                        return Err(dup(key));
                    }
                    bundle.gender = Some(Gender::parse_value(value).ok_or_else(unknown)?);
                }
                "number" => {
                    if bundle.number.is_some() {
                        return Err(dup(key));
                    }
                    bundle.number = Some(Number::parse_value(value).ok_or_else(unknown)?);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(bundle)
    }

    fn parse_compact(input: &str) -> Result<Self, ModelError> {
        let err = |reason: String| ModelError::InvalidFeatures {
            input: input.to_string(),
            reason,
        };
        let mut values = input.split(';').map(str::trim);
        let pos_text = values.next().filter(|v| !v.is_empty()).ok_or_else(|| {
            err("empty feature bundle".into())
        })?;
        let pos = PosCategory::parse_value(pos_text)
            .ok_or_else(|| err(format!("unknown PoS value `{pos_text}`")))?;
        let mut bundle = FeatureBundle::new(pos);
        for value in values {
            if value.is_empty() {
                return Err(err("empty component".into()));
            }
            let dup = || err(format!("duplicate value `{value}`"));
            if let Some(v) = VerbForm::parse_value(value) {
                if bundle.verb_form.is_some() {
                    return Err(dup());
                }
                bundle = bundle.with_verb_form(v)?;
            } else if let Some(v) = Tense::parse_value(value) {
                if bundle.tense.is_some() {
                    return Err(dup());
                }
                bundle = bundle.with_tense(v)?;
            } else if let Some(v) = Person::parse_value(value) {
                if bundle.person.is_some() {
                    return Err(dup());
                }
                bundle = bundle.with_person(v)?;
            } else if let Some(v) = Mood::parse_value(value) {
                if bundle.mood.is_some() {
                    return Err(dup());
                }
                bundle = bundle.with_mood(v)?;
            } else if let Some(v) = Gender::parse_value(value) {
                if bundle.gender.is_some() {
                    return Err(dup());
                }
                bundle.gender = Some(v);
            } else if let Some(v) = Number::parse_value(value) {
                if bundle.number.is_some() {
                    return Err(dup());
                }
                bundle.number = Some(v);
            } else {
                return Err(err(format!("unknown value `{value}`")));
            }
        }
        Ok(bundle)
    }
}

impl fmt::Display for FeatureBundle {
    /// Canonical key=value serialization, e.g.
    /// `PoS=V; VerbForm=PTCP; Tense=PST; Gender=FEM; Number=SG`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoS={}", self.pos)?;
        if let Some(v) = self.verb_form {
            write!(f, "; VerbForm={v}")?;
        }
        if let Some(v) = self.tense {
            write!(f, "; Tense={v}")?;
        }
        if let Some(v) = self.person {
            write!(f, "; Person={v}")?;
        }
        if let Some(v) = self.mood {
            write!(f, "; Mood={v}")?;
        }
        if let Some(v) = self.gender {
            write!(f, "; Gender={v}")?;
        }
        if let Some(v) = self.number {
            write!(f, "; Number={v}")?;
        }
        Ok(())
    }
}

impl FromStr for FeatureBundle {
    type Err = ModelError;

    /// Parses the canonical `Key=Value; ...` form, or the compact value-only
    /// alias (`ADJ;MASC;SG`) when the input contains no `=`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('=') {
            FeatureBundle::parse_canonical(s)
        } else {
            FeatureBundle::parse_compact(s)
        }
    }
}

impl Serialize for FeatureBundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FeatureBundle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One row of a source dictionary before parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEntry {
    /// Romansh side of the entry, may span several words and carry
    /// parenthesized material.
    pub romansh_field: String,
    /// German side of the entry.
    pub german_field: String,
    /// Optional part-of-speech annotation, e.g. `adj`, `v`.
    pub pos_hint: Option<String>,
    /// Optional gender annotation, e.g. `f`, `m/f`.
    pub gender_hint: Option<String>,
    /// 1-based line in the source file, for diagnostics.
    pub source_line: usize,
}

impl RawEntry {
    pub fn new(
        romansh_field: impl Into<String>,
        german_field: impl Into<String>,
        pos_hint: Option<String>,
        gender_hint: Option<String>,
        source_line: usize,
    ) -> Result<Self, ModelError> {
        let entry = RawEntry {
            romansh_field: romansh_field.into(),
            german_field: german_field.into(),
            pos_hint: pos_hint.filter(|h| !h.trim().is_empty()),
            gender_hint: gender_hint.filter(|h| !h.trim().is_empty()),
            source_line,
        };
        entry.validate()?;
        Ok(entry)
    }

    /// Both text fields must be non-empty after trimming.
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.romansh_field.trim().is_empty() {
            return Err(ModelError::InvalidField {
                field: "romansh_field",
                reason: "empty".into(),
            });
        }
        if self.german_field.trim().is_empty() {
            return Err(ModelError::InvalidField {
                field: "german_field",
                reason: "empty".into(),
            });
        }
        Ok(())
    }
}

fn validate_single_word(field: &'static str, value: &str) -> Result<(), ModelError> {
    if value.is_empty() {
        return Err(ModelError::InvalidField {
            field,
            reason: "empty".into(),
        });
    }
    if value.chars().any(char::is_whitespace) {
        return Err(ModelError::InvalidField {
            field,
            reason: format!("`{value}` contains whitespace"),
        });
    }
    if value.contains('(') || value.contains(')') {
        return Err(ModelError::InvalidField {
            field,
            reason: format!("`{value}` contains parentheses"),
        });
    }
    Ok(())
}

/// One surface form mapped to its lemma, fully parsed and normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FormRecord {
    pub surface: String,
    pub lemma: String,
    pub features: FeatureBundle,
    pub gloss: String,
    pub variety: Variety,
}

impl FormRecord {
    /// Normalizes all text fields and checks that surface and lemma are
    /// single words.
    pub fn new(
        surface: &str,
        lemma: &str,
        features: FeatureBundle,
        gloss: &str,
        variety: Variety,
    ) -> Result<Self, ModelError> {
        let surface = norm::normalize_display(surface.trim());
        let lemma = norm::normalize_display(lemma.trim());
        validate_single_word("surface", &surface)?;
        validate_single_word("lemma", &lemma)?;
        Ok(FormRecord {
            surface,
            lemma,
            features,
            gloss: norm::normalize_display(gloss.trim()),
            variety,
        })
    }
}

/// A lemmatization answer for one surface form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Analysis {
    pub lemma: String,
    pub features: FeatureBundle,
    pub gloss: String,
    pub variety: Variety,
}

impl Analysis {
    pub fn from_record(record: &FormRecord) -> Self {
        Analysis {
            lemma: record.lemma.clone(),
            features: record.features,
            gloss: record.gloss.clone(),
            variety: record.variety,
        }
    }

    /// Canonical ordering of analyses within one variety: by feature
    /// serialization, then lemma (diacritic-folded collation, raw string as
    /// tie-break), then gloss. This is the row order of multi-analysis
    /// output tables.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }

    pub(crate) fn sort_key(&self) -> (String, String, String, String, usize) {
        (
            self.features.to_string(),
            norm::collation_key(&self.lemma),
            self.lemma.clone(),
            self.gloss.clone(),
            self.variety.rank(),
        )
    }
}
