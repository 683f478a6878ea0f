//! Per-variety lexicons: deduplicated form records, a normalized lookup
//! index, a fallback vocabulary, and ingestion statistics. Lexicons persist
//! to a versioned line-oriented text format and rebuild their index on load.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::model::{Analysis, FormRecord, PosCategory, Variety};
use crate::norm;

const FORMAT_HEADER: &str = "rumlex-lexicon";
const FORMAT_VERSION: u32 = 1;
pub const LEXICON_EXTENSION: &str = "lexc";

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("record for variety {found} in a {expected} lexicon")]
    VarietyMismatch { expected: Variety, found: Variety },
    #[error("incompatible lexicon format `{found}` (expected {FORMAT_HEADER} v{FORMAT_VERSION})")]
    IncompatibleVersion { found: String },
    #[error("corrupt lexicon file, line {line}: {reason}")]
    CorruptFile { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// How a surface form is known to a lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownStatus {
    /// At least one analysis exists.
    Lemmatizable,
    /// Only present in the fallback vocabulary.
    FallbackOnly,
    Unknown,
}

/// Ingestion statistics, one row of the lexicon summary table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct LexiconStats {
    /// Distinct lookup keys, mapped forms and fallback words together.
    pub vocab_size: usize,
    /// Distinct lookup keys with at least one analysis.
    pub mapped_forms: usize,
    /// Distinct (lemma, part-of-speech) pairs.
    pub lemma_count: usize,
    pub noun_lemmas: usize,
    pub verb_lemmas: usize,
    pub adjective_lemmas: usize,
    pub other_lemmas: usize,
}

/// A compiled lexicon for one variety.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    variety: Variety,
    records: BTreeSet<FormRecord>,
    fallback: BTreeSet<String>,
    form_index: BTreeMap<String, Vec<Analysis>>,
    stats: LexiconStats,
}

impl Lexicon {
    /// Builds a lexicon from records and a fallback word list.
    ///
    /// Duplicate records collapse, so the result is invariant under
    /// permutation and duplication of the input. Every record must carry
    /// `variety`.
    pub fn build(
        records: impl IntoIterator<Item = FormRecord>,
        fallback_words: impl IntoIterator<Item = String>,
        variety: Variety,
    ) -> Result<Self, LexiconError> {
        let mut deduped = BTreeSet::new();
        for record in records {
            if record.variety != variety {
                return Err(LexiconError::VarietyMismatch {
                    expected: variety,
                    found: record.variety,
                });
            }
            deduped.insert(record);
        }
        let fallback: BTreeSet<String> = fallback_words
            .into_iter()
            .map(|w| norm::normalize_key(&w))
            .filter(|w| !w.is_empty())
            .collect();

        let mut form_index: BTreeMap<String, Vec<Analysis>> = BTreeMap::new();
        for record in &deduped {
            form_index
                .entry(norm::normalize_key(&record.surface))
                .or_default()
                .push(Analysis::from_record(record));
        }
        for analyses in form_index.values_mut() {
            analyses.sort_by(Analysis::canonical_cmp);
            analyses.dedup();
        }

        let stats = compute_stats(&deduped, &fallback, &form_index);
        Ok(Lexicon {
            variety,
            records: deduped,
            fallback,
            form_index,
            stats,
        })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn stats(&self) -> &LexiconStats {
        &self.stats
    }

    pub fn records(&self) -> impl Iterator<Item = &FormRecord> {
        self.records.iter()
    }

    /// All analyses for a surface form, canonically ordered. Lookup is
    /// case-insensitive and apostrophe-normalized; unknown forms yield an
    /// empty slice.
    pub fn lookup(&self, surface: &str) -> &[Analysis] {
        self.form_index
            .get(&norm::normalize_key(surface))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn is_known(&self, surface: &str) -> KnownStatus {
        let key = norm::normalize_key(surface);
        if self.form_index.contains_key(&key) {
            KnownStatus::Lemmatizable
        } else if self.fallback.contains(&key) {
            KnownStatus::FallbackOnly
        } else {
            KnownStatus::Unknown
        }
    }

    pub fn write_to<W: Write>(&self, writer: W) -> Result<(), LexiconError> {
        let mut w = BufWriter::new(writer);
        writeln!(w, "{FORMAT_HEADER} v{FORMAT_VERSION}")?;
        writeln!(w, "variety\t{}", self.variety)?;
        writeln!(w, "forms\t{}", self.records.len())?;
        for record in &self.records {
            writeln!(
                w,
                "{}\t{}\t{}\t{}",
                escape(&record.surface),
                escape(&record.lemma),
                record.features,
                escape(&record.gloss),
            )?;
        }
        writeln!(w, "fallback\t{}", self.fallback.len())?;
        for word in &self.fallback {
            writeln!(w, "{}", escape(word))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(reader: R) -> Result<Self, LexiconError> {
        let mut lines = BufReader::new(reader).lines().enumerate();
        let mut next_line = |expect: &str| -> Result<(usize, String), LexiconError> {
            match lines.next() {
                Some((idx, Ok(line))) => Ok((idx + 1, line)),
                Some((idx, Err(e))) => Err(LexiconError::CorruptFile {
                    line: idx + 1,
                    reason: e.to_string(),
                }),
                None => Err(LexiconError::CorruptFile {
                    line: 0,
                    reason: format!("unexpected end of file, expected {expect}"),
                }),
            }
        };

        let (_, header) = next_line("header")?;
        let expected = format!("{FORMAT_HEADER} v{FORMAT_VERSION}");
        if header != expected {
            return Err(LexiconError::IncompatibleVersion { found: header });
        }
        let (line_no, variety_line) = next_line("variety")?;
        let variety: Variety = variety_line
            .strip_prefix("variety\t")
            .ok_or_else(|| LexiconError::CorruptFile {
                line: line_no,
                reason: "missing variety line".into(),
            })?
            .parse()
            .map_err(|e: crate::model::ModelError| LexiconError::CorruptFile {
                line: line_no,
                reason: e.to_string(),
            })?;

        let (line_no, forms_line) = next_line("form count")?;
        let form_count: usize = parse_count(&forms_line, "forms", line_no)?;
        let mut records = Vec::with_capacity(form_count);
        for _ in 0..form_count {
            let (line_no, line) = next_line("form record")?;
            let fields: Vec<&str> = line.split('\t').collect();
            let [surface, lemma, features, gloss] = fields.as_slice() else {
                return Err(LexiconError::CorruptFile {
                    line: line_no,
                    reason: format!("expected 4 fields, found {}", fields.len()),
                });
            };
            let corrupt = |reason: String| LexiconError::CorruptFile {
                line: line_no,
                reason,
            };
            let features = features
                .parse()
                .map_err(|e: crate::model::ModelError| corrupt(e.to_string()))?;
            let record = FormRecord::new(
                &unescape(surface).map_err(&corrupt)?,
                &unescape(lemma).map_err(&corrupt)?,
                features,
                &unescape(gloss).map_err(&corrupt)?,
                variety,
            )
            .map_err(|e| corrupt(e.to_string()))?;
            records.push(record);
        }

        let (line_no, fallback_line) = next_line("fallback count")?;
        let fallback_count: usize = parse_count(&fallback_line, "fallback", line_no)?;
        let mut fallback = Vec::with_capacity(fallback_count);
        for _ in 0..fallback_count {
            let (line_no, line) = next_line("fallback word")?;
            fallback.push(unescape(&line).map_err(|reason| LexiconError::CorruptFile {
                line: line_no,
                reason,
            })?);
        }

        Lexicon::build(records, fallback, variety)
    }

    pub fn save(&self, path: &Path) -> Result<(), LexiconError> {
        self.write_to(File::create(path)?)
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Lexicon::read_from(File::open(path)?)
    }
}

fn parse_count(line: &str, key: &str, line_no: usize) -> Result<usize, LexiconError> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('\t'))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| LexiconError::CorruptFile {
            line: line_no,
            reason: format!("expected `{key}\\t<count>`"),
        })
}

fn compute_stats(
    records: &BTreeSet<FormRecord>,
    fallback: &BTreeSet<String>,
    form_index: &BTreeMap<String, Vec<Analysis>>,
) -> LexiconStats {
    let mut lemmas: BTreeSet<(String, PosCategory)> = BTreeSet::new();
    for record in records {
        lemmas.insert((norm::normalize_key(&record.lemma), record.features.pos()));
    }
    let count_pos =
        |pos: PosCategory| lemmas.iter().filter(|(_, p)| *p == pos).count();
    let vocab: BTreeSet<&String> = form_index.keys().chain(fallback.iter()).collect();
    LexiconStats {
        vocab_size: vocab.len(),
        mapped_forms: form_index.len(),
        lemma_count: lemmas.len(),
        noun_lemmas: count_pos(PosCategory::Noun),
        verb_lemmas: count_pos(PosCategory::Verb),
        adjective_lemmas: count_pos(PosCategory::Adjective),
        other_lemmas: count_pos(PosCategory::Other),
    }
}

fn escape(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            other => out.push(other),
        }
    }
    out
}

fn unescape(field: &str) -> Result<String, String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            other => return Err(format!("bad escape `\\{}`", other.unwrap_or(' '))),
        }
    }
    Ok(out)
}

/// The lexicons currently loaded, at most one per variety. Not every variety
/// needs to be present.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct LexiconSet {
    lexicons: BTreeMap<Variety, Lexicon>,
}

impl LexiconSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lexicon: Lexicon) {
        self.lexicons.insert(lexicon.variety(), lexicon);
    }

    pub fn get(&self, variety: Variety) -> Option<&Lexicon> {
        self.lexicons.get(&variety)
    }

    pub fn is_empty(&self) -> bool {
        self.lexicons.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lexicons.len()
    }

    /// Loaded lexicons in canonical variety order.
    pub fn iter(&self) -> impl Iterator<Item = &Lexicon> {
        self.lexicons.values()
    }

    pub fn varieties(&self) -> Vec<Variety> {
        self.lexicons.keys().copied().collect()
    }

    /// Loads every `.lexc` file in `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, LexiconError> {
        let mut set = LexiconSet::new();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| {
                p.extension()
                    .is_some_and(|ext| ext == LEXICON_EXTENSION)
            })
            .collect();
        paths.sort();
        for path in paths {
            set.insert(Lexicon::load(&path)?);
        }
        Ok(set)
    }

    /// Saves each lexicon as `<variety>.lexc` under `dir`.
    pub fn save_dir(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>, LexiconError> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for lexicon in self.iter() {
            let path = dir.join(format!("{}.{LEXICON_EXTENSION}", lexicon.variety()));
            lexicon.save(&path)?;
            paths.push(path);
        }
        Ok(paths)
    }
}
