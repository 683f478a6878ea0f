//! File-level ingestion: dictionary TSVs, inflection TSVs, and fallback word
//! lists compile into one lexicon per variety, with a report of what parsed,
//! what was rejected, and why.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::entry_parser::{parse_entry, MtInventory, ParseError};
use crate::lexicon::{Lexicon, LexiconError, LexiconStats};
use crate::model::{FeatureBundle, FormRecord, PosCategory, RawEntry, Variety};
use crate::norm;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot infer a variety from file name `{}`", .0.display())]
    BadFileName(PathBuf),
    #[error("{}:{line}: bad inflection row: {reason}", path.display())]
    BadInflection {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn read_file(path: &Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn variety_from_stem(path: &Path) -> Result<Variety, IngestError> {
    path.file_stem()
        .and_then(|s| s.to_str())
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IngestError::BadFileName(path.to_path_buf()))
}

/// A dictionary TSV, rows split but not yet parsed. Rows that do not even
/// form a raw entry (wrong column count, empty fields) land in `bad_rows`.
#[derive(Debug, Clone)]
pub struct DictionaryFile {
    pub variety: Variety,
    pub entries: Vec<RawEntry>,
    pub bad_rows: Vec<(usize, String)>,
}

/// Reads `romansh<TAB>german<TAB>pos<TAB>gender` rows; columns 3–4 may be
/// empty or missing. The variety comes from the file name stem.
pub fn read_dictionary_tsv(path: &Path) -> Result<DictionaryFile, IngestError> {
    let variety = variety_from_stem(path)?;
    let text = read_file(path)?;
    let mut entries = Vec::new();
    let mut bad_rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cells.len() > 4 {
            bad_rows.push((line_no, format!("expected at most 4 columns, found {}", cells.len())));
            continue;
        }
        let field = |i: usize| cells.get(i).copied().unwrap_or("").to_string();
        match RawEntry::new(field(0), field(1), Some(field(2)), Some(field(3)), line_no) {
            Ok(entry) => entries.push(entry),
            Err(e) => bad_rows.push((line_no, e.to_string())),
        }
    }
    Ok(DictionaryFile {
        variety,
        entries,
        bad_rows,
    })
}

/// One machine-generated inflection-table row.
#[derive(Debug, Clone, PartialEq)]
pub struct InflectionRow {
    pub surface: String,
    pub lemma: String,
    pub features: FeatureBundle,
    pub line: usize,
}

/// Reads `form<TAB>lemma<TAB>features` rows. These files are generated, so
/// any malformed row is a hard error.
pub fn read_inflections_tsv(path: &Path) -> Result<Vec<InflectionRow>, IngestError> {
    let text = read_file(path)?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| IngestError::BadInflection {
            path: path.to_path_buf(),
            line: line_no,
            reason,
        };
        let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [surface, lemma, features] = cells.as_slice() else {
            return Err(bad(format!("expected 3 columns, found {}", cells.len())));
        };
        let features: FeatureBundle = features.parse().map_err(|e| bad(format!("{e}")))?;
        rows.push(InflectionRow {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            features,
            line: line_no,
        });
    }
    Ok(rows)
}

/// Reads a fallback vocabulary: one word per line, `#` comments allowed.
pub fn read_wordlist(path: &Path) -> Result<Vec<String>, IngestError> {
    Ok(read_file(path)?
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PatternTally {
    pub parsed: usize,
    pub rejected: usize,
}

/// What happened during one variety's compilation.
#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    pub variety: Variety,
    pub entries_total: usize,
    pub entries_parsed: usize,
    pub entries_unsupported: usize,
    pub entries_malformed: usize,
    pub records_from_entries: usize,
    pub inflection_rows: usize,
    pub inflection_records: usize,
    /// Inflection rows whose lemma has no dictionary record of the same part
    /// of speech; they are kept with an empty gloss.
    pub inflection_orphans: usize,
    pub fallback_words: usize,
    /// `"<POS> <signature>"` → how many entries parsed vs. were rejected.
    pub patterns: BTreeMap<String, PatternTally>,
    /// Human-readable rejection and malformation messages, in line order.
    pub diagnostics: Vec<String>,
    pub stats: LexiconStats,
}

/// Compiles one variety: parses every dictionary entry, attaches inflection
/// rows (inheriting glosses from same-lemma, same-POS dictionary records),
/// folds in the fallback vocabulary, and builds the lexicon.
pub fn compile_variety(
    dictionary: &DictionaryFile,
    inflections: &[InflectionRow],
    fallback: Vec<String>,
    inv: &MtInventory,
) -> Result<(Lexicon, BuildReport), IngestError> {
    let variety = dictionary.variety;
    let mut records: Vec<FormRecord> = Vec::new();
    let mut patterns: BTreeMap<String, PatternTally> = BTreeMap::new();
    let mut diagnostics: Vec<String> = dictionary
        .bad_rows
        .iter()
        .map(|(line, reason)| format!("line {line}: malformed row: {reason}"))
        .collect();
    let mut entries_parsed = 0usize;
    let mut entries_unsupported = 0usize;
    let mut entries_malformed = dictionary.bad_rows.len();

    for entry in &dictionary.entries {
        match parse_entry(entry, variety, inv) {
            Ok(mut parsed) => {
                entries_parsed += 1;
                let key = pattern_key(parsed[0].features.pos(), entry, inv);
                patterns.entry(key).or_default().parsed += 1;
                records.append(&mut parsed);
            }
            Err(ParseError::Unsupported {
                line,
                pos,
                signature,
            }) => {
                entries_unsupported += 1;
                patterns
                    .entry(format!("{pos} {signature}"))
                    .or_default()
                    .rejected += 1;
                diagnostics.push(format!(
                    "line {line}: unsupported pattern `{signature}` ({pos})"
                ));
            }
            Err(e @ ParseError::Malformed { .. }) => {
                entries_malformed += 1;
                diagnostics.push(e.to_string());
            }
        }
    }
    let records_from_entries = records.len();

    // Dictionary glosses attach to lemmas; inflected forms inherit every
    // distinct gloss their lemma carries for the same part of speech.
    let mut donors: BTreeMap<(String, PosCategory), BTreeSet<String>> = BTreeMap::new();
    for record in &records {
        donors
            .entry((norm::normalize_key(&record.lemma), record.features.pos()))
            .or_default()
            .insert(record.gloss.clone());
    }
    let mut inflection_records = 0usize;
    let mut inflection_orphans = 0usize;
    for row in inflections {
        let bad = |reason: String| IngestError::BadInflection {
            path: PathBuf::new(),
            line: row.line,
            reason,
        };
        let key = (norm::normalize_key(&row.lemma), row.features.pos());
        let glosses: Vec<String> = match donors.get(&key) {
            Some(set) => set.iter().cloned().collect(),
            None => {
                inflection_orphans += 1;
                vec![String::new()]
            }
        };
        for gloss in glosses {
            records.push(
                FormRecord::new(&row.surface, &row.lemma, row.features, &gloss, variety)
                    .map_err(|e| bad(e.to_string()))?,
            );
            inflection_records += 1;
        }
    }

    let fallback_words = fallback.len();
    let lexicon = Lexicon::build(records, fallback, variety)?;
    let report = BuildReport {
        variety,
        entries_total: dictionary.entries.len() + dictionary.bad_rows.len(),
        entries_parsed,
        entries_unsupported,
        entries_malformed,
        records_from_entries,
        inflection_rows: inflections.len(),
        inflection_records,
        inflection_orphans,
        fallback_words,
        patterns,
        diagnostics,
        stats: *lexicon.stats(),
    };
    Ok((lexicon, report))
}

fn pattern_key(pos: PosCategory, entry: &RawEntry, inv: &MtInventory) -> String {
    match crate::entry_parser::compute_signature(entry, inv) {
        Ok(signature) => format!("{pos} {signature}"),
        Err(_) => format!("{pos} ?"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    const VALLADER_TSV: &str = "\
fomant\u{00e0}, fomantada\tausgehungert\tadj\t
fomant\u{00e0}, fomantada\thungrig\tadj\t
fomantada\tAusgehungerte\t\tf
fomantada\tHungrige\t\tf
fomantar\tjn aushungern\tv\t
esser\tsein\tv\t
avair fom\tHunger haben\tv\t
antalg(iant\tfalsch\tadj\t
";

    const VALLADER_INFL: &str = "\
fomantada\tfomantar\tPoS=V; VerbForm=PTCP; Tense=PST; Gender=FEM; Number=SG
eira\tesser\tV;FIN;IMPF;3;SG
";

    #[test]
    fn dictionary_reader_splits_and_flags_rows() {
        let dir = tempdir().unwrap();
        let path = write(
            dir.path(),
            "vallader.tsv",
            "pled\tWort\tn\tm\n\n\tleer\t\t\na\tb\tc\td\te\n",
        );
        let dict = read_dictionary_tsv(&path).unwrap();
        assert_eq!(dict.variety, Variety::Vallader);
        assert_eq!(dict.entries.len(), 1);
        assert_eq!(dict.entries[0].pos_hint.as_deref(), Some("n"));
        assert_eq!(dict.entries[0].gender_hint.as_deref(), Some("m"));
        assert_eq!(dict.entries[0].source_line, 1);
        // Line 3 has an empty Romansh cell, line 4 has five columns.
        assert_eq!(dict.bad_rows.len(), 2);
        assert_eq!(dict.bad_rows[0].0, 3);
        assert_eq!(dict.bad_rows[1].0, 4);
    }

    #[test]
    fn file_stem_must_name_a_variety() {
        let dir = tempdir().unwrap();
        let path = write(dir.path(), "klingon.tsv", "pled\tWort\n");
        assert!(matches!(
            read_dictionary_tsv(&path),
            Err(IngestError::BadFileName(_))
        ));
        let aliased = write(dir.path(), "rm-vallader.tsv", "pled\tWort\n");
        assert_eq!(
            read_dictionary_tsv(&aliased).unwrap().variety,
            Variety::Vallader
        );
    }

    #[test]
    fn inflection_reader_parses_both_feature_notations() {
        let dir = tempdir().unwrap();
        let path = write(dir.path(), "vallader.tsv", VALLADER_INFL);
        let rows = read_inflections_tsv(&path).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(
            rows[0].features.to_string(),
            "PoS=V; VerbForm=PTCP; Tense=PST; Gender=FEM; Number=SG"
        );
        assert_eq!(
            rows[1].features.to_string(),
            "PoS=V; VerbForm=FIN; Tense=IMPF; Person=3; Number=SG"
        );
    }

    #[test]
    fn inflection_reader_rejects_bad_rows() {
        let dir = tempdir().unwrap();
        let two_cols = write(dir.path(), "a.tsv", "eira\tesser\n");
        assert!(matches!(
            read_inflections_tsv(&two_cols),
            Err(IngestError::BadInflection { line: 1, .. })
        ));
        let bad_features = write(dir.path(), "b.tsv", "eira\tesser\tV;XYZZY\n");
        assert!(matches!(
            read_inflections_tsv(&bad_features),
            Err(IngestError::BadInflection { line: 1, .. })
        ));
    }

    #[test]
    fn wordlist_reader_skips_comments() {
        let dir = tempdir().unwrap();
        let path = write(dir.path(), "fallback.txt", "# cities\nZ\u{00fc}rich\n\nchur\n");
        assert_eq!(read_wordlist(&path).unwrap(), vec!["Z\u{00fc}rich", "chur"]);
    }

    fn compiled() -> (Lexicon, BuildReport) {
        let dir = tempdir().unwrap();
        let dict_path = write(dir.path(), "vallader.tsv", VALLADER_TSV);
        let infl_path = write(dir.path(), "vallader-infl.tsv", VALLADER_INFL);
        let dict = read_dictionary_tsv(&dict_path).unwrap();
        let rows = read_inflections_tsv(&infl_path).unwrap();
        compile_variety(
            &dict,
            &rows,
            vec!["Z\u{00fc}rich".to_string()],
            &MtInventory::default(),
        )
        .unwrap()
    }

    #[test]
    fn report_partitions_entries() {
        let (_, report) = compiled();
        assert_eq!(report.entries_total, 8);
        assert_eq!(report.entries_parsed, 6);
        assert_eq!(report.entries_unsupported, 1, "multi-word verb");
        assert_eq!(report.entries_malformed, 1, "unbalanced parenthesis");
        assert_eq!(
            report.entries_total,
            report.entries_parsed + report.entries_unsupported + report.entries_malformed
        );
        assert_eq!(report.records_from_entries, 2 + 2 + 1 + 1 + 1 + 1);
        assert_eq!(report.inflection_rows, 2);
        assert_eq!(report.inflection_records, 2);
        assert_eq!(report.inflection_orphans, 0);
        assert_eq!(report.fallback_words, 1);
        assert_eq!(report.patterns["ADJ w, w"].parsed, 2);
        assert_eq!(report.patterns["V w+"].rejected, 1);
        assert!(!report.diagnostics.is_empty());
    }

    #[test]
    fn compiled_lexicon_reproduces_the_lookup_table() {
        let (lexicon, _) = compiled();
        let rows: Vec<(String, String, String)> = lexicon
            .lookup("fomantada")
            .iter()
            .map(|a| (a.lemma.clone(), a.features.to_string(), a.gloss.clone()))
            .collect();
        let expected = vec![
            ("fomant\u{00e0}", "PoS=ADJ; Gender=FEM; Number=SG", "ausgehungert"),
            ("fomant\u{00e0}", "PoS=ADJ; Gender=FEM; Number=SG", "hungrig"),
            ("fomantada", "PoS=N; Gender=FEM; Number=SG", "Ausgehungerte"),
            ("fomantada", "PoS=N; Gender=FEM; Number=SG", "Hungrige"),
            (
                "fomantar",
                "PoS=V; VerbForm=PTCP; Tense=PST; Gender=FEM; Number=SG",
                "jn aushungern",
            ),
        ];
        let expected: Vec<(String, String, String)> = expected
            .into_iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        assert_eq!(rows, expected);
    }

    #[test]
    fn inflections_inherit_their_lemmas_gloss() {
        let (lexicon, _) = compiled();
        let eira = lexicon.lookup("eira");
        assert_eq!(eira.len(), 1);
        assert_eq!(eira[0].lemma, "esser");
        assert_eq!(eira[0].gloss, "sein");
    }

    #[test]
    fn orphan_inflections_keep_an_empty_gloss() {
        let dir = tempdir().unwrap();
        let dict_path = write(dir.path(), "puter.tsv", "pled\tWort\tn\tm\n");
        let dict = read_dictionary_tsv(&dict_path).unwrap();
        let rows = vec![InflectionRow {
            surface: "novas".into(),
            lemma: "nova".into(),
            features: "N;FEM;PL".parse().unwrap(),
            line: 1,
        }];
        let (lexicon, report) =
            compile_variety(&dict, &rows, Vec::new(), &MtInventory::default()).unwrap();
        assert_eq!(report.inflection_orphans, 1);
        let novas = lexicon.lookup("novas");
        assert_eq!(novas.len(), 1);
        assert_eq!(novas[0].gloss, "");
    }

    #[test]
    fn multiword_entries_are_counted_but_not_stored() {
        let (lexicon, report) = compiled();
        assert!(lexicon.lookup("avair").is_empty());
        assert_eq!(report.patterns["V w+"].rejected, 1);
        // The two multi-token words never reach the vocabulary.
        assert_eq!(lexicon.is_known("fom"), crate::lexicon::KnownStatus::Unknown);
    }
}
