//! Skeleton test-case files: one pattern per file, holding a representative
//! entry and, once annotated by hand, the gold records the parser must
//! produce for it.
//!
//! Layout of an annotated file:
//!
//! ```text
//! # pattern: w, w
//! # pos: ADJ
//! # occurrences: 15
//! 'antalg(iant)evel, antalg(iant)evla'; adj
//! >>> antalgevel:
//!         antalgevel; ADJ;MASC;SG
//!         antalgevla; ADJ;FEM;SG
//!     antalgiantevel:
//!         antalgiantevel; ADJ;MASC;SG
//!         antalgiantevla; ADJ;FEM;SG
//! ```
//!
//! `>>>` opens the gold block; a line ending in `:` names the lemma the
//! following forms map to. Form lines accept `;` or `:` between the form and
//! its features, and features may use the compact or the key=value notation.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::model::{FeatureBundle, FormRecord, RawEntry, Variety};

use super::{compute_signature, resolve_pos, MtInventory, ParseError, SkeletonCase};

/// Placeholder used when a skeleton entry line carries no German side; the
/// gold comparison never looks at glosses.
pub(crate) const GLOSS_PLACEHOLDER: &str = "-";

fn render_entry_line(entry: &RawEntry) -> String {
    let mut line = format!("'{}'", entry.romansh_field);
    if let Some(pos) = &entry.pos_hint {
        line.push_str("; ");
        line.push_str(pos);
    }
    if let Some(gender) = &entry.gender_hint {
        line.push_str("; ");
        line.push_str(gender);
    }
    if entry.german_field != GLOSS_PLACEHOLDER {
        line.push_str("; ");
        line.push_str(&entry.german_field);
    }
    line
}

/// Renders one skeleton case, including the gold block when it is annotated.
pub fn render_skeleton(case: &SkeletonCase) -> String {
    let mut out = String::new();
    out.push_str(&format!("# pattern: {}\n", case.signature));
    out.push_str(&format!("# pos: {}\n", case.pos));
    out.push_str(&format!("# occurrences: {}\n", case.occurrence_count));
    out.push_str(&render_entry_line(&case.example_entry));
    out.push('\n');
    if case.gold_records.is_empty() {
        out.push_str(">>>\n");
        return out;
    }
    let mut current_lemma: Option<&str> = None;
    let mut first = true;
    for record in &case.gold_records {
        if current_lemma != Some(record.lemma.as_str()) {
            current_lemma = Some(record.lemma.as_str());
            if first {
                out.push_str(&format!(">>> {}:\n", record.lemma));
                first = false;
            } else {
                out.push_str(&format!("    {}:\n", record.lemma));
            }
        }
        out.push_str(&format!(
            "        {}; {}\n",
            record.surface,
            record.features.to_compact()
        ));
    }
    out
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn looks_like_gender(text: &str) -> bool {
    let lowered = text.to_lowercase();
    let stripped = lowered.strip_suffix('.').unwrap_or(&lowered);
    stripped
        .split('/')
        .all(|part| matches!(part, "m" | "f"))
}

fn looks_like_pos(text: &str) -> bool {
    let lowered = text.to_lowercase();
    let stripped = lowered.strip_suffix('.').unwrap_or(&lowered);
    !stripped.is_empty()
        && stripped.len() <= 6
        && stripped.chars().all(|c| c.is_ascii_lowercase())
}

fn parse_entry_line(text: &str, line_no: usize) -> Result<RawEntry, ParseError> {
    let text = text.trim();
    let rest = text
        .strip_prefix('\'')
        .ok_or_else(|| malformed(line_no, "entry line must start with a quoted field"))?;
    let close = rest
        .rfind('\'')
        .ok_or_else(|| malformed(line_no, "unterminated quote on entry line"))?;
    let romansh = &rest[..close];
    let mut pos_hint = None;
    let mut gender_hint = None;
    let mut german = None;
    for component in rest[close + 1..].split(';').map(str::trim) {
        if component.is_empty() {
            continue;
        }
        if gender_hint.is_none() && german.is_none() && looks_like_gender(component) {
            gender_hint = Some(component.to_string());
        } else if pos_hint.is_none() && german.is_none() && looks_like_pos(component) {
            pos_hint = Some(component.to_string());
        } else if german.is_none() {
            german = Some(component.to_string());
        } else {
            return Err(malformed(line_no, "too many components on entry line"));
        }
    }
    RawEntry::new(
        romansh,
        german.unwrap_or_else(|| GLOSS_PLACEHOLDER.to_string()),
        pos_hint,
        gender_hint,
        line_no,
    )
    .map_err(|e| malformed(line_no, e.to_string()))
}

/// Parses one skeleton file. `variety` is attached to the gold records; the
/// files themselves are variety-agnostic.
pub fn parse_skeleton_file(
    text: &str,
    variety: Variety,
    inv: &MtInventory,
) -> Result<SkeletonCase, ParseError> {
    let mut occurrence_count = 0usize;
    let mut entry: Option<RawEntry> = None;
    let mut in_gold = false;
    let mut current_lemma: Option<String> = None;
    let mut gold_records: Vec<FormRecord> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(count) = comment.trim().strip_prefix("occurrences:") {
                occurrence_count = count.trim().parse().unwrap_or(0);
            }
            continue;
        }
        if entry.is_none() {
            entry = Some(parse_entry_line(line, line_no)?);
            continue;
        }
        if let Some(stripped) = line.strip_prefix(">>>") {
            if in_gold {
                return Err(malformed(line_no, "duplicate `>>>` marker"));
            }
            in_gold = true;
            line = stripped.trim();
            if line.is_empty() {
                continue;
            }
        }
        if !in_gold {
            return Err(malformed(line_no, "expected `>>>` before gold lines"));
        }
        // Lemma headers end in `:` with nothing after; anything else is a
        // form line of `form[;:] features`.
        if let Some(header) = line.strip_suffix(':') {
            if !header.contains([';', ':']) {
                current_lemma = Some(header.trim().to_string());
                continue;
            }
        }
        let split_at = line
            .find([';', ':'])
            .ok_or_else(|| malformed(line_no, "form line without feature separator"))?;
        let form = line[..split_at].trim();
        let features_text = line[split_at + 1..].trim();
        let features: FeatureBundle = features_text
            .parse()
            .map_err(|e: crate::model::ModelError| malformed(line_no, e.to_string()))?;
        let lemma = current_lemma
            .clone()
            .ok_or_else(|| malformed(line_no, "form line before any lemma header"))?;
        let record = FormRecord::new(form, &lemma, features, "", variety)
            .map_err(|e| malformed(line_no, e.to_string()))?;
        gold_records.push(record);
    }

    let entry = entry.ok_or_else(|| malformed(0, "skeleton file without an entry line"))?;
    let signature = compute_signature(&entry, inv)?;
    let pos = resolve_pos(&entry, inv);
    Ok(SkeletonCase {
        pos,
        signature,
        occurrence_count,
        example_entry: entry,
        gold_records,
    })
}

fn slugify(rendered: &str) -> String {
    rendered
        .chars()
        .filter_map(|c| match c {
            ' ' => None,
            ',' => Some('-'),
            ';' => Some('+'),
            '(' => Some('['),
            ')' => Some(']'),
            other => Some(other.to_ascii_lowercase()),
        })
        .collect()
}

/// Writes one file per skeleton case into `dir` and returns the paths.
/// File names are `<pos>_<rank>_<pattern-slug>.txt` in the given order.
pub fn write_skeletons(cases: &[SkeletonCase], dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (rank, case) in cases.iter().enumerate() {
        let name = format!(
            "{}_{:02}_{}.txt",
            case.pos.as_str().to_ascii_lowercase(),
            rank + 1,
            slugify(case.signature.rendered())
        );
        let path = dir.join(name);
        fs::write(&path, render_skeleton(case))?;
        paths.push(path);
    }
    Ok(paths)
}
