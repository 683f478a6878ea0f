//! Evaluation harness: coverage tables, variety-identification accuracy
//! tables, and language-identification score distributions with per-bucket
//! threshold calibration. Corpora come in as JSON lines; tables go out as
//! TSV or pretty text, histograms as CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classifier::{
    self, find_threshold, score_report_tokens, strip_punctuation, ClassifierError, ScoreMode,
    ThresholdChoice,
};
use crate::lexicon::{KnownStatus, Lexicon, LexiconSet};
use crate::model::Variety;
use crate::tokenizer::{tokenize, TokenizerConfig};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no samples to evaluate")]
    EmptyInput,
    #[error("sample {sample} is missing its {label} label")]
    MissingLabel { sample: String, label: &'static str },
    #[error("no lexicon loaded for variety {0}")]
    MissingLexicon(Variety),
    #[error("bad sample on line {line}: {reason}")]
    BadSample { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Token-count interval `[lower, upper)`; open-ended when `upper` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthBucket {
    pub lower: usize,
    pub upper: Option<usize>,
}

impl LengthBucket {
    pub const fn new(lower: usize, upper: usize) -> Self {
        LengthBucket {
            lower,
            upper: Some(upper),
        }
    }

    pub const fn open(lower: usize) -> Self {
        LengthBucket { lower, upper: None }
    }

    pub fn contains(&self, count: usize) -> bool {
        count >= self.lower && self.upper.is_none_or(|u| count < u)
    }
}

impl fmt::Display for LengthBucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(upper) => write!(f, "{}-{}", self.lower, upper),
            None => write!(f, "{}+", self.lower),
        }
    }
}

impl Serialize for LengthBucket {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Buckets of the variety-identification accuracy table.
pub const VARIETY_BUCKETS: [LengthBucket; 5] = [
    LengthBucket::new(2, 10),
    LengthBucket::new(10, 50),
    LengthBucket::new(50, 300),
    LengthBucket::new(300, 800),
    LengthBucket::open(800),
];

/// Buckets of the language-identification distribution analysis.
pub const LID_BUCKETS: [LengthBucket; 3] = [
    LengthBucket::new(50, 300),
    LengthBucket::new(300, 800),
    LengthBucket::new(800, 2000),
];

pub fn bucket_for(count: usize, buckets: &[LengthBucket]) -> Option<LengthBucket> {
    buckets.iter().copied().find(|b| b.contains(count))
}

/// One evaluation text, tokenized once up front. `tokens` and `token_count`
/// exclude sentence punctuation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub id: String,
    pub text: String,
    pub gold_variety: Option<Variety>,
    pub gold_language: Option<String>,
    pub tokens: Vec<String>,
    pub token_count: usize,
}

impl LabeledSample {
    pub fn prepare(
        id: impl Into<String>,
        text: impl Into<String>,
        gold_variety: Option<Variety>,
        gold_language: Option<String>,
        config: &TokenizerConfig,
    ) -> Self {
        let text = text.into();
        let tokens = strip_punctuation(&tokenize(&text, config));
        let token_count = tokens.len();
        LabeledSample {
            id: id.into(),
            text,
            gold_variety,
            gold_language,
            tokens,
            token_count,
        }
    }
}

#[derive(serde::Deserialize)]
struct RawSample {
    id: Option<String>,
    text: String,
    variety: Option<String>,
    language: Option<String>,
}

/// Reads JSON-lines samples: `{"id": …, "text": …, "variety"?: …,
/// "language"?: …}`. Blank lines are skipped; a missing id becomes the line
/// number.
pub fn read_samples_jsonl<R: BufRead>(
    reader: R,
    config: &TokenizerConfig,
) -> Result<Vec<LabeledSample>, EvalError> {
    let mut samples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawSample =
            serde_json::from_str(&line).map_err(|e| EvalError::BadSample {
                line: line_no,
                reason: e.to_string(),
            })?;
        let gold_variety = raw
            .variety
            .map(|v| {
                v.parse::<Variety>().map_err(|e| EvalError::BadSample {
                    line: line_no,
                    reason: e.to_string(),
                })
            })
            .transpose()?;
        samples.push(LabeledSample::prepare(
            raw.id.unwrap_or_else(|| line_no.to_string()),
            raw.text,
            gold_variety,
            raw.language,
            config,
        ));
    }
    Ok(samples)
}

/// Lemmatizable tokens over total tokens; fallback-only matches do not count
/// as covered.
pub fn coverage(sample: &LabeledSample, lexicon: &Lexicon) -> Result<(usize, usize), EvalError> {
    if sample.tokens.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let lemmatizable = sample
        .tokens
        .iter()
        .filter(|t| lexicon.is_known(t) == KnownStatus::Lemmatizable)
        .count();
    Ok((lemmatizable, sample.tokens.len()))
}

#[derive(Debug, Clone, Copy, Default)]
struct CoverageCell {
    ratio_sum: f64,
    samples: usize,
    lemmatizable: usize,
    total: usize,
}

impl CoverageCell {
    fn add(&mut self, lemmatizable: usize, total: usize) {
        self.ratio_sum += lemmatizable as f64 / total as f64;
        self.samples += 1;
        self.lemmatizable += lemmatizable;
        self.total += total;
    }

    fn mean(&self) -> Option<f64> {
        (self.samples > 0).then(|| self.ratio_sum / self.samples as f64)
    }

    fn pooled(&self) -> Option<f64> {
        (self.total > 0).then(|| self.lemmatizable as f64 / self.total as f64)
    }
}

/// Coverage by variety and length bucket. Cells average per-sample ratios;
/// the `All` row and column pool token totals instead.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageTable {
    pub buckets: Vec<LengthBucket>,
    pub rows: Vec<CoverageRow>,
    pub all_row: Vec<Option<f64>>,
    pub all_overall: Option<f64>,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageRow {
    pub variety: Variety,
    pub cells: Vec<Option<f64>>,
    pub all: Option<f64>,
}

pub fn coverage_table(
    samples: &[LabeledSample],
    lexicons: &LexiconSet,
    buckets: &[LengthBucket],
) -> Result<CoverageTable, EvalError> {
    let mut grid: BTreeMap<Variety, Vec<CoverageCell>> = BTreeMap::new();
    let mut skipped = 0usize;
    for sample in samples {
        let variety = sample.gold_variety.ok_or_else(|| EvalError::MissingLabel {
            sample: sample.id.clone(),
            label: "variety",
        })?;
        let lexicon = lexicons
            .get(variety)
            .ok_or(EvalError::MissingLexicon(variety))?;
        let Some(bucket_idx) = buckets.iter().position(|b| b.contains(sample.token_count))
        else {
            skipped += 1;
            continue;
        };
        match coverage(sample, lexicon) {
            Ok((lemmatizable, total)) => {
                grid.entry(variety)
                    .or_insert_with(|| vec![CoverageCell::default(); buckets.len()])
                    [bucket_idx]
                    .add(lemmatizable, total);
            }
            Err(_) => skipped += 1,
        }
    }

    let mut all_by_bucket = vec![CoverageCell::default(); buckets.len()];
    let mut all_overall = CoverageCell::default();
    let mut rows = Vec::new();
    for (variety, cells) in &grid {
        let mut row_pool = CoverageCell::default();
        for (idx, cell) in cells.iter().enumerate() {
            row_pool.lemmatizable += cell.lemmatizable;
            row_pool.total += cell.total;
            all_by_bucket[idx].lemmatizable += cell.lemmatizable;
            all_by_bucket[idx].total += cell.total;
            all_overall.lemmatizable += cell.lemmatizable;
            all_overall.total += cell.total;
        }
        rows.push(CoverageRow {
            variety: *variety,
            cells: cells.iter().map(CoverageCell::mean).collect(),
            all: row_pool.pooled(),
        });
    }
    Ok(CoverageTable {
        buckets: buckets.to_vec(),
        rows,
        all_row: all_by_bucket.iter().map(CoverageCell::pooled).collect(),
        all_overall: all_overall.pooled(),
        skipped,
    })
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    correct: usize,
    total: usize,
}

impl Tally {
    fn ratio(&self) -> Option<f64> {
        (self.total > 0).then(|| self.correct as f64 / self.total as f64)
    }
}

/// Variety-identification accuracy by gold variety and length bucket; all
/// marginals are pooled counts.
#[derive(Debug, Clone, Serialize)]
pub struct AccuracyTable {
    pub buckets: Vec<LengthBucket>,
    pub rows: Vec<AccuracyRow>,
    pub all_row: Vec<Option<f64>>,
    pub all_overall: Option<f64>,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AccuracyRow {
    pub variety: Variety,
    pub cells: Vec<Option<f64>>,
    pub all: Option<f64>,
}

pub fn variety_accuracy_table(
    samples: &[LabeledSample],
    lexicons: &LexiconSet,
    buckets: &[LengthBucket],
) -> Result<AccuracyTable, EvalError> {
    let mut grid: BTreeMap<Variety, Vec<Tally>> = BTreeMap::new();
    let mut skipped = 0usize;
    for sample in samples {
        let gold = sample.gold_variety.ok_or_else(|| EvalError::MissingLabel {
            sample: sample.id.clone(),
            label: "variety",
        })?;
        let Some(bucket_idx) = buckets.iter().position(|b| b.contains(sample.token_count))
        else {
            skipped += 1;
            continue;
        };
        let report = match classifier::identify_variety_tokens(&sample.tokens, lexicons) {
            Ok(report) => report,
            Err(ClassifierError::EmptyInput) => {
                skipped += 1;
                continue;
            }
            Err(ClassifierError::NoLexicons) => return Err(EvalError::EmptyInput),
            Err(e) => {
                return Err(EvalError::BadSample {
                    line: 0,
                    reason: e.to_string(),
                })
            }
        };
        let tally = &mut grid
            .entry(gold)
            .or_insert_with(|| vec![Tally::default(); buckets.len()])[bucket_idx];
        tally.total += 1;
        if report.winning_variety == gold {
            tally.correct += 1;
        }
    }

    let mut all_by_bucket = vec![Tally::default(); buckets.len()];
    let mut all_overall = Tally::default();
    let mut rows = Vec::new();
    for (variety, cells) in &grid {
        let mut row_pool = Tally::default();
        for (idx, cell) in cells.iter().enumerate() {
            row_pool.correct += cell.correct;
            row_pool.total += cell.total;
            all_by_bucket[idx].correct += cell.correct;
            all_by_bucket[idx].total += cell.total;
            all_overall.correct += cell.correct;
            all_overall.total += cell.total;
        }
        rows.push(AccuracyRow {
            variety: *variety,
            cells: cells.iter().map(Tally::ratio).collect(),
            all: row_pool.ratio(),
        });
    }
    Ok(AccuracyTable {
        buckets: buckets.to_vec(),
        rows,
        all_row: all_by_bucket.iter().map(Tally::ratio).collect(),
        all_overall: all_overall.ratio(),
        skipped,
    })
}

/// Labels treated as the positive (Romansh) class, case-insensitively.
pub const POSITIVE_LABELS: [&str; 3] = ["romansh", "rumantsch", "rm"];

pub fn is_positive_label(label: &str) -> bool {
    let key = crate::norm::normalize_key(label);
    POSITIVE_LABELS.contains(&key.as_str())
}

/// One histogram row of the score-distribution analysis.
#[derive(Debug, Clone, Serialize)]
pub struct LidRow {
    pub id: String,
    pub gold_language: String,
    pub winning_score: f64,
    pub winning_variety: Variety,
    pub token_count: usize,
    pub bucket: Option<LengthBucket>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BucketCalibration {
    pub bucket: LengthBucket,
    pub positives: usize,
    pub negatives: usize,
    /// Absent when the bucket lacks one of the two classes.
    pub choice: Option<ThresholdChoice>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LidEvalReport {
    pub mode: ScoreMode,
    pub rows: Vec<LidRow>,
    pub calibrations: Vec<BucketCalibration>,
    pub overall: Option<ThresholdChoice>,
    pub skipped: usize,
}

/// Scores every labeled sample, groups the winning scores into length
/// buckets, and calibrates a threshold per bucket and over the pool.
pub fn lid_distributions(
    samples: &[LabeledSample],
    lexicons: &LexiconSet,
    mode: ScoreMode,
    stopwords: &BTreeSet<String>,
    buckets: &[LengthBucket],
) -> Result<LidEvalReport, EvalError> {
    let mut rows = Vec::new();
    let mut skipped = 0usize;
    for sample in samples {
        let label = sample
            .gold_language
            .clone()
            .ok_or_else(|| EvalError::MissingLabel {
                sample: sample.id.clone(),
                label: "language",
            })?;
        let report = match score_report_tokens(&sample.tokens, lexicons, mode, stopwords) {
            Ok(report) => report,
            Err(ClassifierError::EmptyInput) => {
                skipped += 1;
                continue;
            }
            Err(ClassifierError::NoLexicons) => return Err(EvalError::EmptyInput),
            Err(e) => {
                return Err(EvalError::BadSample {
                    line: 0,
                    reason: e.to_string(),
                })
            }
        };
        rows.push(LidRow {
            id: sample.id.clone(),
            gold_language: label,
            winning_score: report.winning_score,
            winning_variety: report.winning_variety,
            token_count: sample.token_count,
            bucket: bucket_for(sample.token_count, buckets),
        });
    }

    let calibrate = |rows: &mut dyn Iterator<Item = &LidRow>| {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for row in rows {
            if is_positive_label(&row.gold_language) {
                pos.push(row.winning_score);
            } else {
                neg.push(row.winning_score);
            }
        }
        let choice = find_threshold(&pos, &neg).ok();
        (pos.len(), neg.len(), choice)
    };

    let calibrations = buckets
        .iter()
        .map(|&bucket| {
            let (positives, negatives, choice) =
                calibrate(&mut rows.iter().filter(|r| r.bucket == Some(bucket)));
            BucketCalibration {
                bucket,
                positives,
                negatives,
                choice,
            }
        })
        .collect();
    let (_, _, overall) = calibrate(&mut rows.iter());
    Ok(LidEvalReport {
        mode,
        rows,
        calibrations,
        overall,
        skipped,
    })
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

/// Histogram rows as CSV, one line per scored sample.
pub fn lid_rows_csv(rows: &[LidRow]) -> String {
    let mut out =
        String::from("id,gold_language,winning_score,winning_variety,token_count,bucket\n");
    for row in rows {
        let bucket = row.bucket.map(|b| b.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&row.id),
            csv_field(&row.gold_language),
            row.winning_score,
            row.winning_variety,
            row.token_count,
            bucket,
        ));
    }
    out
}

fn fmt_cell(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into())
}

struct Grid {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Grid {
    fn tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    fn pretty(&self) -> String {
        let columns = self.header.len();
        let mut widths = vec![0usize; columns];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (idx, cell) in row.iter().enumerate() {
                widths[idx] = widths[idx].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(idx, cell)| format!("{:<width$}", cell, width = widths[idx]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn table_grid(
    buckets: &[LengthBucket],
    rows: impl Iterator<Item = (String, Vec<Option<f64>>, Option<f64>)>,
    all_row: &[Option<f64>],
    all_overall: Option<f64>,
) -> Grid {
    let mut header = vec![String::new()];
    header.extend(buckets.iter().map(|b| b.to_string()));
    header.push("All".into());
    let mut grid_rows = Vec::new();
    for (label, cells, all) in rows {
        let mut row = vec![label];
        row.extend(cells.into_iter().map(fmt_cell));
        row.push(fmt_cell(all));
        grid_rows.push(row);
    }
    let mut all_line = vec!["All".to_string()];
    all_line.extend(all_row.iter().copied().map(fmt_cell));
    all_line.push(fmt_cell(all_overall));
    grid_rows.push(all_line);
    Grid {
        header,
        rows: grid_rows,
    }
}

impl CoverageTable {
    fn grid(&self) -> Grid {
        table_grid(
            &self.buckets,
            self.rows
                .iter()
                .map(|r| (r.variety.to_string(), r.cells.clone(), r.all)),
            &self.all_row,
            self.all_overall,
        )
    }

    pub fn to_tsv(&self) -> String {
        self.grid().tsv()
    }

    pub fn to_pretty(&self) -> String {
        self.grid().pretty()
    }
}

impl AccuracyTable {
    fn grid(&self) -> Grid {
        table_grid(
            &self.buckets,
            self.rows
                .iter()
                .map(|r| (r.variety.to_string(), r.cells.clone(), r.all)),
            &self.all_row,
            self.all_overall,
        )
    }

    pub fn to_tsv(&self) -> String {
        self.grid().tsv()
    }

    pub fn to_pretty(&self) -> String {
        self.grid().pretty()
    }
}
