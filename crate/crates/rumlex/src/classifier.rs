//! Variety identification by lemmatizable-token ratio, Romansh-vs-other
//! language identification, and threshold calibration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::{KnownStatus, Lexicon, LexiconSet};
use crate::model::Variety;
use crate::norm;
use crate::tokenizer::{tokenize, TokenizerConfig};

/// Sentence punctuation removed before scoring; other punctuation tokens
/// stay and count as unknown.
pub const SENTENCE_PUNCTUATION: [char; 6] = ['.', ',', '!', '?', ';', ':'];

pub const DEFAULT_LID_THRESHOLD: f64 = 0.6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("no lexicons loaded")]
    NoLexicons,
    #[error("no tokens to score")]
    EmptyInput,
    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("score {0} is not a ratio in [0, 1]")]
    InvalidScore(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreMode {
    AsIs,
    SetOfWords,
    SetOfWordsNoStopwords,
}

impl ScoreMode {
    pub fn label(self) -> &'static str {
        match self {
            ScoreMode::AsIs => "as-is",
            ScoreMode::SetOfWords => "set-of-words",
            ScoreMode::SetOfWordsNoStopwords => "set-of-words-no-stopwords",
        }
    }
}

impl fmt::Display for ScoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ScoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().replace('_', "-").as_str() {
            "as-is" | "asis" => Ok(ScoreMode::AsIs),
            "set-of-words" | "setofwords" => Ok(ScoreMode::SetOfWords),
            "set-of-words-no-stopwords" | "setofwordsnostopwords" => {
                Ok(ScoreMode::SetOfWordsNoStopwords)
            }
            other => Err(format!(
                "unknown score mode `{other}` (expected as-is, set-of-words, \
                 set-of-words-no-stopwords)"
            )),
        }
    }
}

/// Per-variety known-token ratios for one text.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub scores: std::collections::BTreeMap<Variety, f64>,
    pub winning_variety: Variety,
    pub winning_score: f64,
    /// Number of tokens actually scored (after punctuation removal and mode
    /// preprocessing).
    pub token_count: usize,
    pub mode: ScoreMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LidDecision {
    #[serde(flatten)]
    pub report: ScoreReport,
    pub threshold: f64,
    pub is_romansh: bool,
}

/// Calibrated decision threshold: fewest misclassifications first, then the
/// widest margin to the nearest score, then the lowest threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdChoice {
    pub threshold: f64,
    pub misclassified: usize,
    pub margin: f64,
}

fn is_sentence_punctuation(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| SENTENCE_PUNCTUATION.contains(&c))
}

/// Drops tokens made up entirely of sentence punctuation.
pub fn strip_punctuation(tokens: &[String]) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !is_sentence_punctuation(t))
        .cloned()
        .collect()
}

/// Fraction of tokens the lexicon knows (lemmatizable or fallback).
pub fn score_variety(tokens: &[String], lexicon: &Lexicon) -> Result<f64, ClassifierError> {
    if tokens.is_empty() {
        return Err(ClassifierError::EmptyInput);
    }
    let known = tokens
        .iter()
        .filter(|t| lexicon.is_known(t) != KnownStatus::Unknown)
        .count();
    Ok(known as f64 / tokens.len() as f64)
}

/// AsIs keeps the stream; SetOfWords deduplicates (first occurrence wins,
/// case-folded); SetOfWordsNoStopwords additionally drops stopwords.
pub fn preprocess_for_lid(
    tokens: &[String],
    mode: ScoreMode,
    stopwords: &BTreeSet<String>,
) -> Vec<String> {
    match mode {
        ScoreMode::AsIs => tokens.to_vec(),
        ScoreMode::SetOfWords | ScoreMode::SetOfWordsNoStopwords => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for token in tokens {
                let key = norm::normalize_key(token);
                if mode == ScoreMode::SetOfWordsNoStopwords && stopwords.contains(&key) {
                    continue;
                }
                if seen.insert(key) {
                    out.push(token.clone());
                }
            }
            out
        }
    }
}

/// Scores preprocessed tokens against every loaded lexicon.
pub fn score_report_tokens(
    tokens: &[String],
    lexicons: &LexiconSet,
    mode: ScoreMode,
    stopwords: &BTreeSet<String>,
) -> Result<ScoreReport, ClassifierError> {
    if lexicons.is_empty() {
        return Err(ClassifierError::NoLexicons);
    }
    let tokens = preprocess_for_lid(&strip_punctuation(tokens), mode, stopwords);
    if tokens.is_empty() {
        return Err(ClassifierError::EmptyInput);
    }
    let mut scores = std::collections::BTreeMap::new();
    for lexicon in lexicons.iter() {
        scores.insert(lexicon.variety(), score_variety(&tokens, lexicon)?);
    }
    // Map iteration is canonical variety order, so keeping the first strict
    // maximum implements the canonical-order tie-break.
    let (winning_variety, winning_score) = scores
        .iter()
        .fold(None, |best: Option<(Variety, f64)>, (&v, &s)| match best {
            Some((_, bs)) if s <= bs => best,
            _ => Some((v, s)),
        })
        .expect("non-empty lexicon set");
    Ok(ScoreReport {
        scores,
        winning_variety,
        winning_score,
        token_count: tokens.len(),
        mode,
    })
}

/// Which loaded variety best explains `text`.
pub fn identify_variety(
    text: &str,
    lexicons: &LexiconSet,
) -> Result<ScoreReport, ClassifierError> {
    identify_variety_tokens(&tokenize(text, &TokenizerConfig::default()), lexicons)
}

pub fn identify_variety_tokens(
    tokens: &[String],
    lexicons: &LexiconSet,
) -> Result<ScoreReport, ClassifierError> {
    score_report_tokens(tokens, lexicons, ScoreMode::AsIs, &BTreeSet::new())
}

/// Is `text` Romansh at all? Winning score against the loaded varieties,
/// thresholded. `stopwords` is consulted only in the no-stopwords mode.
pub fn identify_language(
    text: &str,
    lexicons: &LexiconSet,
    mode: ScoreMode,
    threshold: f64,
    stopwords: &BTreeSet<String>,
) -> Result<LidDecision, ClassifierError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(ClassifierError::InvalidThreshold(threshold));
    }
    let tokens = tokenize(text, &TokenizerConfig::default());
    let report = score_report_tokens(&tokens, lexicons, mode, stopwords)?;
    let is_romansh = report.winning_score >= threshold;
    Ok(LidDecision {
        report,
        threshold,
        is_romansh,
    })
}

/// Mean per-variety score (the inferior alternative to the winning score).
pub fn average_score(
    text: &str,
    lexicons: &LexiconSet,
    mode: ScoreMode,
    stopwords: &BTreeSet<String>,
) -> Result<f64, ClassifierError> {
    let tokens = tokenize(text, &TokenizerConfig::default());
    let report = score_report_tokens(&tokens, lexicons, mode, stopwords)?;
    Ok(report.scores.values().sum::<f64>() / report.scores.len() as f64)
}

/// Picks the threshold separating positive (Romansh) from negative scores.
///
/// Candidates are 0, 1, and the midpoints between adjacent distinct pooled
/// scores. A score below the threshold is classified negative, at or above
/// it positive.
pub fn find_threshold(
    positive: &[f64],
    negative: &[f64],
) -> Result<ThresholdChoice, ClassifierError> {
    if positive.is_empty() || negative.is_empty() {
        return Err(ClassifierError::EmptyInput);
    }
    for &score in positive.iter().chain(negative) {
        if !(0.0..=1.0).contains(&score) {
            return Err(ClassifierError::InvalidScore(score));
        }
    }
    let mut pos = positive.to_vec();
    pos.sort_by(f64::total_cmp);
    let mut neg = negative.to_vec();
    neg.sort_by(f64::total_cmp);
    let mut pooled: Vec<f64> = pos.iter().chain(&neg).copied().collect();
    pooled.sort_by(f64::total_cmp);
    pooled.dedup();

    let mut candidates = vec![0.0, 1.0];
    candidates.extend(pooled.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut best: Option<ThresholdChoice> = None;
    for &threshold in &candidates {
        let missed_pos = pos.partition_point(|&s| s < threshold);
        let missed_neg = neg.len() - neg.partition_point(|&s| s < threshold);
        let split = pooled.partition_point(|&s| s < threshold);
        let below = split.checked_sub(1).map(|i| threshold - pooled[i]);
        let above = pooled.get(split).map(|&s| s - threshold);
        let margin = match (below, above) {
            (Some(b), Some(a)) => b.min(a),
            (Some(b), None) => b,
            (None, Some(a)) => a,
            (None, None) => unreachable!("pooled scores are non-empty"),
        };
        let candidate = ThresholdChoice {
            threshold,
            misclassified: missed_pos + missed_neg,
            margin,
        };
        // Candidates ascend, so replacing only on strict improvement keeps
        // the lowest threshold among full ties.
        let improves = match best {
            None => true,
            Some(cur) => {
                candidate.misclassified < cur.misclassified
                    || (candidate.misclassified == cur.misclassified
                        && candidate.margin > cur.margin)
            }
        };
        if improves {
            best = Some(candidate);
        }
    }
    Ok(best.expect("candidate list is non-empty"))
}

/// Merged French/Italian/Catalan/Romanian stopword list shipped with the
/// crate.
pub fn default_stopwords() -> BTreeSet<String> {
    let files = [
        include_str!("../data/stopwords/fr.txt"),
        include_str!("../data/stopwords/it.txt"),
        include_str!("../data/stopwords/ca.txt"),
        include_str!("../data/stopwords/ro.txt"),
    ];
    let mut set = BTreeSet::new();
    for file in files {
        set.extend(parse_stopword_lines(file));
    }
    set
}

/// One word per line; blank lines and `#` comments are ignored.
pub fn parse_stopword_lines(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(norm::normalize_key)
        .collect()
}
