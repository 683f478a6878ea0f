//! Text-level analysis: tokenize, resolve a variety (explicit or detected),
//! and look every token up in that variety's lexicon.

use serde::Serialize;
use thiserror::Error;

use crate::classifier::{self, ClassifierError};
use crate::lexicon::{KnownStatus, LexiconSet};
use crate::model::{Analysis, Variety};
use crate::tokenizer::{tokenize, TokenizerConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LemmatizerError {
    #[error("no lexicons loaded")]
    NoLexicons,
    #[error("no lexicon loaded for variety {0}")]
    UnknownVariety(Variety),
    #[error("no tokens in input")]
    EmptyInput,
}

impl From<ClassifierError> for LemmatizerError {
    fn from(err: ClassifierError) -> Self {
        match err {
            ClassifierError::NoLexicons => LemmatizerError::NoLexicons,
            _ => LemmatizerError::EmptyInput,
        }
    }
}

/// One input token with every analysis the resolved lexicon offers.
/// `analyses` is non-empty exactly when `known` is `Lemmatizable`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TokenAnalysis {
    pub token: String,
    pub known: KnownStatus,
    pub analyses: Vec<Analysis>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmatizedText {
    pub variety: Variety,
    pub tokens: Vec<TokenAnalysis>,
}

/// Analyzes `text` against one variety, detecting the variety first when
/// none is given. Output has one entry per token, in input order.
pub fn lemmatize(
    text: &str,
    variety: Option<Variety>,
    lexicons: &LexiconSet,
    config: &TokenizerConfig,
) -> Result<LemmatizedText, LemmatizerError> {
    if lexicons.is_empty() {
        return Err(LemmatizerError::NoLexicons);
    }
    let tokens = tokenize(text, config);
    if tokens.is_empty() {
        return Err(LemmatizerError::EmptyInput);
    }
    let variety = match variety {
        Some(v) => v,
        None => classifier::identify_variety_tokens(&tokens, lexicons)?.winning_variety,
    };
    let lexicon = lexicons
        .get(variety)
        .ok_or(LemmatizerError::UnknownVariety(variety))?;
    let tokens = tokens
        .into_iter()
        .map(|token| {
            let analyses = lexicon.lookup(&token).to_vec();
            let known = lexicon.is_known(&token);
            TokenAnalysis {
                token,
                known,
                analyses,
            }
        })
        .collect();
    Ok(LemmatizedText { variety, tokens })
}

/// Union of analyses for one token across every loaded lexicon, in canonical
/// variety order and canonical analysis order within a variety.
pub fn lemmatize_all_varieties(token: &str, lexicons: &LexiconSet) -> Vec<Analysis> {
    let mut analyses: Vec<Analysis> = lexicons
        .iter()
        .flat_map(|lexicon| lexicon.lookup(token).iter().cloned())
        .collect();
    analyses.sort_by(|a, b| {
        a.variety
            .cmp(&b.variety)
            .then_with(|| a.canonical_cmp(b))
    });
    analyses
}
