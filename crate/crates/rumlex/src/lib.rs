//! Dictionary-based lemmatization, morphological analysis and variety
//! classification for the six written idioms of Romansh.
//!
//! The pipeline starts from bilingual dictionary rows, parses them into
//! form-to-lemma records via structural entry patterns, compiles per-variety
//! lexicons, and serves three tasks on top of them: lemmatization with
//! morphological features, identification of the Romansh variety of a text,
//! and Romansh-vs-other language identification.

pub mod classifier;
pub mod entry_parser;
pub mod eval;
pub mod ingest;
pub mod lemmatizer;
pub mod lexicon;
pub mod model;
pub mod norm;
pub mod tokenizer;

pub use classifier::{LidDecision, ScoreMode, ScoreReport, ThresholdChoice};
pub use lemmatizer::{LemmatizedText, TokenAnalysis};
pub use lexicon::{KnownStatus, Lexicon, LexiconSet, LexiconStats};
pub use model::{
    Analysis, FeatureBundle, FormRecord, Gender, Mood, Number, Person, PosCategory, RawEntry,
    Tense, Variety, VerbForm,
};
pub use tokenizer::TokenizerConfig;
