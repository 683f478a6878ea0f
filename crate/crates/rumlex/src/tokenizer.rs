//! Whitespace tokenization with edge-punctuation peeling and elision
//! splitting. Splits only — every character of the (display-normalized)
//! input survives in order across the emitted tokens.

use std::collections::BTreeSet;
use std::io;
use std::path::Path;

use crate::norm;

/// Punctuation peeled from token edges, one token per character.
pub const EDGE_PUNCTUATION: [char; 12] =
    ['.', ',', '!', '?', ';', ':', '(', ')', '"', '«', '»', '–'];

fn is_edge_punct(c: char) -> bool {
    EDGE_PUNCTUATION.contains(&c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    /// Literal patterns never split further (matched case-insensitively).
    protected: BTreeSet<String>,
    elision_split: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            protected: BTreeSet::new(),
            elision_split: true,
        }
    }
}

impl TokenizerConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_protected<I, S>(mut self, patterns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for pattern in patterns {
            let key = norm::normalize_key(pattern.as_ref());
            if !key.is_empty() {
                self.protected.insert(key);
            }
        }
        self
    }

    pub fn without_elision_split(mut self) -> Self {
        self.elision_split = false;
        self
    }

    /// Reads one protected pattern per line; blank lines and lines starting
    /// with `#` are ignored.
    pub fn from_file(path: &Path) -> io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let patterns = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'));
        Ok(TokenizerConfig::new().with_protected(patterns))
    }

    pub fn is_protected(&self, token: &str) -> bool {
        self.protected.contains(&norm::normalize_key(token))
    }
}

pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    let text = norm::normalize_display(text);
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        tokenize_chunk(chunk, config, &mut tokens);
    }
    tokens
}

fn tokenize_chunk(chunk: &str, config: &TokenizerConfig, out: &mut Vec<String>) {
    let mut core = chunk;
    let mut trail: Vec<char> = Vec::new();
    // Peel edges one character at a time, re-checking the protected list so
    // a protected pattern inside quotes or parentheses stays intact. A core
    // reduced to a single character is emitted as-is.
    loop {
        if config.is_protected(core) {
            break;
        }
        let mut chars = core.chars();
        let Some(first) = chars.next() else { break };
        if chars.next().is_none() {
            break;
        }
        if is_edge_punct(first) {
            out.push(first.to_string());
            core = &core[first.len_utf8()..];
            continue;
        }
        let last = core.chars().next_back().expect("core is non-empty");
        if is_edge_punct(last) {
            trail.push(last);
            core = &core[..core.len() - last.len_utf8()];
            continue;
        }
        break;
    }
    emit_core(core, config, out);
    out.extend(trail.into_iter().rev().map(String::from));
}

fn emit_core(core: &str, config: &TokenizerConfig, out: &mut Vec<String>) {
    if core.is_empty() {
        return;
    }
    if config.elision_split && !config.is_protected(core) {
        if let Some((left, rest)) = split_elision(core) {
            out.push(left.to_string());
            emit_core(rest, config, out);
            return;
        }
    }
    out.push(core.to_string());
}

/// Splits after an apostrophe that follows one or two alphabetic characters;
/// the apostrophe stays with the left part. `None` when nothing follows the
/// apostrophe or it sits deeper in the word.
fn split_elision(core: &str) -> Option<(&str, &str)> {
    for (preceding, (idx, c)) in core.char_indices().enumerate() {
        if norm::is_apostrophe(c) {
            let split = idx + c.len_utf8();
            if (1..=2).contains(&preceding) && split < core.len() {
                return Some((&core[..split], &core[split..]));
            }
            return None;
        }
        if !c.is_alphabetic() || preceding == 2 {
            return None;
        }
    }
    None
}
