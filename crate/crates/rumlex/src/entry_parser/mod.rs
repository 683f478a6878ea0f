//! Parsing of raw dictionary entries into form records.
//!
//! A dictionary row is first tokenized into a structural pattern over words,
//! punctuation and morphological tags (MT). The pattern's signature decides
//! which parse rule applies; entries whose signature matches no implemented
//! rule are rejected rather than guessed at, so the lexicon only ever
//! contains records backed by an attested, tested pattern.

mod skeleton;

pub use skeleton::{parse_skeleton_file, render_skeleton, write_skeletons};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::model::{
    FeatureBundle, FormRecord, Gender, Number, PosCategory, RawEntry, Variety, VerbForm,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Structurally broken input (unbalanced parentheses, empty fields).
    #[error("line {line}: malformed entry: {reason}")]
    Malformed { line: usize, reason: String },
    /// Well-formed input whose pattern has no implemented parse rule.
    #[error("line {line}: unsupported pattern `{signature}` for {pos} entry")]
    Unsupported {
        line: usize,
        pos: PosCategory,
        signature: String,
    },
}

impl ParseError {
    pub fn signature(&self) -> Option<&str> {
        match self {
            ParseError::Unsupported { signature, .. } => Some(signature),
            ParseError::Malformed { .. } => None,
        }
    }
}

/// Closed inventory of morphological tags recognized inside entries.
/// Matching is case-insensitive and tolerates one trailing dot (`pl.`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtInventory {
    tags: BTreeSet<String>,
}

impl Default for MtInventory {
    fn default() -> Self {
        let seed = [
            "m", "f", "m/f", "sg", "pl", "adj", "v", "n", "adv", "pron", "prep", "conj",
        ];
        MtInventory {
            tags: seed.iter().map(|t| t.to_string()).collect(),
        }
    }
}

impl MtInventory {
    pub fn with_tags<I: IntoIterator<Item = String>>(mut self, extra: I) -> Self {
        self.tags.extend(extra.into_iter().map(|t| t.to_lowercase()));
        self
    }

    /// Returns the normalized tag if `word` is in the inventory.
    pub fn recognize(&self, word: &str) -> Option<String> {
        let lowered = word.to_lowercase();
        let stripped = lowered.strip_suffix('.').unwrap_or(&lowered);
        if self.tags.contains(stripped) {
            Some(stripped.to_string())
        } else {
            None
        }
    }
}

/// Structural token classes of an entry's Romansh field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternToken {
    /// One word, possibly with embedded optional-material parentheses.
    Word,
    /// A run of two or more adjacent words.
    MultiWord,
    /// Structural punctuation: one of `( ) , ;`.
    Punct(char),
    /// Recognized morphological tag; the normalized tag is retained.
    MorphTag(String),
}

/// The structural pattern of an entry. Equality and hashing are defined on
/// the rendered form, where all MT tags collapse to `MT`, so `(…, sg)` and
/// `(…, pl)` entries belong to the same pattern.
#[derive(Debug, Clone)]
pub struct PatternSignature {
    tokens: Vec<PatternToken>,
    rendered: String,
}

impl PatternSignature {
    pub fn tokens(&self) -> &[PatternToken] {
        &self.tokens
    }

    pub fn rendered(&self) -> &str {
        &self.rendered
    }

    fn from_field_tokens(field_tokens: &[FieldToken]) -> Self {
        let mut tokens = Vec::new();
        let mut word_run = 0usize;
        let flush_run = |tokens: &mut Vec<PatternToken>, run: &mut usize| {
            match *run {
                0 => {}
                1 => tokens.push(PatternToken::Word),
                _ => tokens.push(PatternToken::MultiWord),
            }
            *run = 0;
        };
        for t in field_tokens {
            match t {
                FieldToken::Word(_) => word_run += 1,
                FieldToken::Tag(tag) => {
                    flush_run(&mut tokens, &mut word_run);
                    tokens.push(PatternToken::MorphTag(tag.clone()));
                }
                FieldToken::Punct(c) => {
                    flush_run(&mut tokens, &mut word_run);
                    tokens.push(PatternToken::Punct(*c));
                }
            }
        }
        flush_run(&mut tokens, &mut word_run);
        let rendered = render_tokens(&tokens);
        PatternSignature { tokens, rendered }
    }
}

impl PartialEq for PatternSignature {
    fn eq(&self, other: &Self) -> bool {
        self.rendered == other.rendered
    }
}

impl Eq for PatternSignature {}

impl std::hash::Hash for PatternSignature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rendered.hash(state);
    }
}

impl fmt::Display for PatternSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

fn render_tokens(tokens: &[PatternToken]) -> String {
    let mut out = String::new();
    let mut after_open = false;
    for t in tokens {
        let text = match t {
            PatternToken::Word => "w".to_string(),
            PatternToken::MultiWord => "w+".to_string(),
            PatternToken::MorphTag(_) => "MT".to_string(),
            PatternToken::Punct(c) => c.to_string(),
        };
        let no_space_before = matches!(t, PatternToken::Punct(',' | ';' | ')'));
        if !out.is_empty() && !after_open && !no_space_before {
            out.push(' ');
        }
        out.push_str(&text);
        after_open = matches!(t, PatternToken::Punct('('));
    }
    out
}

/// Lossless tokens of the Romansh field, used by both signature computation
/// and the parse rules.
#[derive(Debug, Clone, PartialEq, Eq)]
enum FieldToken {
    Word(String),
    Tag(String),
    Punct(char),
}

/// Splits the field into words, tags and structural punctuation.
///
/// A parenthesis that opens flush against a word and encloses purely
/// alphabetic, non-tag material is optional infix material and stays inside
/// the word token (`antalg(iant)evel`); any other parenthesis is structural.
fn tokenize_field(field: &str, inv: &MtInventory) -> Result<Vec<FieldToken>, String> {
    let chars: Vec<char> = field.chars().collect();
    let mut tokens = Vec::new();
    let mut word = String::new();
    let mut depth = 0usize;
    let mut i = 0usize;

    let flush = |word: &mut String, tokens: &mut Vec<FieldToken>| {
        if word.is_empty() {
            return;
        }
        let text = std::mem::take(word);
        if !text.contains('(') {
            if let Some(tag) = inv.recognize(&text) {
                tokens.push(FieldToken::Tag(tag));
                return;
            }
        }
        tokens.push(FieldToken::Word(text));
    };

    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            flush(&mut word, &mut tokens);
            i += 1;
            continue;
        }
        match c {
            '(' => {
                if !word.is_empty() {
                    // Candidate embedded group: absorb if the content is a
                    // plain alphabetic span that is not itself a tag.
                    if let Some(close) = (i + 1..chars.len()).find(|&j| chars[j] == ')') {
                        let content: String = chars[i + 1..close].iter().collect();
                        let absorbable = !content.is_empty()
                            && content.chars().all(char::is_alphabetic)
                            && inv.recognize(&content).is_none();
                        if absorbable {
                            word.push('(');
                            word.push_str(&content);
                            word.push(')');
                            i = close + 1;
                            continue;
                        }
                    }
                }
                flush(&mut word, &mut tokens);
                tokens.push(FieldToken::Punct('('));
                depth += 1;
                i += 1;
            }
            ')' => {
                flush(&mut word, &mut tokens);
                if depth == 0 {
                    return Err("unbalanced parentheses".into());
                }
                depth -= 1;
                tokens.push(FieldToken::Punct(')'));
                i += 1;
            }
            ',' | ';' => {
                flush(&mut word, &mut tokens);
                tokens.push(FieldToken::Punct(c));
                i += 1;
            }
            _ => {
                word.push(c);
                i += 1;
            }
        }
    }
    flush(&mut word, &mut tokens);
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if tokens.is_empty() {
        return Err("no content".into());
    }
    Ok(tokens)
}

/// Computes the structural pattern signature of an entry's Romansh field.
pub fn compute_signature(
    entry: &RawEntry,
    inv: &MtInventory,
) -> Result<PatternSignature, ParseError> {
    entry.validate().map_err(|e| ParseError::Malformed {
        line: entry.source_line,
        reason: e.to_string(),
    })?;
    let tokens = tokenize_field(&entry.romansh_field, inv).map_err(|reason| {
        ParseError::Malformed {
            line: entry.source_line,
            reason,
        }
    })?;
    Ok(PatternSignature::from_field_tokens(&tokens))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum WordSegment {
    Literal(String),
    Optional(String),
}

fn split_segments(word: &str) -> Result<Vec<WordSegment>, String> {
    let mut segments = Vec::new();
    let mut literal = String::new();
    let mut group: Option<String> = None;
    for c in word.chars() {
        match c {
            '(' => {
                if group.is_some() {
                    return Err("nested parentheses".into());
                }
                if !literal.is_empty() {
                    segments.push(WordSegment::Literal(std::mem::take(&mut literal)));
                }
                group = Some(String::new());
            }
            ')' => match group.take() {
                Some(content) if content.is_empty() => {
                    return Err("empty parenthetical".into());
                }
                Some(content) => segments.push(WordSegment::Optional(content)),
                None => return Err("unbalanced parentheses".into()),
            },
            _ => match group.as_mut() {
                Some(content) => content.push(c),
                None => literal.push(c),
            },
        }
    }
    if group.is_some() {
        return Err("unbalanced parentheses".into());
    }
    if !literal.is_empty() {
        segments.push(WordSegment::Literal(literal));
    }
    Ok(segments)
}

/// Expands optional infix material in a single word.
///
/// Each `(…)` group is independently excluded or included, exclusion first,
/// groups varying right-to-left fastest, so `a(b)c(d)e` yields
/// `ace, acde, abce, abcde` and the first variant is always the fully
/// excluded one. The output length is `2^groups`.
pub fn expand_parenthetical(word: &str) -> Result<Vec<String>, ParseError> {
    let segments = split_segments(word).map_err(|reason| ParseError::Malformed {
        line: 0,
        reason: format!("in `{word}`: {reason}"),
    })?;
    let mut variants = vec![String::new()];
    for segment in segments {
        match segment {
            WordSegment::Literal(text) => {
                for v in &mut variants {
                    v.push_str(&text);
                }
            }
            WordSegment::Optional(text) => {
                variants = variants
                    .into_iter()
                    .flat_map(|v| {
                        let mut with = v.clone();
                        with.push_str(&text);
                        [v, with]
                    })
                    .collect();
            }
        }
    }
    Ok(variants)
}

/// Expands optional parenthesized material in a German gloss.
///
/// All groups are excluded together and included together (positionwise
/// pairing), so `Lehrer(in) und Schüler(in)` yields exactly
/// `Lehrer und Schüler` and `Lehrerin und Schülerin`. Glosses without
/// well-formed groups are returned literally.
pub fn expand_gloss(gloss: &str) -> Vec<String> {
    let literal = || vec![gloss.trim().to_string()];
    let segments = match split_segments(gloss) {
        Ok(segments) => segments,
        Err(_) => return literal(),
    };
    if !segments
        .iter()
        .any(|s| matches!(s, WordSegment::Optional(_)))
    {
        return literal();
    }
    let mut without = String::new();
    let mut with = String::new();
    for segment in segments {
        match segment {
            WordSegment::Literal(text) => {
                without.push_str(&text);
                with.push_str(&text);
            }
            WordSegment::Optional(text) => with.push_str(&text),
        }
    }
    let tidy = |s: String| s.split_whitespace().collect::<Vec<_>>().join(" ");
    vec![tidy(without), tidy(with)]
}

fn first_alphabetic_is_uppercase(text: &str) -> bool {
    text.chars()
        .find(|c| c.is_alphabetic())
        .is_some_and(|c| c.is_uppercase())
}

/// Noun heuristic for entries without a part-of-speech hint: a German gloss
/// starting with an uppercase letter marks a noun, unless the Romansh field
/// carries a verb tag. Anything else stays unresolved.
pub fn infer_pos(entry: &RawEntry, inv: &MtInventory) -> Option<PosCategory> {
    if !first_alphabetic_is_uppercase(&entry.german_field) {
        return None;
    }
    let has_verb_tag = compute_signature(entry, inv)
        .map(|sig| {
            sig.tokens()
                .iter()
                .any(|t| matches!(t, PatternToken::MorphTag(tag) if tag == "v"))
        })
        .unwrap_or(false);
    if has_verb_tag {
        None
    } else {
        Some(PosCategory::Noun)
    }
}

fn map_pos_hint(hint: &str) -> PosCategory {
    let lowered = hint.trim().to_lowercase();
    let stripped = lowered.strip_suffix('.').unwrap_or(&lowered);
    match stripped {
        "n" | "noun" => PosCategory::Noun,
        "v" | "verb" => PosCategory::Verb,
        "adj" | "adjective" => PosCategory::Adjective,
        _ => PosCategory::Other,
    }
}

/// Part of speech an entry is parsed under: the explicit hint when present,
/// otherwise the noun heuristic, otherwise the joint other category.
pub fn resolve_pos(entry: &RawEntry, inv: &MtInventory) -> PosCategory {
    match &entry.pos_hint {
        Some(hint) => map_pos_hint(hint),
        None => infer_pos(entry, inv).unwrap_or(PosCategory::Other),
    }
}

/// One comma-separated item of a `;`-group: a head word plus an optional
/// `(form, MT)` parenthetical.
#[derive(Debug)]
struct Item {
    head: String,
    paren: Option<Vec<FieldToken>>,
}

fn parse_shape(tokens: &[FieldToken]) -> Result<Vec<Vec<Item>>, String> {
    let mut groups: Vec<Vec<Item>> = Vec::new();
    let mut items: Vec<Item> = Vec::new();
    let mut current: Option<Item> = None;
    let mut iter = tokens.iter().peekable();

    fn finish_item(current: &mut Option<Item>, items: &mut Vec<Item>) -> Result<(), String> {
        match current.take() {
            Some(item) => {
                items.push(item);
                Ok(())
            }
            None => Err("separator without a preceding word".into()),
        }
    }

    while let Some(token) = iter.next() {
        match token {
            FieldToken::Word(w) => {
                if current.is_some() {
                    return Err("adjacent words form a multi-word span".into());
                }
                current = Some(Item {
                    head: w.clone(),
                    paren: None,
                });
            }
            FieldToken::Tag(tag) => {
                return Err(format!("tag `{tag}` outside parentheses"));
            }
            FieldToken::Punct(',') => finish_item(&mut current, &mut items)?,
            FieldToken::Punct(';') => {
                finish_item(&mut current, &mut items)?;
                groups.push(std::mem::take(&mut items));
            }
            FieldToken::Punct('(') => {
                let item = current
                    .as_mut()
                    .ok_or_else(|| "parenthetical without a head word".to_string())?;
                if item.paren.is_some() {
                    return Err("more than one parenthetical per item".into());
                }
                let mut content = Vec::new();
                loop {
                    match iter.next() {
                        Some(FieldToken::Punct(')')) => break,
                        Some(FieldToken::Punct('(')) => {
                            return Err("nested parentheses".into());
                        }
                        Some(other) => content.push(other.clone()),
                        None => return Err("unbalanced parentheses".into()),
                    }
                }
                item.paren = Some(content);
            }
            FieldToken::Punct(')') => return Err("unbalanced parentheses".into()),
            FieldToken::Punct(other) => {
                return Err(format!("unexpected punctuation `{other}`"));
            }
        }
    }
    finish_item(&mut current, &mut items)?;
    groups.push(items);
    Ok(groups)
}

fn parse_gender(part: &str) -> Option<Gender> {
    let lowered = part.trim().to_lowercase();
    match lowered.strip_suffix('.').unwrap_or(&lowered) {
        "m" => Some(Gender::Masc),
        "f" => Some(Gender::Fem),
        _ => None,
    }
}

/// Distributes a gender hint over `n` items: one hint applies to all items,
/// `k = n` hints apply positionally, anything else is a mismatch.
fn distribute_genders(hint: Option<&str>, n: usize) -> Result<Vec<Option<Gender>>, String> {
    let Some(hint) = hint else {
        return Ok(vec![None; n]);
    };
    let parts: Vec<Option<Gender>> = hint.split('/').map(parse_gender).collect();
    if parts.iter().any(Option::is_none) {
        return Err(format!("unrecognized gender hint `{hint}`"));
    }
    if parts.len() == 1 {
        return Ok(vec![parts[0]; n]);
    }
    if parts.len() == n {
        return Ok(parts);
    }
    Err(format!(
        "gender hint `{hint}` has {} parts for {n} variants",
        parts.len()
    ))
}

/// Gloss variants for item `i` of `n`: positional when the counts line up,
/// otherwise every variant attaches to every item.
fn glosses_for_item(variants: &[String], i: usize, n: usize) -> Vec<String> {
    if variants.len() == n {
        vec![variants[i].clone()]
    } else {
        variants.to_vec()
    }
}

struct EntryCx<'a> {
    entry: &'a RawEntry,
    variety: Variety,
    signature: &'a PatternSignature,
    pos: PosCategory,
}

impl EntryCx<'_> {
    fn unsupported(&self, _reason: &str) -> ParseError {
        ParseError::Unsupported {
            line: self.entry.source_line,
            pos: self.pos,
            signature: self.signature.rendered().to_string(),
        }
    }

    fn malformed(&self, reason: String) -> ParseError {
        ParseError::Malformed {
            line: self.entry.source_line,
            reason,
        }
    }

    fn record(
        &self,
        surface: &str,
        lemma: &str,
        features: FeatureBundle,
        gloss: &str,
    ) -> Result<FormRecord, ParseError> {
        FormRecord::new(surface, lemma, features, gloss, self.variety)
            .map_err(|e| self.malformed(e.to_string()))
    }
}

/// Noun items: every comma- or semicolon-separated head word is its own
/// lemma, recorded as singular; a `(form, sg|pl)` parenthetical adds one
/// inflected form mapped to the head.
fn parse_noun(cx: &EntryCx, groups: &[Vec<Item>]) -> Result<Vec<FormRecord>, ParseError> {
    let items: Vec<&Item> = groups.iter().flatten().collect();
    let genders = distribute_genders(cx.entry.gender_hint.as_deref(), items.len())
        .map_err(|reason| cx.unsupported(&reason))?;
    let gloss_variants = expand_gloss(&cx.entry.german_field);
    let mut records = Vec::new();
    for (i, item) in items.iter().enumerate() {
        if item.head.contains('(') {
            return Err(cx.unsupported("optional infix material on a noun head"));
        }
        let base = FeatureBundle::new(PosCategory::Noun)
            .with_gender_opt(genders[i])
            .with_number(Number::Sg);
        let glosses = glosses_for_item(&gloss_variants, i, items.len());
        for gloss in &glosses {
            records.push(cx.record(&item.head, &item.head, base, gloss)?);
        }
        if let Some(content) = &item.paren {
            let (form, number) = match content.as_slice() {
                [FieldToken::Word(form), FieldToken::Punct(','), FieldToken::Tag(tag)] => {
                    let number = match tag.as_str() {
                        "sg" => Number::Sg,
                        "pl" => Number::Pl,
                        _ => return Err(cx.unsupported("non-number tag in parenthetical")),
                    };
                    (form, number)
                }
                _ => return Err(cx.unsupported("unrecognized parenthetical shape")),
            };
            if form.contains('(') {
                return Err(cx.unsupported("optional infix material on an inflected form"));
            }
            let inflected = FeatureBundle::new(PosCategory::Noun)
                .with_gender_opt(genders[i])
                .with_number(number);
            for gloss in &glosses {
                records.push(cx.record(form, &item.head, inflected, gloss)?);
            }
        }
    }
    Ok(records)
}

/// Adjective entries: one item (invariable) or a masculine/feminine pair.
/// Optional infix material expands into parallel lemma variants, each
/// carrying its own masculine and feminine forms; the masculine form is the
/// lemma.
fn parse_adjective(cx: &EntryCx, groups: &[Vec<Item>]) -> Result<Vec<FormRecord>, ParseError> {
    if groups.len() != 1 {
        return Err(cx.unsupported("adjective entry with several groups"));
    }
    let items = &groups[0];
    if !(1..=2).contains(&items.len()) {
        return Err(cx.unsupported("adjective entry with more than two items"));
    }
    if items.iter().any(|i| i.paren.is_some()) {
        return Err(cx.unsupported("adjective entry with a parenthetical"));
    }
    let default_genders: Vec<Option<Gender>> = if items.len() == 2 {
        vec![Some(Gender::Masc), Some(Gender::Fem)]
    } else {
        vec![None]
    };
    let genders = match cx.entry.gender_hint.as_deref() {
        None => default_genders,
        Some(hint) => distribute_genders(Some(hint), items.len())
            .map_err(|reason| cx.unsupported(&reason))?,
    };
    let expansions: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            expand_parenthetical(&item.head).map_err(|e| match e {
                ParseError::Malformed { reason, .. } => cx.malformed(reason),
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let variant_count = expansions[0].len();
    if expansions.iter().any(|e| e.len() != variant_count) {
        return Err(cx.unsupported("unaligned optional material across forms"));
    }
    if items.len() == 1 && variant_count > 1 {
        return Err(cx.unsupported("optional material on a single adjective form"));
    }
    let gloss_variants = expand_gloss(&cx.entry.german_field);
    let mut records = Vec::new();
    for (v, lemma) in expansions[0].iter().enumerate() {
        for (i, _) in items.iter().enumerate() {
            let features = FeatureBundle::new(PosCategory::Adjective)
                .with_gender_opt(genders[i])
                .with_number(Number::Sg);
            for gloss in glosses_for_item(&gloss_variants, i, items.len()) {
                records.push(cx.record(&expansions[i][v], lemma, features, &gloss)?);
            }
        }
    }
    Ok(records)
}

/// Verbs and the joint other category: a single plain word. The verb's
/// citation form is recorded as the infinitive; other entries carry the bare
/// category. A gender hint on a verb signals a misfiled row and is rejected;
/// on an other-category entry it is ignored.
fn parse_single_word(cx: &EntryCx, groups: &[Vec<Item>]) -> Result<Vec<FormRecord>, ParseError> {
    let [group] = groups else {
        return Err(cx.unsupported("multiple groups"));
    };
    let [item] = group.as_slice() else {
        return Err(cx.unsupported("multiple items"));
    };
    if item.paren.is_some() || item.head.contains('(') {
        return Err(cx.unsupported("parenthetical material"));
    }
    let features = match cx.pos {
        PosCategory::Verb => {
            if cx.entry.gender_hint.is_some() {
                return Err(cx.unsupported("gender hint on a verb"));
            }
            FeatureBundle::new(PosCategory::Verb)
                .with_verb_form(VerbForm::Inf)
                .map_err(|e| cx.malformed(e.to_string()))?
        }
        _ => FeatureBundle::new(PosCategory::Other),
    };
    let mut records = Vec::new();
    for gloss in expand_gloss(&cx.entry.german_field) {
        records.push(cx.record(&item.head, &item.head, features, &gloss)?);
    }
    Ok(records)
}

/// Parses one dictionary entry into form records for `variety`.
///
/// Errors are total: every entry either yields at least one record or is
/// rejected as malformed or unsupported, never silently dropped.
pub fn parse_entry(
    entry: &RawEntry,
    variety: Variety,
    inv: &MtInventory,
) -> Result<Vec<FormRecord>, ParseError> {
    let signature = compute_signature(entry, inv)?;
    let pos = resolve_pos(entry, inv);
    let cx = EntryCx {
        entry,
        variety,
        signature: &signature,
        pos,
    };
    // Re-tokenize for rule application; compute_signature validated already.
    let tokens = tokenize_field(&entry.romansh_field, inv)
        .map_err(|reason| cx.malformed(reason))?;
    let groups = parse_shape(&tokens).map_err(|reason| cx.unsupported(&reason))?;
    match pos {
        PosCategory::Noun => parse_noun(&cx, &groups),
        PosCategory::Adjective => parse_adjective(&cx, &groups),
        PosCategory::Verb | PosCategory::Other => parse_single_word(&cx, &groups),
    }
}

/// An unimplemented-or-verified pattern case: the signature, how often it
/// occurs, a representative entry, and (once annotated) the expected records.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonCase {
    pub pos: PosCategory,
    pub signature: PatternSignature,
    pub occurrence_count: usize,
    pub example_entry: RawEntry,
    pub gold_records: Vec<FormRecord>,
}

/// Groups entries by part of speech and signature and returns one skeleton
/// per pattern occurring strictly more than `min_count` times, sorted by
/// descending occurrence count. The representative entry is the most
/// frequent Romansh field of the pattern, earliest occurrence on ties.
/// Gold records start empty; they are filled in by hand.
pub fn generate_skeletons(
    entries: &[RawEntry],
    min_count: usize,
    inv: &MtInventory,
) -> Vec<SkeletonCase> {
    struct Agg {
        signature: PatternSignature,
        pos: PosCategory,
        count: usize,
        examples: HashMap<String, (usize, usize)>,
        entries: HashMap<String, RawEntry>,
    }
    let mut cases: HashMap<(PosCategory, String), Agg> = HashMap::new();
    for (idx, entry) in entries.iter().enumerate() {
        let Ok(signature) = compute_signature(entry, inv) else {
            continue;
        };
        let pos = resolve_pos(entry, inv);
        let agg = cases
            .entry((pos, signature.rendered().to_string()))
            .or_insert_with(|| Agg {
                signature,
                pos,
                count: 0,
                examples: HashMap::new(),
                entries: HashMap::new(),
            });
        agg.count += 1;
        let slot = agg
            .examples
            .entry(entry.romansh_field.clone())
            .or_insert((0, idx));
        slot.0 += 1;
        agg.entries
            .entry(entry.romansh_field.clone())
            .or_insert_with(|| entry.clone());
    }
    let mut out: Vec<SkeletonCase> = cases
        .into_values()
        .filter(|agg| agg.count > min_count)
        .map(|agg| {
            let (field, _) = agg
                .examples
                .iter()
                .max_by(|(_, (ca, ia)), (_, (cb, ib))| ca.cmp(cb).then(ib.cmp(ia)))
                .expect("non-empty aggregate");
            let example_entry = agg.entries[field].clone();
            SkeletonCase {
                pos: agg.pos,
                signature: agg.signature,
                occurrence_count: agg.count,
                example_entry,
                gold_records: Vec::new(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.occurrence_count
            .cmp(&a.occurrence_count)
            .then_with(|| (a.pos as usize).cmp(&(b.pos as usize)))
            .then_with(|| a.signature.rendered().cmp(b.signature.rendered()))
    });
    out
}

#[cfg(test)]
mod tests;
