//! Text normalization shared by the lexicon, the tokenizer and the classifier.
//!
//! All strings that enter a lexicon (surfaces, lemmas, fallback words) and all
//! tokens produced by the tokenizer pass through the same normalization so
//! that lookups behave identically no matter where a string came from.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Canonical apostrophe used everywhere after normalization.
pub const APOSTROPHE: char = '\u{2019}';

/// Variants that are folded into [`APOSTROPHE`].
const APOSTROPHE_VARIANTS: [char; 2] = ['\u{0027}', '\u{2019}'];

pub fn is_apostrophe(c: char) -> bool {
    APOSTROPHE_VARIANTS.contains(&c)
}

/// Display-level normalization: NFC composition plus apostrophe unification.
/// Case is preserved; diacritics are preserved (Romansh orthography is
/// contrastive, e.g. `à` vs `a`).
pub fn normalize_display(s: &str) -> String {
    s.chars()
        .map(|c| if is_apostrophe(c) { APOSTROPHE } else { c })
        .nfc()
        .collect()
}

/// Lookup-key normalization: display normalization plus Unicode lowercasing.
pub fn normalize_key(s: &str) -> String {
    normalize_display(s).to_lowercase()
}

/// Collation key used when ordering lemmas for display: lowercased with
/// combining marks stripped, so `fomantà` sorts between `fomant` and
/// `fomantada` instead of after every plain-ASCII lemma. Ties between
/// distinct raw strings are broken by the caller on the raw string.
pub fn collation_key(s: &str) -> String {
    normalize_key(s)
        .nfd()
        .filter(|c| !is_combining_mark(*c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apostrophes_unify() {
        assert_eq!(normalize_display("d'eira"), "d\u{2019}eira");
        assert_eq!(normalize_display("d\u{2019}eira"), "d\u{2019}eira");
    }

    #[test]
    fn keys_fold_case_but_keep_diacritics() {
        assert_eq!(normalize_key("FOMANTÀ"), "fomantà");
        assert_ne!(normalize_key("fomantà"), normalize_key("fomanta"));
    }

    #[test]
    fn nfc_composes_decomposed_input() {
        // "a" + combining grave accent composes to U+00E0.
        assert_eq!(normalize_display("fomanta\u{0300}"), "fomantà");
    }

    #[test]
    fn collation_strips_marks() {
        assert_eq!(collation_key("fomantà"), "fomanta");
        let mut lemmas = vec!["fomantar", "fomantà", "fomantada"];
        lemmas.sort_by_key(|l| (collation_key(l), l.to_string()));
        assert_eq!(lemmas, vec!["fomantà", "fomantada", "fomantar"]);
    }
}
