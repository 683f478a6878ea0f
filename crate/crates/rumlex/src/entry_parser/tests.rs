use proptest::prelude::*;

use super::*;
use crate::model::{Tense, VerbForm};

fn entry(
    romansh: &str,
    german: &str,
    pos: Option<&str>,
    gender: Option<&str>,
) -> RawEntry {
    RawEntry::new(
        romansh,
        german,
        pos.map(str::to_string),
        gender.map(str::to_string),
        1,
    )
    .unwrap()
}

fn sig(romansh: &str) -> String {
    let inv = MtInventory::default();
    compute_signature(&entry(romansh, "Gloss", None, None), &inv)
        .unwrap()
        .rendered()
        .to_string()
}

#[test]
fn signature_single_word() {
    assert_eq!(sig("armaziun"), "w");
}

#[test]
fn signature_gendered_pair() {
    assert_eq!(sig("admiratur, admiratura"), "w, w");
}

#[test]
fn signature_groups_with_tags() {
    assert_eq!(
        sig("arrestà (arrestats, pl); arrestada (arrestadas, pl)"),
        "w (w, MT); w (w, MT)"
    );
}

#[test]
fn signature_multiword_span() {
    assert_eq!(sig("dar liber"), "w+");
    assert_eq!(sig("ir a spass"), "w+");
}

#[test]
fn signature_tag_with_dot_and_case() {
    assert_eq!(sig("arrestà (arrestats, PL.)"), "w (w, MT)");
}

#[test]
fn signature_unknown_bracketed_tag_stays_word() {
    // Unknown tags never parse as MT; the resulting pattern has no rule.
    assert_eq!(sig("chasa (chasas, xyz)"), "w (w, w)");
}

#[test]
fn signature_embedded_infix_is_part_of_the_word() {
    assert_eq!(sig("antalg(iant)evel, antalg(iant)evla"), "w, w");
}

#[test]
fn signature_embedded_tag_is_not_absorbed() {
    // A flush parenthesis whose content is a tag stays structural.
    assert_eq!(sig("chasa(pl)"), "w (MT)");
}

#[test]
fn signature_equality_ignores_tag_values() {
    let inv = MtInventory::default();
    let a = compute_signature(&entry("x (y, pl)", "G", None, None), &inv).unwrap();
    let b = compute_signature(&entry("u (z, sg)", "G", None, None), &inv).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rendered(), b.rendered());
}

#[test]
fn signature_hash_follows_equality() {
    let inv = MtInventory::default();
    let a = compute_signature(&entry("x (y, pl)", "G", None, None), &inv).unwrap();
    let b = compute_signature(&entry("u (z, sg)", "G", None, None), &inv).unwrap();
    let set: std::collections::HashSet<PatternSignature> = [a, b].into_iter().collect();
    assert_eq!(set.len(), 1);
}

#[test]
fn signature_unbalanced_parens_is_malformed() {
    let inv = MtInventory::default();
    for field in ["arrestà (arrestats, pl", "arrestats) x", "antalg(iantevel"] {
        let err = compute_signature(&entry(field, "G", None, None), &inv).unwrap_err();
        assert!(matches!(err, ParseError::Malformed { .. }), "{field}: {err}");
    }
}

#[test]
fn signature_blank_entry_field_is_malformed_with_line() {
    let bad = RawEntry {
        romansh_field: "pled".into(),
        german_field: " ".into(),
        pos_hint: None,
        gender_hint: None,
        source_line: 7,
    };
    match compute_signature(&bad, &MtInventory::default()) {
        Err(ParseError::Malformed { line, .. }) => assert_eq!(line, 7),
        other => panic!("expected malformed, got {other:?}"),
    }
}

#[test]
fn parse_error_signature_is_only_present_when_unsupported() {
    let unsupported = parse_err(&entry("dar liber", "freigeben", Some("v"), None));
    assert_eq!(unsupported.signature(), Some("w+"));
    let malformed = parse_err(&entry("uaul(", "Wald", None, None));
    assert_eq!(malformed.signature(), None);
}

#[test]
fn blank_field_has_no_tokens() {
    let inv = MtInventory::default();
    assert_eq!(tokenize_field("  ", &inv).unwrap_err(), "no content");
}

// The field tokenizer guarantees balanced parentheses and only emits the
// four structural punctuation marks; the shape parser still refuses token
// streams that break those invariants.
#[test]
fn shape_parser_rejects_irregular_token_streams() {
    use FieldToken::{Punct, Word};
    let unterminated = [Word("a".into()), Punct('('), Word("b".into())];
    assert_eq!(parse_shape(&unterminated).unwrap_err(), "unbalanced parentheses");
    let stray_close = [Word("a".into()), Punct(')')];
    assert_eq!(parse_shape(&stray_close).unwrap_err(), "unbalanced parentheses");
    let foreign = [Word("a".into()), Punct(':')];
    assert_eq!(parse_shape(&foreign).unwrap_err(), "unexpected punctuation `:`");
}

#[test]
fn mt_inventory_is_extensible() {
    let inv = MtInventory::default().with_tags(["dim".to_string()]);
    assert_eq!(inv.recognize("DIM."), Some("dim".to_string()));
    assert_eq!(inv.recognize("dims"), None);
    assert_eq!(inv.recognize("m/f"), Some("m/f".to_string()));
}

#[test]
fn expand_parenthetical_basic() {
    assert_eq!(
        expand_parenthetical("antalg(iant)evel").unwrap(),
        vec!["antalgevel", "antalgiantevel"]
    );
}

#[test]
fn expand_parenthetical_cartesian_order() {
    assert_eq!(
        expand_parenthetical("a(b)c(d)e").unwrap(),
        vec!["ace", "acde", "abce", "abcde"]
    );
}

#[test]
fn expand_parenthetical_without_groups() {
    assert_eq!(expand_parenthetical("pled").unwrap(), vec!["pled"]);
}

#[test]
fn expand_parenthetical_rejects_broken_groups() {
    assert!(expand_parenthetical("a(b").is_err());
    assert!(expand_parenthetical("a)b").is_err());
    assert!(expand_parenthetical("a(b(c)d)e").is_err());
    assert!(expand_parenthetical("a()b").is_err());
}

proptest! {
    #[test]
    fn expand_parenthetical_counts_groups(parts in proptest::collection::vec("[a-z]{1,4}", 1..5)) {
        // Interleave literals and groups: lit (g) lit (g) ...
        let mut word = String::from("base");
        for part in &parts {
            word.push_str(&format!("({part})x"));
        }
        let variants = expand_parenthetical(&word).unwrap();
        prop_assert_eq!(variants.len(), 1 << parts.len());
        let fully_excluded = format!("base{}", "x".repeat(parts.len()));
        prop_assert_eq!(&variants[0], &fully_excluded);
    }

    #[test]
    fn signature_ignores_word_content(a in "[a-zàèöü]{5,10}", b in "[a-zàèöü]{5,10}") {
        // Structure decides the signature; the words inside it do not.
        let left = sig(&format!("{a} ({b}, pl); {b} ({a}, pl)"));
        let right = sig("arrestà (arrestats, pl); arrestada (arrestadas, pl)");
        prop_assert_eq!(left, right);
    }
}

#[test]
fn expand_gloss_suffix() {
    assert_eq!(
        expand_gloss("Bewunderer(in)"),
        vec!["Bewunderer", "Bewundererin"]
    );
}

#[test]
fn expand_gloss_positionwise_pairing() {
    assert_eq!(
        expand_gloss("Lehrer(in) und Schüler(in)"),
        vec!["Lehrer und Schüler", "Lehrerin und Schülerin"]
    );
}

#[test]
fn expand_gloss_without_groups_is_literal() {
    assert_eq!(expand_gloss("jn aushungern"), vec!["jn aushungern"]);
}

#[test]
fn expand_gloss_malformed_falls_back_to_literal() {
    assert_eq!(expand_gloss("kaputt (defekt"), vec!["kaputt (defekt"]);
    assert_eq!(expand_gloss("a()b"), vec!["a()b"]);
}

#[test]
fn infer_pos_capitalized_german_is_noun() {
    let inv = MtInventory::default();
    assert_eq!(
        infer_pos(&entry("armaziun", "Bewaffnung", None, None), &inv),
        Some(PosCategory::Noun)
    );
    assert_eq!(
        infer_pos(&entry("üna", "Ärger", None, None), &inv),
        Some(PosCategory::Noun)
    );
}

#[test]
fn infer_pos_lowercase_german_is_unresolved() {
    let inv = MtInventory::default();
    assert_eq!(infer_pos(&entry("dir", "sagen", None, None), &inv), None);
}

#[test]
fn infer_pos_verb_tag_blocks_noun() {
    let inv = MtInventory::default();
    assert_eq!(
        infer_pos(&entry("far (v)", "Machen", None, None), &inv),
        None
    );
}

#[test]
fn resolve_pos_prefers_hint() {
    let inv = MtInventory::default();
    let cases = [
        (Some("n"), PosCategory::Noun),
        (Some("noun"), PosCategory::Noun),
        (Some("V."), PosCategory::Verb),
        (Some("ADJ"), PosCategory::Adjective),
        (Some("adv"), PosCategory::Other),
        (Some("art"), PosCategory::Other),
        (None, PosCategory::Noun), // falls back to the German capital
    ];
    for (hint, expected) in cases {
        let e = entry("pled", "Wort", hint, None);
        assert_eq!(resolve_pos(&e, &inv), expected, "hint {hint:?}");
    }
    let e = entry("dir", "sagen", None, None);
    assert_eq!(resolve_pos(&e, &inv), PosCategory::Other);
}

fn parse(e: &RawEntry) -> Vec<FormRecord> {
    parse_entry(e, Variety::Vallader, &MtInventory::default()).unwrap()
}

fn parse_err(e: &RawEntry) -> ParseError {
    parse_entry(e, Variety::Vallader, &MtInventory::default()).unwrap_err()
}

fn row(r: &FormRecord) -> (String, String, String, String) {
    (
        r.surface.clone(),
        r.lemma.clone(),
        r.features.to_compact(),
        r.gloss.clone(),
    )
}

#[test]
fn noun_single_word() {
    let records = parse(&entry("armaziun", "Bewaffnung", None, Some("f")));
    assert_eq!(records.len(), 1);
    assert_eq!(
        row(&records[0]),
        (
            "armaziun".into(),
            "armaziun".into(),
            "N;FEM;SG".into(),
            "Bewaffnung".into()
        )
    );
}

#[test]
fn noun_single_word_without_gender() {
    let records = parse(&entry("pled", "Wort", Some("n"), None));
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].features.to_compact(), "N;SG");
}

#[test]
fn noun_gendered_pair_with_paired_glosses() {
    let records = parse(&entry(
        "admiratur, admiratura",
        "Bewunderer(in)",
        None,
        Some("m/f"),
    ));
    let rows: Vec<_> = records.iter().map(row).collect();
    assert_eq!(
        rows,
        vec![
            (
                "admiratur".into(),
                "admiratur".into(),
                "N;MASC;SG".into(),
                "Bewunderer".into()
            ),
            (
                "admiratura".into(),
                "admiratura".into(),
                "N;FEM;SG".into(),
                "Bewundererin".into()
            ),
        ]
    );
}

#[test]
fn noun_groups_with_plural_parentheticals() {
    let records = parse(&entry(
        "arrestà (arrestats, pl); arrestada (arrestadas, pl)",
        "Gefangene",
        None,
        Some("m/f"),
    ));
    let rows: Vec<_> = records.iter().map(row).collect();
    assert_eq!(
        rows,
        vec![
            (
                "arrestà".into(),
                "arrestà".into(),
                "N;MASC;SG".into(),
                "Gefangene".into()
            ),
            (
                "arrestats".into(),
                "arrestà".into(),
                "N;MASC;PL".into(),
                "Gefangene".into()
            ),
            (
                "arrestada".into(),
                "arrestada".into(),
                "N;FEM;SG".into(),
                "Gefangene".into()
            ),
            (
                "arrestadas".into(),
                "arrestada".into(),
                "N;FEM;PL".into(),
                "Gefangene".into()
            ),
        ]
    );
}

#[test]
fn noun_explicit_sg_tag() {
    let records = parse(&entry("nar (nars, sg)", "Narr", None, Some("m")));
    assert_eq!(records.len(), 2);
    assert_eq!(records[1].features.to_compact(), "N;MASC;SG");
}

#[test]
fn noun_single_gender_broadcasts() {
    let records = parse(&entry("alp, alpa", "Alp", None, Some("f")));
    assert!(records
        .iter()
        .all(|r| r.features.gender() == Some(crate::model::Gender::Fem)));
}

#[test]
fn noun_mismatched_glosses_attach_everywhere() {
    // Two gloss variants over one item: both attach.
    let records = parse(&entry("magister", "Lehrer(in)", None, Some("m")));
    let glosses: Vec<&str> = records.iter().map(|r| r.gloss.as_str()).collect();
    assert_eq!(glosses, vec!["Lehrer", "Lehrerin"]);
}

#[test]
fn noun_gender_count_mismatch_is_unsupported() {
    let err = parse_err(&entry("a, b, c", "Ding", None, Some("m/f")));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn noun_unknown_gender_hint_is_unsupported() {
    let err = parse_err(&entry("pled", "Wort", None, Some("x")));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn noun_non_number_tag_is_unsupported() {
    let err = parse_err(&entry("arrestà (arrestada, f)", "Gefangene", None, None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn noun_odd_parenthetical_shape_is_unsupported() {
    for field in ["pled (pleds)", "pled (pleds, plura, pl)", "pled (pl)"] {
        let err = parse_err(&entry(field, "Wort", None, None));
        assert!(matches!(err, ParseError::Unsupported { .. }), "{field}");
    }
}

#[test]
fn noun_infix_material_is_unsupported() {
    // m/f on one variant trips the gender check; a single gender reaches
    // the head check itself.
    for (field, gender) in [("admiratur(a)", "m/f"), ("ua(u)l", "m")] {
        let err = parse_err(&entry(field, "Ding", None, Some(gender)));
        assert!(matches!(err, ParseError::Unsupported { .. }), "{field}");
    }
}

#[test]
fn noun_inflected_form_infix_is_unsupported() {
    let err = parse_err(&entry("chantun (chantu(o)ns, pl)", "Kanton", None, Some("m")));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn top_level_tag_is_unsupported() {
    let err = parse_err(&entry("chasa, pl", "Haus", None, Some("f")));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn double_parenthetical_is_unsupported() {
    let err = parse_err(&entry("pled (pleds, pl) (plaids, pl)", "Wort", None, None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn nested_parenthetical_is_unsupported() {
    let err = parse_err(&entry("pled (plaids (pleds, pl), pl)", "Wort", None, None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn multiword_entries_are_unsupported() {
    let err = parse_err(&entry("dar liber", "freigeben", Some("v"), None));
    match err {
        ParseError::Unsupported { signature, .. } => assert_eq!(signature, "w+"),
        other => panic!("expected unsupported, got {other}"),
    }
}

#[test]
fn adjective_infix_expansion_parallel_lemma_structure() {
    let records = parse(&entry(
        "antalg(iant)evel, antalg(iant)evla",
        "-",
        Some("adj"),
        None,
    ));
    let rows: Vec<_> = records
        .iter()
        .map(|r| (r.surface.as_str(), r.lemma.as_str(), r.features.to_compact()))
        .collect();
    assert_eq!(
        rows,
        vec![
            ("antalgevel", "antalgevel", "ADJ;MASC;SG".to_string()),
            ("antalgevla", "antalgevel", "ADJ;FEM;SG".to_string()),
            ("antalgiantevel", "antalgiantevel", "ADJ;MASC;SG".to_string()),
            ("antalgiantevla", "antalgiantevel", "ADJ;FEM;SG".to_string()),
        ]
    );
}

#[test]
fn adjective_plain_pair() {
    let records = parse(&entry("fomantà, fomantada", "hungrig", Some("adj"), None));
    let rows: Vec<_> = records.iter().map(row).collect();
    assert_eq!(
        rows,
        vec![
            (
                "fomantà".into(),
                "fomantà".into(),
                "ADJ;MASC;SG".into(),
                "hungrig".into()
            ),
            (
                "fomantada".into(),
                "fomantà".into(),
                "ADJ;FEM;SG".into(),
                "hungrig".into()
            ),
        ]
    );
}

#[test]
fn adjective_single_invariable_form() {
    let records = parse(&entry("cutschen", "rot", Some("adj"), None));
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].features.to_compact(), "ADJ;SG");
}

#[test]
fn adjective_gender_hint_applies() {
    let records = parse(&entry("bela", "schön", Some("adj"), Some("f")));
    assert_eq!(records[0].features.to_compact(), "ADJ;FEM;SG");
}

#[test]
fn adjective_rejections() {
    let cases = [
        "bel; bela",                     // several groups
        "bel, bela, bels",               // more than two items
        "bel (bels, pl), bela",          // parenthetical
        "antalg(iant)evel, antalgevla",  // unaligned expansions
        "antalg(iant)evel",              // expansion without a feminine form
    ];
    for field in cases {
        let err = parse_err(&entry(field, "schön", Some("adj"), None));
        assert!(matches!(err, ParseError::Unsupported { .. }), "{field}");
    }
}

// The tokenizer never hands the adjective rule an unbalanced head, but a
// malformed expansion must still surface with the entry's source line.
#[test]
fn adjective_malformed_expansion_carries_the_source_line() {
    let e = entry("bel, bella", "schön", Some("adj"), None);
    let inv = MtInventory::default();
    let signature = compute_signature(&e, &inv).unwrap();
    let cx = EntryCx {
        entry: &e,
        variety: Variety::Vallader,
        signature: &signature,
        pos: PosCategory::Adjective,
    };
    let groups = vec![vec![
        Item { head: "bel(".into(), paren: None },
        Item { head: "bella".into(), paren: None },
    ]];
    match parse_adjective(&cx, &groups) {
        Err(ParseError::Malformed { line, reason }) => {
            assert_eq!(line, 1);
            assert!(reason.contains("unbalanced"), "{reason}");
        }
        other => panic!("expected malformed, got {other:?}"),
    }
}

#[test]
fn verb_single_word_is_infinitive() {
    let records = parse(&entry("fomantar", "jn aushungern", Some("v"), None));
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r.lemma, "fomantar");
    assert_eq!(r.features.pos(), PosCategory::Verb);
    assert_eq!(r.features.verb_form(), Some(VerbForm::Inf));
    assert_eq!(r.features.tense(), None::<Tense>);
    assert_eq!(r.gloss, "jn aushungern");
}

#[test]
fn verb_with_gender_hint_is_rejected() {
    let err = parse_err(&entry("fomantar", "aushungern", Some("v"), Some("f")));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn verb_multi_item_is_rejected() {
    let err = parse_err(&entry("dar, dir", "geben", Some("v"), None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn verb_with_several_groups_is_rejected() {
    let err = parse_err(&entry("ir; dar; star", "gehen", Some("v"), None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn other_single_word() {
    let records = parse(&entry("darcheu", "wieder", Some("adv"), None));
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].features.to_compact(), "OTHER");
}

#[test]
fn other_ignores_gender_hint() {
    // An entry that fell through to the joint category still yields a
    // usable record; the gender annotation is dropped, not guessed at.
    let records = parse(&entry("armaziun", "bewaffnung", None, Some("f")));
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].features.to_compact(), "OTHER");
}

#[test]
fn other_with_parenthetical_is_rejected() {
    let err = parse_err(&entry("sur (sura, pl)", "über", Some("prep"), None));
    assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
}

#[test]
fn verb_gloss_expansion_attaches_all_variants() {
    let records = parse(&entry("s'algrar", "(sich) freuen", Some("v"), None));
    let glosses: Vec<&str> = records.iter().map(|r| r.gloss.as_str()).collect();
    assert_eq!(glosses, vec!["freuen", "sich freuen"]);
}

#[test]
fn parse_is_total_over_messy_input() {
    let inv = MtInventory::default();
    let fields = [
        "pled",
        "pled, pleda",
        "dar liber",
        "x (y, pl)",
        "x (y",
        "a; b; c",
        "(x) y",
        "x, ",
    ];
    for field in fields {
        match RawEntry::new(field, "Gloss", None, None, 7) {
            Ok(e) => {
                let outcome = parse_entry(&e, Variety::Puter, &inv);
                match outcome {
                    Ok(records) => assert!(!records.is_empty(), "{field}"),
                    Err(
                        ParseError::Malformed { line, .. }
                        | ParseError::Unsupported { line, .. },
                    ) => {
                        assert_eq!(line, 7, "{field}");
                    }
                }
            }
            Err(_) => unreachable!("fields are non-empty"),
        }
    }
}

#[test]
fn skeletons_respect_min_count_threshold() {
    let mut entries = Vec::new();
    for i in 0..12 {
        entries.push(entry(&format!("plaid{i}"), "Wort", Some("n"), None));
    }
    for i in 0..15 {
        entries.push(entry(
            &format!("bial{i}, biala{i}"),
            "Schoen",
            Some("n"),
            None,
        ));
    }
    for i in 0..3 {
        entries.push(entry(&format!("ir{i}"), "gehen", Some("v"), None));
    }
    let skeletons = generate_skeletons(&entries, 10, &MtInventory::default());
    assert_eq!(skeletons.len(), 2);
    assert_eq!(skeletons[0].signature.rendered(), "w, w");
    assert_eq!(skeletons[0].occurrence_count, 15);
    assert_eq!(skeletons[1].signature.rendered(), "w");
    assert_eq!(skeletons[1].occurrence_count, 12);
    assert!(skeletons.iter().all(|s| s.gold_records.is_empty()));
}

#[test]
fn skeletons_exactly_at_threshold_are_excluded() {
    let entries: Vec<RawEntry> = (0..10)
        .map(|i| entry(&format!("plaid{i}"), "Wort", Some("n"), None))
        .collect();
    assert!(generate_skeletons(&entries, 10, &MtInventory::default()).is_empty());
}

#[test]
fn skeletons_pick_most_frequent_example() {
    let mut entries = vec![entry("unic", "einzig", Some("n"), None)];
    for _ in 0..6 {
        entries.push(entry("doppel", "Doppel", Some("n"), None));
    }
    for _ in 0..5 {
        entries.push(entry("evna", "Woche", Some("n"), None));
    }
    let skeletons = generate_skeletons(&entries, 2, &MtInventory::default());
    assert_eq!(skeletons.len(), 1);
    assert_eq!(skeletons[0].example_entry.romansh_field, "doppel");
}

#[test]
fn skeleton_render_parse_round_trip() {
    let inv = MtInventory::default();
    let e = entry("antalg(iant)evel, antalg(iant)evla", "-", Some("adj"), None);
    let gold = parse_entry(&e, Variety::Sursilvan, &inv).unwrap();
    let case = SkeletonCase {
        pos: PosCategory::Adjective,
        signature: compute_signature(&e, &inv).unwrap(),
        occurrence_count: 42,
        example_entry: e,
        gold_records: gold.clone(),
    };
    let text = render_skeleton(&case);
    let parsed = parse_skeleton_file(&text, Variety::Sursilvan, &inv).unwrap();
    assert_eq!(parsed.signature, case.signature);
    assert_eq!(parsed.pos, PosCategory::Adjective);
    assert_eq!(parsed.occurrence_count, 42);
    assert_eq!(
        parsed.example_entry.romansh_field,
        case.example_entry.romansh_field
    );
    let strip_gloss = |records: &[FormRecord]| {
        records
            .iter()
            .map(|r| (r.surface.clone(), r.lemma.clone(), r.features))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip_gloss(&parsed.gold_records), strip_gloss(&gold));
}

#[test]
fn skeleton_parser_accepts_colon_form_separator() {
    let inv = MtInventory::default();
    let text = "\
'vegl, veglia'; adj
>>> vegl:
        vegl; ADJ;MASC;SG
        veglia: ADJ;FEM;SG
";
    let case = parse_skeleton_file(text, Variety::Surmiran, &inv).unwrap();
    assert_eq!(case.gold_records.len(), 2);
    assert_eq!(case.gold_records[1].surface, "veglia");
    assert_eq!(
        case.gold_records[1].features.to_compact(),
        "ADJ;FEM;SG"
    );
}

#[test]
fn skeleton_blank_lines_are_ignored() {
    let inv = MtInventory::default();
    let text = "# occurrences: 3\n\n'pled'; n; m; Wort\n\n>>> pled:\n\n        pled; N;MASC;SG\n";
    let case = parse_skeleton_file(text, Variety::Vallader, &inv).unwrap();
    assert_eq!(case.occurrence_count, 3);
    assert_eq!(case.gold_records.len(), 1);
}

#[test]
fn skeleton_structural_mistakes_are_malformed() {
    let inv = MtInventory::default();
    let cases = [
        ("'pled'; n; m; Wort; extra", "too many components"),
        ("'pled'; n\n>>> pled:\n>>> pled:", "duplicate `>>>`"),
        ("'pled'; n\n        pled; N;SG", "expected `>>>`"),
    ];
    for (text, want) in cases {
        match parse_skeleton_file(text, Variety::Vallader, &inv) {
            Err(ParseError::Malformed { reason, .. }) => {
                assert!(reason.contains(want), "{want}: {reason}")
            }
            other => panic!("{want}: got {other:?}"),
        }
    }
}

#[test]
fn skeleton_file_names_encode_the_pattern() {
    let inv = MtInventory::default();
    let e = entry(
        "arrestà (arrestats, pl); arrestada (arrestadas, pl)",
        "Gefangene",
        Some("n"),
        None,
    );
    let case = SkeletonCase {
        pos: PosCategory::Noun,
        signature: compute_signature(&e, &inv).unwrap(),
        occurrence_count: 9,
        example_entry: e,
        gold_records: Vec::new(),
    };
    let dir = tempfile::tempdir().unwrap();
    let paths = write_skeletons(&[case], dir.path()).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(
        paths[0].file_name().unwrap().to_str().unwrap(),
        "n_01_w[w-mt]+w[w-mt].txt"
    );
}
