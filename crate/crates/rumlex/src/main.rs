//! `rumlex` command-line interface: build lexicons, lemmatize, identify
//! varieties, decide Romansh vs. other, evaluate corpora, calibrate
//! thresholds, and emit annotation skeletons.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use rumlex::classifier::{self, ClassifierError, ScoreMode, ScoreReport};
use rumlex::entry_parser::{generate_skeletons, write_skeletons, MtInventory};
use rumlex::eval::{
    self, lid_rows_csv, read_samples_jsonl, LabeledSample, LID_BUCKETS, VARIETY_BUCKETS,
};
use rumlex::ingest::{
    compile_variety, read_dictionary_tsv, read_inflections_tsv, read_wordlist, BuildReport,
};
use rumlex::lemmatizer::{lemmatize, LemmatizerError};
use rumlex::lexicon::{LexiconSet, LEXICON_EXTENSION};
use rumlex::model::Variety;
use rumlex::tokenizer::TokenizerConfig;

/// Exit codes: 0 success, 1 internal error, 2 configuration or lookup
/// error, 3 empty input.
#[derive(Debug)]
enum CliError {
    Config(String),
    Empty(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Empty(msg) | CliError::Internal(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Config(_) => 2,
            CliError::Empty(_) => 3,
        }
    }
}

impl From<LemmatizerError> for CliError {
    fn from(err: LemmatizerError) -> Self {
        match err {
            LemmatizerError::EmptyInput => CliError::Empty(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<ClassifierError> for CliError {
    fn from(err: ClassifierError) -> Self {
        match err {
            ClassifierError::EmptyInput => CliError::Empty(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<eval::EvalError> for CliError {
    fn from(err: eval::EvalError) -> Self {
        match err {
            eval::EvalError::EmptyInput => CliError::Empty(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<rumlex::ingest::IngestError> for CliError {
    fn from(err: rumlex::ingest::IngestError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<rumlex::lexicon::LexiconError> for CliError {
    fn from(err: rumlex::lexicon::LexiconError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Internal(format!("serialization failed: {err}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Tsv,
}

#[derive(Parser)]
#[command(
    name = "rumlex",
    version,
    about = "Lemmatizer, morphological analyzer, and language identifier \
             for the six Romansh varieties"
)]
struct Cli {
    /// Directory of compiled .lexc lexicons.
    #[arg(long, global = true, env = "RUMLEX_LEXICON_DIR", value_name = "DIR")]
    lexicons: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile per-variety lexicons from dictionary TSVs.
    Build(BuildArgs),
    /// Lemmatize a text, auto-detecting the variety unless one is given.
    Lemmatize(LemmatizeArgs),
    /// Score a text against every loaded variety.
    Identify(InputArgs),
    /// Decide whether a text is Romansh at all.
    Lid(LidArgs),
    /// Corpus evaluation: coverage, variety accuracy, or LID distributions.
    Eval(EvalArgs),
    /// Calibrate a decision threshold from score files.
    Calibrate(CalibrateArgs),
    /// Emit annotation skeleton files for frequent entry patterns.
    Skeletons(SkeletonsArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Directory of `<variety>.tsv` dictionaries.
    #[arg(long, value_name = "DIR")]
    dicts: PathBuf,
    /// Directory of `<variety>.tsv` inflection tables.
    #[arg(long, value_name = "DIR")]
    inflections: Option<PathBuf>,
    /// Directory of `<variety>.txt` fallback word lists.
    #[arg(long, value_name = "DIR")]
    fallback: Option<PathBuf>,
    /// Where to write the compiled `.lexc` files.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct InputArgs {
    /// Text to process; falls back to --file, then stdin.
    text: Option<String>,
    /// Read the input from a file instead.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct LemmatizeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Force this variety instead of auto-detecting.
    #[arg(long)]
    variety: Option<Variety>,
    /// File of protected patterns the tokenizer must not split.
    #[arg(long, value_name = "FILE")]
    protected: Option<PathBuf>,
}

#[derive(Args)]
struct LidArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Scoring mode.
    #[arg(long, default_value = "set-of-words")]
    mode: ScoreMode,
    /// Decision threshold on the winning score.
    #[arg(long, default_value_t = classifier::DEFAULT_LID_THRESHOLD)]
    threshold: f64,
    /// Stopword file (one word per line); defaults to the bundled
    /// French/Italian/Catalan/Romanian lists.
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalTask {
    Coverage,
    Variety,
    Lid,
}

#[derive(Args)]
struct EvalArgs {
    /// JSON-lines sample file: {"id", "text", "variety"?, "language"?}.
    #[arg(long, value_name = "FILE")]
    samples: PathBuf,
    #[arg(long, value_enum)]
    task: EvalTask,
    /// Scoring mode for the lid task.
    #[arg(long, default_value = "set-of-words")]
    mode: ScoreMode,
    /// Stopword file for the lid task.
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,
    /// Write per-sample LID rows to this CSV file.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// File of protected tokenizer patterns.
    #[arg(long, value_name = "FILE")]
    protected: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// File of positive (Romansh) winning scores, one per line.
    #[arg(long, value_name = "FILE")]
    positive: PathBuf,
    /// File of negative (non-Romansh) winning scores, one per line.
    #[arg(long, value_name = "FILE")]
    negative: PathBuf,
}

#[derive(Args)]
struct SkeletonsArgs {
    /// Directory of `<variety>.tsv` dictionaries.
    #[arg(long, value_name = "DIR")]
    dicts: PathBuf,
    /// Where to write the skeleton files.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Keep patterns occurring strictly more often than this.
    #[arg(long, default_value_t = 10)]
    min_count: usize,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Build(args) => cmd_build(cli, args),
        Command::Lemmatize(args) => cmd_lemmatize(cli, args),
        Command::Identify(args) => cmd_identify(cli, args),
        Command::Lid(args) => cmd_lid(cli, args),
        Command::Eval(args) => cmd_eval(cli, args),
        Command::Calibrate(args) => cmd_calibrate(cli, args),
        Command::Skeletons(args) => cmd_skeletons(cli, args),
    }
}

fn config_io(path: &Path, err: std::io::Error) -> CliError {
    CliError::Config(format!("{}: {err}", path.display()))
}

fn read_input(input: &InputArgs) -> Result<String, CliError> {
    if let Some(text) = &input.text {
        return Ok(text.clone());
    }
    if let Some(path) = &input.file {
        return std::fs::read_to_string(path).map_err(|e| config_io(path, e));
    }
    let mut buffer = String::new();
    std::io::stdin()
        .read_to_string(&mut buffer)
        .map_err(|e| CliError::Config(format!("stdin: {e}")))?;
    Ok(buffer)
}

fn load_lexicons(cli: &Cli) -> Result<LexiconSet, CliError> {
    let dir = cli.lexicons.as_ref().ok_or_else(|| {
        CliError::Config(
            "no lexicon directory configured; pass --lexicons or set RUMLEX_LEXICON_DIR".into(),
        )
    })?;
    let set = LexiconSet::load_dir(dir).map_err(|e| {
        CliError::Config(format!("cannot load lexicons from {}: {e}", dir.display()))
    })?;
    if set.is_empty() {
        return Err(CliError::Config(format!(
            "no .{LEXICON_EXTENSION} files in {}",
            dir.display()
        )));
    }
    Ok(set)
}

fn tokenizer_config(protected: &Option<PathBuf>) -> Result<TokenizerConfig, CliError> {
    match protected {
        Some(path) => TokenizerConfig::from_file(path).map_err(|e| config_io(path, e)),
        None => Ok(TokenizerConfig::default()),
    }
}

fn stopword_set(path: &Option<PathBuf>) -> Result<BTreeSet<String>, CliError> {
    match path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config_io(path, e))?;
            Ok(classifier::parse_stopword_lines(&text))
        }
        None => Ok(classifier::default_stopwords()),
    }
}

fn files_with_extension(dir: &Path, extension: &str) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| config_io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == extension))
        .collect();
    paths.sort();
    Ok(paths)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn cmd_build(cli: &Cli, args: &BuildArgs) -> Result<(), CliError> {
    let dict_paths = files_with_extension(&args.dicts, "tsv")?;
    if dict_paths.is_empty() {
        return Err(CliError::Config(format!(
            "no dictionaries found in {}",
            args.dicts.display()
        )));
    }
    std::fs::create_dir_all(&args.out).map_err(|e| config_io(&args.out, e))?;
    let inv = MtInventory::default();
    let mut reports: Vec<BuildReport> = Vec::new();
    for dict_path in &dict_paths {
        let dictionary = read_dictionary_tsv(dict_path)?;
        let stem = dict_path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default();
        let inflections = match &args.inflections {
            Some(dir) => {
                let path = dir.join(format!("{stem}.tsv"));
                if path.is_file() {
                    read_inflections_tsv(&path)?
                } else {
                    Vec::new()
                }
            }
            None => Vec::new(),
        };
        let fallback = match &args.fallback {
            Some(dir) => {
                let path = dir.join(format!("{stem}.txt"));
                if path.is_file() {
                    read_wordlist(&path)?
                } else {
                    Vec::new()
                }
            }
            None => Vec::new(),
        };
        let (lexicon, report) = compile_variety(&dictionary, &inflections, fallback, &inv)?;
        let out_path = args
            .out
            .join(format!("{}.{LEXICON_EXTENSION}", lexicon.variety()));
        lexicon.save(&out_path)?;
        for diagnostic in &report.diagnostics {
            eprintln!("{}: {diagnostic}", dict_path.display());
        }
        reports.push(report);
    }
    match cli.format {
        Format::Json => print_json(&reports)?,
        _ => {
            for report in &reports {
                print_build_report(report);
            }
        }
    }
    Ok(())
}

fn print_build_report(report: &BuildReport) {
    println!(
        "{}: {}/{} entries parsed ({} unsupported, {} malformed)",
        report.variety,
        report.entries_parsed,
        report.entries_total,
        report.entries_unsupported,
        report.entries_malformed,
    );
    println!(
        "  records: {} from entries, {} from {} inflection rows ({} orphaned), {} fallback words",
        report.records_from_entries,
        report.inflection_records,
        report.inflection_rows,
        report.inflection_orphans,
        report.fallback_words,
    );
    let s = &report.stats;
    println!(
        "  vocab {}  mapped forms {}  lemmas {} (N {}, V {}, ADJ {}, other {})",
        s.vocab_size,
        s.mapped_forms,
        s.lemma_count,
        s.noun_lemmas,
        s.verb_lemmas,
        s.adjective_lemmas,
        s.other_lemmas,
    );
    for (pattern, tally) in &report.patterns {
        println!(
            "  pattern `{pattern}`: {} parsed, {} rejected",
            tally.parsed, tally.rejected
        );
    }
}

fn cmd_lemmatize(cli: &Cli, args: &LemmatizeArgs) -> Result<(), CliError> {
    let lexicons = load_lexicons(cli)?;
    let config = tokenizer_config(&args.protected)?;
    let text = read_input(&args.input)?;
    let result = lemmatize(&text, args.variety, &lexicons, &config)?;
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string(&serde_json::json!({
                "variety": result.variety,
            }))?);
            for token in &result.tokens {
                print_json(token)?;
            }
        }
        Format::Tsv => {
            println!("token\tknown\tlemma\tfeatures\tgloss");
            for token in &result.tokens {
                if token.analyses.is_empty() {
                    println!("{}\t{:?}\t\t\t", token.token, token.known);
                } else {
                    for analysis in &token.analyses {
                        println!(
                            "{}\t{:?}\t{}\t{}\t{}",
                            token.token,
                            token.known,
                            analysis.lemma,
                            analysis.features,
                            analysis.gloss
                        );
                    }
                }
            }
        }
        Format::Pretty => {
            println!("variety: {}", result.variety);
            for token in &result.tokens {
                if token.analyses.is_empty() {
                    println!("{}  (no analysis)", token.token);
                } else {
                    println!("{}", token.token);
                    for analysis in &token.analyses {
                        println!(
                            "    {} [{}]  {}",
                            analysis.lemma, analysis.features, analysis.gloss
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn print_score_report(report: &ScoreReport) {
    for (variety, score) in &report.scores {
        let marker = if *variety == report.winning_variety {
            " <- winner"
        } else {
            ""
        };
        println!("{variety}\t{score:.3}{marker}");
    }
}

fn cmd_identify(cli: &Cli, args: &InputArgs) -> Result<(), CliError> {
    let lexicons = load_lexicons(cli)?;
    let text = read_input(args)?;
    let report = classifier::identify_variety(&text, &lexicons)?;
    match cli.format {
        Format::Json => print_json(&report)?,
        _ => {
            println!("variety: {}", report.winning_variety);
            print_score_report(&report);
        }
    }
    Ok(())
}

fn cmd_lid(cli: &Cli, args: &LidArgs) -> Result<(), CliError> {
    let lexicons = load_lexicons(cli)?;
    let stopwords = stopword_set(&args.stopwords)?;
    let text = read_input(&args.input)?;
    let decision =
        classifier::identify_language(&text, &lexicons, args.mode, args.threshold, &stopwords)?;
    match cli.format {
        Format::Json => print_json(&decision)?,
        _ => {
            if decision.is_romansh {
                println!(
                    "romansh ({} score {:.3} >= threshold {})",
                    decision.report.winning_variety, decision.report.winning_score,
                    decision.threshold
                );
            } else {
                println!(
                    "not romansh (winning score {:.3} < threshold {})",
                    decision.report.winning_score, decision.threshold
                );
            }
            print_score_report(&decision.report);
        }
    }
    Ok(())
}

fn cmd_eval(cli: &Cli, args: &EvalArgs) -> Result<(), CliError> {
    let lexicons = load_lexicons(cli)?;
    let config = tokenizer_config(&args.protected)?;
    let file = std::fs::File::open(&args.samples).map_err(|e| config_io(&args.samples, e))?;
    let samples: Vec<LabeledSample> =
        read_samples_jsonl(std::io::BufReader::new(file), &config)?;
    match args.task {
        EvalTask::Coverage => {
            let table = eval::coverage_table(&samples, &lexicons, &VARIETY_BUCKETS)?;
            match cli.format {
                Format::Json => print_json(&table)?,
                Format::Tsv => print!("{}", table.to_tsv()),
                Format::Pretty => {
                    print!("{}", table.to_pretty());
                    println!("skipped samples: {}", table.skipped);
                }
            }
        }
        EvalTask::Variety => {
            let table = eval::variety_accuracy_table(&samples, &lexicons, &VARIETY_BUCKETS)?;
            match cli.format {
                Format::Json => print_json(&table)?,
                Format::Tsv => print!("{}", table.to_tsv()),
                Format::Pretty => {
                    print!("{}", table.to_pretty());
                    println!("skipped samples: {}", table.skipped);
                }
            }
        }
        EvalTask::Lid => {
            let stopwords = stopword_set(&args.stopwords)?;
            let report =
                eval::lid_distributions(&samples, &lexicons, args.mode, &stopwords, &LID_BUCKETS)?;
            if let Some(csv_path) = &args.csv {
                std::fs::write(csv_path, lid_rows_csv(&report.rows))
                    .map_err(|e| config_io(csv_path, e))?;
            }
            match cli.format {
                Format::Json => print_json(&report)?,
                _ => {
                    println!(
                        "{} samples scored, {} skipped (mode {})",
                        report.rows.len(),
                        report.skipped,
                        report.mode
                    );
                    for calibration in &report.calibrations {
                        match &calibration.choice {
                            Some(choice) => println!(
                                "bucket {}: threshold {:.3}, misclassified {}, margin {:.3} \
                                 ({} pos / {} neg)",
                                calibration.bucket,
                                choice.threshold,
                                choice.misclassified,
                                choice.margin,
                                calibration.positives,
                                calibration.negatives,
                            ),
                            None => println!(
                                "bucket {}: insufficient classes ({} pos / {} neg)",
                                calibration.bucket, calibration.positives, calibration.negatives,
                            ),
                        }
                    }
                    match &report.overall {
                        Some(choice) => println!(
                            "overall: threshold {:.3}, misclassified {}, margin {:.3}",
                            choice.threshold, choice.misclassified, choice.margin
                        ),
                        None => println!("overall: insufficient classes"),
                    }
                }
            }
        }
    }
    Ok(())
}

fn read_scores(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| config_io(path, e))?;
    let mut scores = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let score: f64 = line.parse().map_err(|e| {
            CliError::Config(format!("{}:{}: bad score: {e}", path.display(), idx + 1))
        })?;
        scores.push(score);
    }
    Ok(scores)
}

fn cmd_calibrate(cli: &Cli, args: &CalibrateArgs) -> Result<(), CliError> {
    let positive = read_scores(&args.positive)?;
    let negative = read_scores(&args.negative)?;
    let choice = classifier::find_threshold(&positive, &negative)?;
    match cli.format {
        Format::Json => print_json(&choice)?,
        _ => println!(
            "threshold {:.3} (misclassified {}, margin {:.3})",
            choice.threshold, choice.misclassified, choice.margin
        ),
    }
    Ok(())
}

fn cmd_skeletons(_cli: &Cli, args: &SkeletonsArgs) -> Result<(), CliError> {
    let dict_paths = files_with_extension(&args.dicts, "tsv")?;
    if dict_paths.is_empty() {
        return Err(CliError::Config(format!(
            "no dictionaries found in {}",
            args.dicts.display()
        )));
    }
    let inv = MtInventory::default();
    let mut entries = Vec::new();
    for path in &dict_paths {
        entries.extend(read_dictionary_tsv(path)?.entries);
    }
    let cases = generate_skeletons(&entries, args.min_count, &inv);
    std::fs::create_dir_all(&args.out).map_err(|e| config_io(&args.out, e))?;
    let paths = write_skeletons(&cases, &args.out)
        .map_err(|e| CliError::Config(format!("{}: {e}", args.out.display())))?;
    println!("wrote {} skeleton files to {}", paths.len(), args.out.display());
    Ok(())
}
