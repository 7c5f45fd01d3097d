//! Command-line front end. Every subcommand writes a report (TSV with a
//! `# manifest` comment line) or a data file with a `.manifest.json`
//! sidecar, and maps errors to exit codes 2 (usage, validation), 3 (data,
//! format) and 4 (numerical degeneracy).

mod commands;
mod manifest;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use manifest::{sha256_hex, sidecar_path, InputDigest, RunManifest};

use crate::agreement::{DEFAULT_OUTLIER_THRESHOLD, DEFAULT_QUINTILES, DEFAULT_SUBSET_SIZE};
use crate::bow::{DEFAULT_CONTEXT_WORDS, DEFAULT_WINDOW};
use crate::combine::{DEFAULT_DIM_CAP, DEFAULT_EPS, DEFAULT_FRACTION, DEFAULT_LAMBDA, DEFAULT_REPS};

/// `LANG=PATH` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangPath {
    pub lang: String,
    pub path: PathBuf,
}

impl FromStr for LangPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lang, path) = s.split_once('=').ok_or_else(|| format!("expected LANG=PATH, got `{s}`"))?;
        if lang.is_empty() || path.is_empty() {
            return Err(format!("expected LANG=PATH, got `{s}`"));
        }
        Ok(LangPath {
            lang: lang.to_owned(),
            path: PathBuf::from(path),
        })
    }
}

impl fmt::Display for LangPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lang, self.path.display())
    }
}

impl Serialize for LangPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TextModeArg {
    Document,
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationArg {
    Spearman,
    Pearson,
    Kendall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OovArg {
    Skip,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AgreeMode {
    Within,
    Cross,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuintileMode {
    Within,
    Cross,
    Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMethod {
    Li,
    Cca,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionArg {
    Concat,
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QcModeArg {
    Single,
    Fixpoint,
}

/// Corpus reading and cleaning options shared by `build-bow` and `baseline`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct CorpusOpts {
    /// Raw UTF-8 text.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Language code of the corpus (selects stopwords and stemmer).
    #[arg(long)]
    pub lang: String,
    #[arg(long, value_enum, default_value = "document")]
    pub text_mode: TextModeArg,
    /// Keep stopwords.
    #[arg(long)]
    pub no_stopwords: bool,
    /// Do not stem.
    #[arg(long)]
    pub no_stem: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BowOpts {
    /// Number of most frequent context words (k).
    #[arg(long, default_value_t = DEFAULT_CONTEXT_WORDS)]
    pub context_words: usize,
    /// Context window radius (C).
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BuildBowArgs {
    #[command(flatten)]
    pub corpus: CorpusOpts,
    #[command(flatten)]
    pub bow: BowOpts,
    /// Target words: one per line, or any TSV starting with pair_index, word1, word2.
    #[arg(long)]
    pub targets: PathBuf,
    /// Output vectors in word2vec text format.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScoreArgs {
    #[arg(long)]
    pub vectors: PathBuf,
    #[arg(long)]
    pub lang: String,
    /// Pair TSV (pair_index, word1, word2, ...), e.g. an evaluation set.
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long, value_enum, default_value = "skip")]
    pub oov: OovArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    /// Vector table of a training language, LANG=PATH.
    #[arg(long = "model")]
    pub models: Vec<LangPath>,
    /// Precomputed score TSV standing in for a model, LANG=PATH.
    #[arg(long = "scores")]
    pub scores: Vec<LangPath>,
    /// Evaluation set of a judgment language, LANG=PATH.
    #[arg(long = "evalset", required = true)]
    pub evalsets: Vec<LangPath>,
    #[arg(long, default_value = "dataset")]
    pub dataset: String,
    #[arg(long, value_enum, default_value = "spearman")]
    pub correlation: CorrelationArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AgreeArgs {
    #[arg(long = "evalset", required = true)]
    pub evalsets: Vec<LangPath>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: AgreeMode,
    /// Annotators per subset (K).
    #[arg(long, default_value_t = DEFAULT_SUBSET_SIZE)]
    pub subset_size: usize,
    #[arg(long, default_value = "dataset")]
    pub dataset: String,
    /// Agreement table.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Every per-split correlation.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// Welch tests of every within cell against every cross cell.
    #[arg(long)]
    pub significance: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuintilesArgs {
    #[arg(long, value_enum)]
    pub mode: QuintileMode,
    #[arg(long = "evalset", required = true)]
    pub evalsets: Vec<LangPath>,
    /// Model score TSV (model mode).
    #[arg(long)]
    pub scores: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_QUINTILES)]
    pub quintiles: usize,
    #[arg(long, default_value_t = DEFAULT_SUBSET_SIZE)]
    pub subset_size: usize,
    #[arg(long, default_value = "dataset")]
    pub dataset: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CombineArgs {
    #[arg(long, value_enum)]
    pub method: CombineMethod,
    /// Two vector tables, LANG=PATH.
    #[arg(long = "model")]
    pub models: Vec<LangPath>,
    /// Two precomputed score TSVs (li only), LANG=PATH.
    #[arg(long = "scores")]
    pub scores: Vec<LangPath>,
    /// Evaluation sets for the model languages and the judgment language.
    #[arg(long = "evalset", required = true)]
    pub evalsets: Vec<LangPath>,
    /// Language of the human scores; defaults to the first model's language.
    #[arg(long)]
    pub judgment: Option<String>,
    #[arg(long, default_value = "dataset")]
    pub dataset: String,
    #[arg(long, value_enum, default_value = "spearman")]
    pub correlation: CorrelationArg,
    /// Weight of the first model (li).
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// Aligned lexicon TSV (cca); defaults to the evaluation-set words.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Canonical pairs to keep (cca); all by default.
    #[arg(long)]
    pub components: Option<usize>,
    /// Principal directions kept per view before CCA.
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: usize,
    #[arg(long)]
    pub no_dim_cap: bool,
    /// Do not unit-normalize rows before CCA.
    #[arg(long)]
    pub no_normalize: bool,
    /// Unit-normalize each projected half before concatenation.
    #[arg(long)]
    pub half_norm: bool,
    #[arg(long, value_enum, default_value = "concat")]
    pub projection: ProjectionArg,
    /// Evaluation report.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Combined pair scores (TSV).
    #[arg(long)]
    pub scores_out: Option<PathBuf>,
    /// Combined vectors (cca).
    #[arg(long)]
    pub vectors_out: Option<PathBuf>,
    /// Fitted CCA model (cca).
    #[arg(long)]
    pub model_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QcArgs {
    /// Raw scores: batch, annotator, pair_index, word1, word2, score.
    #[arg(long)]
    pub raw: PathBuf,
    /// Screening responses: annotator, similar, dissimilar.
    #[arg(long)]
    pub screening: Option<PathBuf>,
    #[arg(long)]
    pub lang: String,
    #[arg(long, default_value = "dataset")]
    pub dataset: String,
    #[arg(long, default_value_t = DEFAULT_OUTLIER_THRESHOLD)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value = "single")]
    pub mode: QcModeArg,
    #[arg(long, default_value_t = crate::agreement::ANNOTATORS_PER_BATCH)]
    pub annotators: usize,
    /// Cleaned evaluation set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exclusion log.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoverageArgs {
    #[arg(long = "model", required = true)]
    pub models: Vec<LangPath>,
    #[arg(long = "evalset", required = true)]
    pub evalsets: Vec<LangPath>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub corpus: CorpusOpts,
    #[command(flatten)]
    pub bow: BowOpts,
    /// Evaluation set in the corpus language.
    #[arg(long)]
    pub evalset: PathBuf,
    #[arg(long, value_enum)]
    pub method: CombineMethod,
    #[arg(long, default_value_t = DEFAULT_FRACTION)]
    pub fraction: f64,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "spearman")]
    pub correlation: CorrelationArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub lang: String,
    #[arg(long, value_enum, default_value = "document")]
    pub text_mode: TextModeArg,
    /// Fraction of sentences to keep, in (0, 1].
    #[arg(long)]
    pub fraction: f64,
    #[arg(long)]
    pub seed: u64,
    /// Sampled corpus, one tokenized sentence per line.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build PPMI co-occurrence vectors from a corpus.
    BuildBow(BuildBowArgs),
    /// Cosine scores for word pairs.
    Score(ScoreArgs),
    /// Correlate models of training languages with human scores of judgment languages.
    Eval(EvalArgs),
    /// Inter-annotator agreement within and across languages.
    Agree(AgreeArgs),
    /// Per-quintile relative F-scores between rankings.
    Quintiles(QuintilesArgs),
    /// Combine two models by interpolation or CCA.
    Combine(CombineArgs),
    /// Annotator screening and outlier exclusion.
    Qc(QcArgs),
    /// Pairs excluded because a word is missing from some model.
    Coverage(CoverageArgs),
    /// Two models on resampled halves of one corpus, combined.
    Baseline(BaselineArgs),
    /// Random fraction of a corpus's sentences.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Parser)]
#[command(name = "vsm-eval", version, about = "Word vector evaluation across judgment languages")]
pub struct Cli {
    /// Log progress to stderr (RUST_LOG overrides).
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Run a parsed command line.
pub fn run(cli: Cli) -> crate::error::Result<()> {
    commands::dispatch(cli.command)
}

/// Parse `std::env::args`, run, print errors and return the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
