//! Combining two vector space models: score interpolation, CCA projection
//! with concatenation, and the same-corpus resampling baseline.

mod baseline;
mod cca;
mod interpolate;
mod lexicon;
mod project;

pub use baseline::{
    combine_tables, derive_seed, monolingual_baseline, BaselineConfig, BaselineReport, Combiner, Repetition,
    DEFAULT_FRACTION, DEFAULT_REPS,
};
pub use cca::{
    fit_cca, fit_cca_tables, lexicon_matrix, load_cca_model, save_cca_model, CcaModel, CcaOptions, DEFAULT_DIM_CAP,
    DEFAULT_EPS,
};
pub use interpolate::{interpolate_scores, DEFAULT_LAMBDA, LAMBDA_SWEEP};
pub use lexicon::{load_lexicon, self_lexicon, TranslationLexicon};
pub use project::{project_concat, CombinedTable, ProjectOptions, ProjectionMode};
