//! Evaluation sets with per-annotator human scores, annotator quality
//! control, and the K-subset agreement protocol.

mod evalset;
mod protocol;
mod qc;

pub use evalset::{
    load_evaluation_set, partition_batches, Batch, EvaluationSet, ANNOTATORS_PER_BATCH, BATCH_SIZE,
};
pub use protocol::{
    agreement_significance, agreement_table, binomial, cross_language_agreement, enumerate_subsets,
    model_quintiles, quintile_agreement_analysis, significance_matrix, within_language_agreement,
    AgreementReport, AgreementSample, AgreementTable, QuintileCurve, SignificanceRow, DEFAULT_QUINTILES,
    DEFAULT_SUBSET_SIZE,
};
pub use qc::{
    detect_outliers, detect_outliers_fixpoint, outlier_statistics, read_raw_scores, read_screening, run_qc,
    screen_annotators, write_exclusion_log, write_raw_scores, write_screening, ExclusionReason, ExclusionRecord, OutlierMode, OutlierReport,
    QcConfig, QcOutcome, RawScore, ScreeningOutcome, ScreeningResponse, DEFAULT_DISSIMILAR_MAX,
    DEFAULT_OUTLIER_THRESHOLD, DEFAULT_SIMILAR_MIN,
};
