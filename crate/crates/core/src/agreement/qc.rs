//! Annotator quality control: qualification screening and outlier removal
//! over raw crowdsourced score tables.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::scoring::{PairId, WordPair, WordPairList};
use crate::stats::{mean, sample_std};

use super::evalset::{EvaluationSet, ANNOTATORS_PER_BATCH, MAX_SCORE, MIN_SCORE};

pub const DEFAULT_SIMILAR_MIN: f64 = 7.0;
pub const DEFAULT_DISSIMILAR_MAX: f64 = 3.0;
pub const DEFAULT_OUTLIER_THRESHOLD: f64 = 1.45;

/// An annotator's answers to one qualification test: one clearly similar
/// pair and one clearly dissimilar pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningResponse {
    pub annotator: String,
    pub similar: f64,
    pub dissimilar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningOutcome {
    pub annotator: String,
    pub passed: bool,
}

/// Fails an annotator who scored the similar pair below `similar_min` or
/// the dissimilar pair above `dissimilar_max`. Boundary values pass.
pub fn screen_annotators(
    responses: &[ScreeningResponse],
    similar_min: f64,
    dissimilar_max: f64,
) -> Result<Vec<ScreeningOutcome>> {
    responses
        .iter()
        .map(|r| {
            for v in [r.similar, r.dissimilar] {
                if !(MIN_SCORE..=MAX_SCORE).contains(&v) {
                    return Err(Error::Validation(format!(
                        "annotator {}: test score {v} outside [0, 10]",
                        r.annotator
                    )));
                }
            }
            Ok(ScreeningOutcome {
                annotator: r.annotator.clone(),
                passed: !(r.similar < similar_min || r.dissimilar > dissimilar_max),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutlierReport {
    /// Per annotator, in input order.
    pub statistics: Vec<f64>,
    pub kept: Vec<usize>,
    pub excluded: Vec<usize>,
}

/// The distance of each annotator's mean score from the mean of the other
/// annotators' means, divided by the sample standard deviation of those
/// other means.
///
/// All statistics come from the original table; nobody is removed before
/// every statistic is computed. When the others' standard deviation is zero
/// the statistic is 0 if the means coincide and `+inf` otherwise.
pub fn outlier_statistics(annotator_scores: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = annotator_scores.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "outlier detection needs at least 3 annotators, got {n}"
        )));
    }
    if let Some(j) = annotator_scores.iter().position(Vec::is_empty) {
        return Err(Error::Validation(format!("annotator {j} has no scores")));
    }
    let means: Vec<f64> = annotator_scores.iter().map(|s| mean(s)).collect();
    Ok((0..n)
        .map(|j| {
            // offsets from this annotator's mean, so equal means give exactly 0
            let others: Vec<f64> = means
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &m)| m - means[j])
                .collect();
            let distance = mean(&others).abs();
            let spread = sample_std(&others);
            if spread == 0.0 {
                if distance == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                distance / spread
            }
        })
        .collect())
}

/// Single-pass exclusion: an annotator is dropped when its statistic is
/// strictly above `threshold`.
pub fn detect_outliers(annotator_scores: &[Vec<f64>], threshold: f64) -> Result<OutlierReport> {
    let statistics = outlier_statistics(annotator_scores)?;
    let (excluded, kept): (Vec<usize>, Vec<usize>) = (0..statistics.len()).partition(|&j| statistics[j] > threshold);
    Ok(OutlierReport {
        statistics,
        kept,
        excluded,
    })
}

/// Repeat single-pass detection on the survivors until nothing changes or
/// fewer than three annotators remain. Indices refer to the input order.
pub fn detect_outliers_fixpoint(annotator_scores: &[Vec<f64>], threshold: f64) -> Result<OutlierReport> {
    let first = detect_outliers(annotator_scores, threshold)?;
    let statistics = first.statistics.clone();
    let mut kept = first.kept;
    let mut excluded = first.excluded;
    while kept.len() >= 3 {
        let subset: Vec<Vec<f64>> = kept.iter().map(|&j| annotator_scores[j].clone()).collect();
        let round = detect_outliers(&subset, threshold)?;
        if round.excluded.is_empty() {
            break;
        }
        excluded.extend(round.excluded.iter().map(|&i| kept[i]));
        kept = round.kept.iter().map(|&i| kept[i]).collect();
    }
    excluded.sort_unstable();
    Ok(OutlierReport {
        statistics,
        kept,
        excluded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutlierMode {
    #[default]
    SinglePass,
    Fixpoint,
}

/// One raw crowdsourced judgment.
#[derive(Debug, Clone, PartialEq)]
pub struct RawScore {
    pub batch: usize,
    pub annotator: String,
    pub pair: WordPair,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    FailedScreening,
    Outlier,
    /// More annotators passed than a batch needs; later ones are not used.
    Surplus,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::FailedScreening => "screening",
            ExclusionReason::Outlier => "outlier",
            ExclusionReason::Surplus => "surplus",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionRecord {
    pub batch: usize,
    pub annotator: String,
    pub reason: ExclusionReason,
    pub statistic: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct QcConfig {
    pub threshold: f64,
    pub mode: OutlierMode,
    pub similar_min: f64,
    pub dissimilar_max: f64,
    pub annotators_per_batch: usize,
}

impl Default for QcConfig {
    fn default() -> Self {
        QcConfig {
            threshold: DEFAULT_OUTLIER_THRESHOLD,
            mode: OutlierMode::SinglePass,
            similar_min: DEFAULT_SIMILAR_MIN,
            dissimilar_max: DEFAULT_DISSIMILAR_MAX,
            annotators_per_batch: ANNOTATORS_PER_BATCH,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QcOutcome {
    pub set: EvaluationSet,
    pub log: Vec<ExclusionRecord>,
}

/// Screen, remove outliers per batch, and keep the first
/// `annotators_per_batch` surviving annotators of every batch in collection
/// order.
///
/// Every annotator must have scored every pair of its batch. Annotators
/// without a screening response are treated as having passed.
pub fn run_qc(
    dataset: &str,
    language: impl Into<Language>,
    raw: &[RawScore],
    screening: &[ScreeningResponse],
    config: &QcConfig,
) -> Result<QcOutcome> {
    let language = language.into();
    let screened: HashMap<String, bool> = screen_annotators(screening, config.similar_min, config.dissimilar_max)?
        .into_iter()
        .map(|o| (o.annotator, o.passed))
        .collect();

    // batch -> (pairs in first-appearance order, annotators in first-appearance order, scores)
    struct BatchData {
        pairs: Vec<WordPair>,
        annotators: Vec<String>,
        scores: HashMap<(String, PairId), f64>,
    }
    let mut batches: BTreeMap<usize, BatchData> = BTreeMap::new();
    let mut batch_order = Vec::new();
    for r in raw {
        if !(MIN_SCORE..=MAX_SCORE).contains(&r.score) {
            return Err(Error::Validation(format!(
                "batch {} annotator {} pair {}: score {} outside [0, 10]",
                r.batch, r.annotator, r.pair.id, r.score
            )));
        }
        let b = batches.entry(r.batch).or_insert_with(|| {
            batch_order.push(r.batch);
            BatchData {
                pairs: Vec::new(),
                annotators: Vec::new(),
                scores: HashMap::new(),
            }
        });
        if !b.pairs.iter().any(|p| p.id == r.pair.id) {
            b.pairs.push(r.pair.clone());
        }
        if !b.annotators.contains(&r.annotator) {
            b.annotators.push(r.annotator.clone());
        }
        if b.scores.insert((r.annotator.clone(), r.pair.id), r.score).is_some() {
            return Err(Error::Validation(format!(
                "annotator {} scored pair {} twice",
                r.annotator, r.pair.id
            )));
        }
    }

    let mut log = Vec::new();
    let mut pairs = Vec::new();
    let mut batch_of = Vec::new();
    let mut rows = Vec::new();
    for batch_id in batch_order {
        let b = &batches[&batch_id];
        let mut pool = Vec::new();
        for a in &b.annotators {
            if screened.get(a).copied().unwrap_or(true) {
                pool.push(a.clone());
            } else {
                log.push(ExclusionRecord {
                    batch: batch_id,
                    annotator: a.clone(),
                    reason: ExclusionReason::FailedScreening,
                    statistic: None,
                });
            }
        }
        let columns: Vec<Vec<f64>> = pool
            .iter()
            .map(|a| {
                b.pairs
                    .iter()
                    .map(|p| {
                        b.scores.get(&(a.clone(), p.id)).copied().ok_or_else(|| {
                            Error::Validation(format!("batch {batch_id}: annotator {a} did not score pair {}", p.id))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        let report = match config.mode {
            OutlierMode::SinglePass => detect_outliers(&columns, config.threshold)?,
            OutlierMode::Fixpoint => detect_outliers_fixpoint(&columns, config.threshold)?,
        };
        for &j in &report.excluded {
            log.push(ExclusionRecord {
                batch: batch_id,
                annotator: pool[j].clone(),
                reason: ExclusionReason::Outlier,
                statistic: Some(report.statistics[j]),
            });
        }
        if report.kept.len() < config.annotators_per_batch {
            return Err(Error::Validation(format!(
                "batch {batch_id}: only {} annotators survive quality control, {} needed",
                report.kept.len(),
                config.annotators_per_batch
            )));
        }
        let (used, surplus) = report.kept.split_at(config.annotators_per_batch);
        for &j in surplus {
            log.push(ExclusionRecord {
                batch: batch_id,
                annotator: pool[j].clone(),
                reason: ExclusionReason::Surplus,
                statistic: Some(report.statistics[j]),
            });
        }
        for (p_idx, pair) in b.pairs.iter().enumerate() {
            pairs.push(pair.clone());
            batch_of.push(batch_id);
            rows.push(used.iter().map(|&j| columns[j][p_idx]).collect());
        }
    }
    let set = EvaluationSet::new(dataset, WordPairList::new(language, pairs)?, batch_of, rows)?;
    Ok(QcOutcome { set, log })
}

/// `batch  annotator  pair_index  word1  word2  score` with a header.
pub fn read_raw_scores<R: BufRead>(reader: R) -> Result<Vec<RawScore>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if !header_seen {
            if f != ["batch", "annotator", "pair_index", "word1", "word2", "score"] {
                return Err(Error::format(lineno, "expected header batch, annotator, pair_index, word1, word2, score"));
            }
            header_seen = true;
            continue;
        }
        if f.len() != 6 {
            return Err(Error::format(lineno, format!("expected 6 columns, found {}", f.len())));
        }
        let parse_err = |what: &str, e: &dyn std::fmt::Display| Error::format(lineno, format!("bad {what}: {e}"));
        out.push(RawScore {
            batch: f[0].parse().map_err(|e| parse_err("batch", &e))?,
            annotator: f[1].to_owned(),
            pair: WordPair {
                id: f[2].parse().map_err(|e| parse_err("pair index", &e))?,
                word1: f[3].to_owned(),
                word2: f[4].to_owned(),
            },
            score: f[5].parse().map_err(|e| parse_err("score", &e))?,
        });
    }
    Ok(out)
}

/// `annotator  similar  dissimilar` with a header.
pub fn read_screening<R: BufRead>(reader: R) -> Result<Vec<ScreeningResponse>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if !header_seen {
            if f != ["annotator", "similar", "dissimilar"] {
                return Err(Error::format(lineno, "expected header annotator, similar, dissimilar"));
            }
            header_seen = true;
            continue;
        }
        if f.len() != 3 {
            return Err(Error::format(lineno, format!("expected 3 columns, found {}", f.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| Error::format(lineno, format!("bad score `{s}`: {e}")));
        out.push(ScreeningResponse {
            annotator: f[0].to_owned(),
            similar: num(f[1])?,
            dissimilar: num(f[2])?,
        });
    }
    Ok(out)
}

pub fn write_raw_scores<W: Write>(mut out: W, raw: &[RawScore]) -> io::Result<()> {
    writeln!(out, "batch\tannotator\tpair_index\tword1\tword2\tscore")?;
    for r in raw {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.batch, r.annotator, r.pair.id, r.pair.word1, r.pair.word2, r.score
        )?;
    }
    Ok(())
}

pub fn write_screening<W: Write>(mut out: W, responses: &[ScreeningResponse]) -> io::Result<()> {
    writeln!(out, "annotator\tsimilar\tdissimilar")?;
    for r in responses {
        writeln!(out, "{}\t{}\t{}", r.annotator, r.similar, r.dissimilar)?;
    }
    Ok(())
}

pub fn write_exclusion_log<W: Write>(mut out: W, log: &[ExclusionRecord]) -> io::Result<()> {
    writeln!(out, "batch\tannotator\treason\tstatistic")?;
    for r in log {
        let stat = r.statistic.map_or_else(|| "-".to_string(), |s| s.to_string());
        writeln!(out, "{}\t{}\t{}\t{stat}", r.batch, r.annotator, r.reason.as_str())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn response(similar: f64, dissimilar: f64) -> ScreeningResponse {
        ScreeningResponse {
            annotator: "w".into(),
            similar,
            dissimilar,
        }
    }

    fn passes(similar: f64, dissimilar: f64) -> bool {
        screen_annotators(&[response(similar, dissimilar)], 7.0, 3.0).unwrap()[0].passed
    }

    #[test]
    fn screening_thresholds() {
        assert!(passes(9.0, 1.0));
        assert!(!passes(6.9, 0.0));
        assert!(passes(7.0, 3.0));
        assert!(!passes(8.0, 3.1));
        assert!(screen_annotators(&[response(11.0, 0.0)], 7.0, 3.0).is_err());
    }

    #[test]
    fn identical_annotators_are_all_kept() {
        let cols = vec![vec![3.0, 7.0, 5.0]; 13];
        let r = detect_outliers(&cols, 1.45).unwrap();
        assert!(r.excluded.is_empty());
        assert!(r.statistics.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn hand_computed_statistic() {
        // means: 2, 4, 6, 12
        let cols = vec![vec![1.0, 3.0], vec![4.0, 4.0], vec![6.0, 6.0], vec![12.0, 12.0]];
        let stats = outlier_statistics(&cols).unwrap();
        // annotator 3: others {2, 4, 6}: mean 4, sample sd 2 -> |12 - 4| / 2 = 4
        assert_abs_diff_eq!(stats[3], 4.0, epsilon = 1e-12);
        // annotator 0: others {4, 6, 12}: mean 22/3, sd sqrt(((10/3)^2 + (4/3)^2 + (14/3)^2) / 2)
        let sd = ((100.0 + 16.0 + 196.0) / 9.0 / 2.0f64).sqrt();
        assert_abs_diff_eq!(stats[0], (22.0 / 3.0 - 2.0) / sd, epsilon = 1e-12);
        let r = detect_outliers(&cols, 1.45).unwrap();
        assert_eq!(r.excluded, vec![3]);
        assert!(detect_outliers(&cols, f64::INFINITY).unwrap().excluded.is_empty());
    }

    #[test]
    fn zero_spread_convention() {
        let cols = vec![vec![5.0], vec![5.0], vec![5.0], vec![9.0]];
        let stats = outlier_statistics(&cols).unwrap();
        assert_eq!(stats[3], f64::INFINITY);
        assert!(outlier_statistics(&cols[..2]).is_err());
    }

    #[test]
    fn threshold_is_strict() {
        // others {0, 2}: mean 1, sd sqrt(2); annotator mean 1 + 1.45 sqrt(2)
        let m = 1.0 + 1.45 * 2f64.sqrt();
        let cols = vec![vec![0.0], vec![2.0], vec![m]];
        let stats = outlier_statistics(&cols).unwrap();
        let r = detect_outliers(&cols, stats[2]).unwrap();
        assert!(!r.excluded.contains(&2));
    }

    #[test]
    fn fixpoint_removes_more() {
        let cols = vec![
            vec![5.0], vec![5.1], vec![4.9], vec![5.05], vec![4.95],
            vec![6.0], vec![9.5],
        ];
        let single = detect_outliers(&cols, 1.45).unwrap();
        let fix = detect_outliers_fixpoint(&cols, 1.45).unwrap();
        assert!(single.excluded.contains(&6));
        assert!(fix.excluded.len() >= single.excluded.len());
        assert!(fix.excluded.contains(&5));
    }

    #[test]
    fn raw_pipeline() {
        let mut raw = Vec::new();
        for a in 0..15 {
            for p in 0..4 {
                let base = p as f64 * 2.0 + 1.0;
                let score = if a == 14 { (base + 5.0).min(10.0) } else { base + (a % 3) as f64 * 0.1 };
                raw.push(RawScore {
                    batch: 0,
                    annotator: format!("w{a}"),
                    pair: WordPair { id: p, word1: format!("x{p}"), word2: format!("y{p}") },
                    score,
                });
            }
        }
        let screening = vec![ScreeningResponse { annotator: "w0".into(), similar: 5.0, dissimilar: 1.0 }];
        let out = run_qc("toy", "en", &raw, &screening, &QcConfig::default()).unwrap();
        assert_eq!(out.set.annotators(), 13);
        assert_eq!(out.set.len(), 4);
        let reasons: Vec<(&str, ExclusionReason)> = out.log.iter().map(|r| (r.annotator.as_str(), r.reason)).collect();
        assert_eq!(
            reasons,
            vec![("w0", ExclusionReason::FailedScreening), ("w14", ExclusionReason::Outlier)]
        );

        let mut buf = Vec::new();
        write_exclusion_log(&mut buf, &out.log).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("0\tw0\tscreening\t-\n"));
    }

    #[test]
    fn raw_pipeline_needs_complete_batches() {
        let raw: Vec<RawScore> = (0..5)
            .map(|a| RawScore {
                batch: 0,
                annotator: format!("w{a}"),
                pair: WordPair { id: 0, word1: "a".into(), word2: "b".into() },
                score: 5.0,
            })
            .collect();
        assert!(matches!(run_qc("t", "en", &raw, &[], &QcConfig::default()), Err(Error::Validation(_))));
    }

    #[test]
    fn parses_raw_and_screening_tables() {
        let raw = "batch\tannotator\tpair_index\tword1\tword2\tscore\n0\tw1\t3\tcat\tdog\t7.5\n";
        let rows = read_raw_scores(raw.as_bytes()).unwrap();
        assert_eq!(rows[0].pair.id, 3);
        assert_eq!(rows[0].score, 7.5);
        assert!(read_raw_scores("bogus\n".as_bytes()).is_err());
        let s = read_screening("annotator\tsimilar\tdissimilar\nw1\t8\t2\n".as_bytes()).unwrap();
        assert_eq!(s[0], ScreeningResponse { annotator: "w1".into(), similar: 8.0, dissimilar: 2.0 });
    }
}
