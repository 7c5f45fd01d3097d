//! Human agreement over K-size annotator subsets, within one judgment
//! language and across two.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scoring::{rank_scores, ScoreVector};
use crate::stats::{mean, quintile_fscore, sample_std, spearman, welch_t_test, WelchResult};

use super::evalset::EvaluationSet;

pub const DEFAULT_SUBSET_SIZE: usize = 6;
pub const DEFAULT_QUINTILES: usize = 5;

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn enumerate_subsets(n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "subset size {k} must satisfy 0 < k < n = {n}"
        )));
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    Ok(out)
}

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !subset.contains(i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementSample {
    pub batch: usize,
    /// Position of the subset in lexicographic order.
    pub subset: usize,
    pub rho: f64,
}

/// Spearman correlations for every (batch, subset) split of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    /// `en` for a within-language cell, `en-de` for a cross-language cell.
    pub label: String,
    pub samples: Vec<AgreementSample>,
    /// Splits whose correlation was undefined (a constant side).
    pub failed: usize,
    pub mean: f64,
    /// Sample standard deviation of the correlations.
    pub std: f64,
}

impl AgreementReport {
    fn from_samples(label: String, outcomes: Vec<(usize, usize, Result<f64>)>) -> Result<Self> {
        let mut samples = Vec::with_capacity(outcomes.len());
        let mut failed = 0;
        for (batch, subset, rho) in outcomes {
            match rho {
                Ok(rho) => samples.push(AgreementSample { batch, subset, rho }),
                Err(Error::UndefinedCorrelation(_)) => failed += 1,
                Err(e) => return Err(e),
            }
        }
        let rhos: Vec<f64> = samples.iter().map(|s| s.rho).collect();
        let (mean, std) = match rhos.len() {
            0 => (f64::NAN, f64::NAN),
            1 => (rhos[0], 0.0),
            _ => (mean(&rhos), sample_std(&rhos)),
        };
        Ok(AgreementReport {
            label,
            samples,
            failed,
            mean,
            std,
        })
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn rhos(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.rho).collect()
    }

    /// `cell  batch  subset  rho` rows without a header.
    pub fn write_samples<W: Write>(&self, mut out: W) -> io::Result<()> {
        for s in &self.samples {
            writeln!(out, "{}\t{}\t{}\t{}", self.label, s.batch, s.subset, s.rho)?;
        }
        Ok(())
    }
}

fn column_means(set: &EvaluationSet, rows: &[usize], columns: &[usize]) -> Vec<f64> {
    rows.iter()
        .map(|&r| {
            let s = &set.scores()[r];
            columns.iter().map(|&c| s[c]).sum::<f64>() / columns.len() as f64
        })
        .collect()
}

fn check_subset_size(set: &EvaluationSet, k: usize) -> Result<Vec<Vec<usize>>> {
    enumerate_subsets(set.annotators(), k)
}

/// For each batch and each `k`-subset `S` of its annotators, the Spearman
/// correlation between per-pair means over `S` and over the complement of
/// `S`.
pub fn within_language_agreement(set: &EvaluationSet, k: usize) -> Result<AgreementReport> {
    let subsets = check_subset_size(set, k)?;
    let n = set.annotators();
    let batches = set.batches();
    let outcomes: Vec<(usize, usize, Result<f64>)> = batches
        .iter()
        .flat_map(|b| (0..subsets.len()).map(move |s| (b, s)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(batch, s)| {
            let left = column_means(set, &batch.rows, &subsets[s]);
            let right = column_means(set, &batch.rows, &complement(&subsets[s], n));
            (batch.id, s, spearman(&left, &right))
        })
        .collect();
    AgreementReport::from_samples(set.language().to_string(), outcomes)
}

/// For each batch and each `k`-subset `S` of annotator slots, the Spearman
/// correlation between per-pair means over slots `S` in `first` and over the
/// same slots in `second`.
pub fn cross_language_agreement(first: &EvaluationSet, second: &EvaluationSet, k: usize) -> Result<AgreementReport> {
    first.check_aligned(second)?;
    let subsets = check_subset_size(first, k)?;
    let batches = first.batches();
    let outcomes: Vec<(usize, usize, Result<f64>)> = batches
        .iter()
        .flat_map(|b| (0..subsets.len()).map(move |s| (b, s)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(batch, s)| {
            let left = column_means(first, &batch.rows, &subsets[s]);
            let right = column_means(second, &batch.rows, &subsets[s]);
            (batch.id, s, spearman(&left, &right))
        })
        .collect();
    AgreementReport::from_samples(format!("{}-{}", first.language(), second.language()), outcomes)
}

/// Welch's t-test between the raw correlation samples of two cells.
pub fn agreement_significance(within: &AgreementReport, cross: &AgreementReport) -> Result<WelchResult> {
    if within.samples.is_empty() || cross.samples.is_empty() {
        return Err(Error::EmptyInput("agreement report has no samples".into()));
    }
    welch_t_test(&within.rhos(), &cross.rhos())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceRow {
    pub within: String,
    pub cross: String,
    pub result: WelchResult,
}

/// Every within-language cell tested against every cross-language cell.
/// Four languages give 4 x 6 = 24 tests.
pub fn significance_matrix(within: &[AgreementReport], cross: &[AgreementReport]) -> Result<Vec<SignificanceRow>> {
    let mut rows = Vec::with_capacity(within.len() * cross.len());
    for w in within {
        for c in cross {
            rows.push(SignificanceRow {
                within: w.label.clone(),
                cross: c.label.clone(),
                result: agreement_significance(w, c)?,
            });
        }
    }
    Ok(rows)
}

/// Agreement cells for a group of aligned language versions.
#[derive(Debug, Clone)]
pub struct AgreementTable {
    pub within: Vec<AgreementReport>,
    pub cross: Vec<AgreementReport>,
}

/// Within-language cells for every set and cross-language cells for every
/// unordered pair of sets (in input order).
pub fn agreement_table(sets: &[EvaluationSet], k: usize) -> Result<AgreementTable> {
    let within = sets.iter().map(|s| within_language_agreement(s, k)).collect::<Result<Vec<_>>>()?;
    let mut cross = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            cross.push(cross_language_agreement(&sets[i], &sets[j], k)?);
        }
    }
    Ok(AgreementTable { within, cross })
}

/// Per-quintile relative F-scores averaged over subset splits.
#[derive(Debug, Clone, PartialEq)]
pub struct QuintileCurve {
    pub label: String,
    pub f_scores: Vec<f64>,
    pub cases: usize,
}

/// For every `k`-subset `S` of annotator slots, rank all pairs of the
/// dataset by their mean over `S` and by their mean over the other side
/// (the complement of `S` in `first` when `second` is `None`, slots `S` of
/// `second` otherwise), split both rankings into `q` blocks and average each
/// block's F-score over all subsets.
pub fn quintile_agreement_analysis(
    first: &EvaluationSet,
    second: Option<&EvaluationSet>,
    k: usize,
    q: usize,
) -> Result<QuintileCurve> {
    if let Some(other) = second {
        first.check_aligned(other)?;
    }
    let subsets = check_subset_size(first, k)?;
    let n = first.annotators();
    let all_rows: Vec<usize> = (0..first.len()).collect();
    let ids = first.pairs().ids();

    let per_subset: Vec<Vec<f64>> = subsets
        .par_iter()
        .map(|subset| {
            let left = column_means(first, &all_rows, subset);
            let right = match second {
                None => column_means(first, &all_rows, &complement(subset, n)),
                Some(other) => column_means(other, &all_rows, subset),
            };
            let r1 = rank_scores(&ScoreVector::new("left", ids.clone(), left)?)?;
            let r2 = rank_scores(&ScoreVector::new("right", ids.clone(), right)?)?;
            Ok(quintile_fscore(&r1, &r2, q)?.f_scores)
        })
        .collect::<Result<_>>()?;

    let mut f_scores = vec![0.0; q];
    for f in &per_subset {
        f_scores.iter_mut().zip(f).for_each(|(acc, v)| *acc += v);
    }
    let cases = per_subset.len();
    f_scores.iter_mut().for_each(|v| *v /= cases as f64);
    let label = match second {
        None => first.language().to_string(),
        Some(other) => format!("{}-{}", first.language(), other.language()),
    };
    Ok(QuintileCurve { label, f_scores, cases })
}

/// Quintile overlap between a model's ranking and the ranking by the mean
/// of all human scores, over the pairs the model scored.
pub fn model_quintiles(model: &ScoreVector, set: &EvaluationSet, q: usize) -> Result<QuintileCurve> {
    let human = set.human_means().restrict(model.ids())?;
    let overlap = quintile_fscore(&rank_scores(model)?, &rank_scores(&human)?, q)?;
    Ok(QuintileCurve {
        label: format!("{}~{}", model.provenance(), set.language()),
        f_scores: overlap.f_scores,
        cases: 1,
    })
}
