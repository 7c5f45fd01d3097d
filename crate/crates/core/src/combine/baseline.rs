//! Same-corpus baseline: two models trained on independent subsamples of
//! one corpus, combined exactly like a bilingual pair.

use rayon::prelude::*;

use crate::corpus::{sample_corpus, Corpus};
use crate::error::{Error, Result};
use crate::scoring::{correlate_scores, score_pairs, OovPolicy, ScoreVector, WordPairList};
use crate::stats::{mean, Correlation};
use crate::vectors::VectorTable;

use super::cca::{fit_cca_tables, CcaOptions};
use super::interpolate::{interpolate_scores, DEFAULT_LAMBDA};
use super::lexicon::self_lexicon;
use super::project::{project_concat, ProjectOptions};

pub const DEFAULT_FRACTION: f64 = 0.8;
pub const DEFAULT_REPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combiner {
    Li { lambda: f64 },
    Cca { cca: CcaOptions, project: ProjectOptions },
}

impl Combiner {
    pub fn li() -> Self {
        Combiner::Li { lambda: DEFAULT_LAMBDA }
    }

    pub fn cca() -> Self {
        Combiner::Cca {
            cca: CcaOptions::for_tables(),
            project: ProjectOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineConfig {
    pub combiner: Combiner,
    pub fraction: f64,
    pub reps: usize,
    pub seed: u64,
    pub correlation: Correlation,
}

impl BaselineConfig {
    pub fn new(combiner: Combiner, seed: u64) -> Self {
        BaselineConfig {
            combiner,
            fraction: DEFAULT_FRACTION,
            reps: DEFAULT_REPS,
            seed,
            correlation: Correlation::Spearman,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Repetition {
    pub rep: usize,
    pub seeds: (u64, u64),
    /// Coefficient and pair count, or the reason the repetition failed.
    pub outcome: std::result::Result<(f64, usize), String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineReport {
    pub repetitions: Vec<Repetition>,
}

impl BaselineReport {
    pub fn rhos(&self) -> Vec<f64> {
        self.repetitions
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|o| o.0))
            .collect()
    }

    pub fn failed(&self) -> usize {
        self.repetitions.iter().filter(|r| r.outcome.is_err()).count()
    }

    /// Mean over successful repetitions; `None` if all failed.
    pub fn mean(&self) -> Option<f64> {
        let rhos = self.rhos();
        (!rhos.is_empty()).then(|| mean(&rhos))
    }
}

/// SplitMix64 step over `master + stream`, used to derive independent
/// per-repetition seeds.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combine two tables of the same language and score `pairs` with the
/// result. Pairs missing from either table are left out.
pub fn combine_tables(
    t1: &VectorTable,
    t2: &VectorTable,
    pairs: &WordPairList,
    combiner: &Combiner,
) -> Result<ScoreVector> {
    match combiner {
        Combiner::Li { lambda } => {
            let s1 = score_pairs(t1, pairs, OovPolicy::Skip)?.scores;
            let s2 = score_pairs(t2, pairs, OovPolicy::Skip)?.scores;
            let common: Vec<_> = s1.ids().iter().copied().filter(|id| s2.get(*id).is_some()).collect();
            interpolate_scores(&s1.restrict(&common)?, &s2.restrict(&common)?, *lambda)
        }
        Combiner::Cca { cca, project } => {
            let lexicon = self_lexicon(t1.language(), pairs.words())?;
            let lexicon = lexicon.filter_covered(&[t1, t2])?;
            if lexicon.is_empty() {
                return Err(Error::EmptyInput("no evaluation word is covered by both models".into()));
            }
            let model = fit_cca_tables(t1, t2, &lexicon, cca)?;
            let combined = project_concat(t1, t2, &lexicon, &model, *project)?;
            Ok(score_pairs(&combined.table, pairs, OovPolicy::Skip)?.scores)
        }
    }
}

/// Train two models on independent subsamples per repetition, combine
/// them and correlate with `human`. Repetitions run in parallel and fail
/// individually, e.g. when a sample leaves fewer than two pairs covered.
pub fn monolingual_baseline<F>(
    corpus: &Corpus,
    build: F,
    pairs: &WordPairList,
    human: &ScoreVector,
    config: &BaselineConfig,
) -> Result<BaselineReport>
where
    F: Fn(&Corpus) -> Result<VectorTable> + Sync,
{
    if !(config.fraction > 0.0 && config.fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!("fraction {} outside (0, 1]", config.fraction)));
    }
    if config.reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    if let Combiner::Li { lambda } = config.combiner {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
        }
    }

    let run = |rep: usize| -> Repetition {
        let seeds = (
            derive_seed(config.seed, 2 * rep as u64),
            derive_seed(config.seed, 2 * rep as u64 + 1),
        );
        let outcome = (|| -> Result<(f64, usize)> {
            let a = build(&sample_corpus(corpus, config.fraction, seeds.0)?)?;
            let b = build(&sample_corpus(corpus, config.fraction, seeds.1)?)?;
            let combined = combine_tables(&a, &b, pairs, &config.combiner)?;
            if combined.len() < 2 {
                return Err(Error::EmptyInput(format!("only {} pairs covered", combined.len())));
            }
            correlate_scores(&combined, human, config.correlation)
        })()
        .map_err(|e| {
            log::warn!("baseline repetition {rep} failed: {e}");
            e.to_string()
        });
        Repetition { rep, seeds, outcome }
    };
    let repetitions = (0..config.reps).into_par_iter().map(run).collect();
    Ok(BaselineReport { repetitions })
}
