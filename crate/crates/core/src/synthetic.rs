//! Seeded synthetic datasets with known structure, used by the examples
//! and the test suites.
//!
//! Agreement fixtures give every pair a latent score shared by all
//! languages. Each language adds its own per-pair bias and each annotator
//! adds noise that is largest for mid-scale pairs, so annotators of one
//! language agree more with each other than with another language, and
//! rankings are most stable at the extremes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::agreement::{partition_batches, EvaluationSet, RawScore, ScreeningResponse, ANNOTATORS_PER_BATCH, BATCH_SIZE};
use crate::error::{Error, Result};
use crate::language::Language;
use crate::scoring::{ScoreVector, WordPair, WordPairList};

pub const FIXTURE_LANGUAGES: [&str; 4] = ["en", "de", "it", "ru"];

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementFixture {
    pub pairs: usize,
    pub annotators: usize,
    pub batch_size: usize,
    pub languages: Vec<Language>,
    /// SD of the per-pair bias of each language.
    pub language_bias_sd: f64,
    /// Annotator noise SD for pairs at either end of the scale.
    pub noise_sd_extreme: f64,
    /// Annotator noise SD for pairs in the middle of the scale.
    pub noise_sd_middle: f64,
    pub seed: u64,
}

impl AgreementFixture {
    fn shaped(pairs: usize, seed: u64) -> Self {
        AgreementFixture {
            pairs,
            annotators: ANNOTATORS_PER_BATCH,
            batch_size: BATCH_SIZE,
            languages: FIXTURE_LANGUAGES.iter().map(|&l| Language::from(l)).collect(),
            language_bias_sd: 1.0,
            noise_sd_extreme: 0.5,
            noise_sd_middle: 2.5,
            seed,
        }
    }

    /// 350 pairs in 7 batches.
    pub fn ws353_shaped(seed: u64) -> Self {
        Self::shaped(350, seed)
    }

    /// 999 pairs in 20 batches, the last one holding 49.
    pub fn sl999_shaped(seed: u64) -> Self {
        Self::shaped(999, seed)
    }

    /// One aligned evaluation set per language.
    pub fn generate(&self) -> Result<Vec<EvaluationSet>> {
        if self.pairs == 0 || self.annotators == 0 || self.batch_size == 0 || self.languages.is_empty() {
            return Err(Error::InvalidArgument("fixture sizes must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let latent: Vec<f64> = (0..self.pairs).map(|_| rng.random_range(0.5..9.5)).collect();
        let bias = Normal::new(0.0, self.language_bias_sd).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let unit = Normal::new(0.0, 1.0).expect("unit normal");
        let batch_of = partition_batches(self.pairs, self.batch_size);

        let mut sets = Vec::with_capacity(self.languages.len());
        for lang in &self.languages {
            let pairs = WordPairList::new(lang.clone(), fixture_pairs(lang, self.pairs))?;
            let scores = latent
                .iter()
                .map(|&t| {
                    let shifted = t + bias.sample(&mut rng);
                    // 0 at the ends of the scale, 1 in the middle
                    let centrality = 1.0 - ((t - 5.0).abs() / 5.0).min(1.0);
                    let sd = self.noise_sd_extreme + (self.noise_sd_middle - self.noise_sd_extreme) * centrality;
                    (0..self.annotators)
                        .map(|_| (shifted + sd * unit.sample(&mut rng)).clamp(0.0, 10.0))
                        .collect()
                })
                .collect();
            sets.push(EvaluationSet::new("synthetic", pairs, batch_of.clone(), scores)?);
        }
        Ok(sets)
    }
}

fn fixture_pairs(lang: &Language, n: usize) -> Vec<WordPair> {
    (0..n)
        .map(|id| WordPair {
            id,
            word1: format!("{lang}{id}a"),
            word2: format!("{lang}{id}b"),
        })
        .collect()
}

/// Two model score vectors that each track a common reference through
/// independent noise.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementaryModels {
    pub reference: ScoreVector,
    pub model_1: ScoreVector,
    pub model_2: ScoreVector,
}

/// Reference `r ~ N(0, 1)`; model `k` scores `tanh((r + e_k) / 2)` with
/// `e_k ~ N(0, noise_variance)`. With variance 3 each model correlates
/// about 0.5 with the reference.
pub fn complementary_models(n: usize, noise_variance: f64, seed: u64) -> Result<ComplementaryModels> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 pairs".into()));
    }
    let noise = Normal::new(0.0, noise_variance.sqrt()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference: Vec<f64> = (0..n).map(|_| unit.sample(&mut rng)).collect();
    let mut model = |name: &str| {
        let values = reference.iter().map(|r| ((r + noise.sample(&mut rng)) / 2.0).tanh()).collect();
        ScoreVector::new(name, (0..n).collect(), values)
    };
    let model_1 = model("model_1")?;
    let model_2 = model("model_2")?;
    Ok(ComplementaryModels {
        reference: ScoreVector::new("reference", (0..n).collect(), reference)?,
        model_1,
        model_2,
    })
}

/// Raw crowdsourcing rows for `batches` batches of `batch_size` pairs.
/// Every batch gets `annotators` annotators (named `b{batch}-{j}`) scoring a
/// shared latent value plus normal noise of SD `noise_sd`, and the annotator
/// in slot `planted` (if any) adds `shift` to every score. With zero noise
/// the annotators agree exactly.
pub fn raw_score_fixture(
    batches: usize,
    batch_size: usize,
    annotators: usize,
    planted: Option<(usize, f64)>,
    noise_sd: f64,
    seed: u64,
) -> Result<(Vec<RawScore>, Vec<ScreeningResponse>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, noise_sd).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut raw = Vec::new();
    let mut screening = Vec::new();
    for b in 0..batches {
        let latent: Vec<f64> = (0..batch_size).map(|_| rng.random_range(1.0..4.0)).collect();
        for j in 0..annotators {
            let name = format!("b{b}-{j:02}");
            let shift = planted.filter(|p| p.0 == j).map_or(0.0, |p| p.1);
            for (i, &t) in latent.iter().enumerate() {
                let id = b * batch_size + i;
                raw.push(RawScore {
                    batch: b,
                    annotator: name.clone(),
                    pair: WordPair {
                        id,
                        word1: format!("w{id}a"),
                        word2: format!("w{id}b"),
                    },
                    score: (t + shift + noise.sample(&mut rng)).clamp(0.0, 10.0),
                });
            }
            screening.push(ScreeningResponse {
                annotator: name,
                similar: 9.0,
                dissimilar: 1.0,
            });
        }
    }
    Ok((raw, screening))
}

/// Sentences of `length` words, each drawn mostly from one topic, with
/// one word in `length` taken from a random topic. Words of a topic end up
/// sharing contexts.
pub fn topic_corpus(
    language: impl Into<Language>,
    topics: &[&[&str]],
    sentences: usize,
    length: usize,
    seed: u64,
) -> Result<crate::corpus::Corpus> {
    if topics.is_empty() || topics.iter().any(|t| t.is_empty()) || length == 0 {
        return Err(Error::InvalidArgument("topics and sentence length must be non-empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..sentences)
        .map(|_| {
            let topic = topics[rng.random_range(0..topics.len())];
            (0..length)
                .map(|i| {
                    let t = if i + 1 == length { topics[rng.random_range(0..topics.len())] } else { topic };
                    t[rng.random_range(0..t.len())].to_owned()
                })
                .collect()
        })
        .collect();
    Ok(crate::corpus::Corpus::from_sentences(language, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{mean, spearman};

    #[test]
    fn fixture_shapes() {
        let sets = AgreementFixture::ws353_shaped(1).generate().unwrap();
        assert_eq!(sets.len(), 4);
        assert_eq!(sets[0].len(), 350);
        assert_eq!(sets[0].batches().len(), 7);
        assert_eq!(sets[2].annotators(), 13);
        sets[0].check_aligned(&sets[3]).unwrap();
        assert_eq!(sets, AgreementFixture::ws353_shaped(1).generate().unwrap());
    }

    #[test]
    fn complementary_models_hover_around_one_half() {
        let rhos: Vec<f64> = (0..20)
            .flat_map(|s| {
                let m = complementary_models(400, 3.0, s).unwrap();
                [
                    spearman(m.model_1.values(), m.reference.values()).unwrap(),
                    spearman(m.model_2.values(), m.reference.values()).unwrap(),
                ]
            })
            .collect();
        let avg = mean(&rhos);
        assert!((avg - 0.5).abs() < 0.05, "{avg}");
    }

    #[test]
    fn topic_corpus_shape() {
        let c = topic_corpus("en", &[&["cat", "dog"], &["car", "bus"]], 50, 6, 0).unwrap();
        assert_eq!(c.sentence_count(), 50);
        assert_eq!(c.token_count(), 300);
    }

    #[test]
    fn raw_fixture_layout() {
        let (raw, screening) = raw_score_fixture(2, 5, 13, Some((4, 5.0)), 0.5, 0).unwrap();
        assert_eq!(raw.len(), 2 * 5 * 13);
        assert_eq!(screening.len(), 26);
    }
}
