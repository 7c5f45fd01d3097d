//! Model scores for word pairs: cosine similarity, pair scoring against a
//! vector table and descending average-rank rankings.

use std::collections::{HashMap, HashSet};
use std::io::{self, BufRead, Write};

use log::warn;

use crate::error::{Error, Result};
use crate::language::Language;
use crate::stats::{average_ranks, Correlation};
use crate::vectors::VectorTable;

/// Stable pair index shared by all language versions of a dataset.
pub type PairId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPair {
    pub id: PairId,
    pub word1: String,
    pub word2: String,
}

/// One language version of a word-pair dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPairList {
    language: Language,
    pairs: Vec<WordPair>,
}

impl WordPairList {
    pub fn new(language: impl Into<Language>, pairs: Vec<WordPair>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &pairs {
            if !seen.insert(p.id) {
                return Err(Error::Validation(format!("duplicate pair index {}", p.id)));
            }
        }
        Ok(WordPairList {
            language: language.into(),
            pairs,
        })
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn pairs(&self) -> &[WordPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn ids(&self) -> Vec<PairId> {
        self.pairs.iter().map(|p| p.id).collect()
    }

    pub fn get(&self, id: PairId) -> Option<&WordPair> {
        self.pairs.iter().find(|p| p.id == id)
    }

    /// Keep only the listed pair indices, preserving list order.
    pub fn restrict(&self, ids: &[PairId]) -> WordPairList {
        let keep: HashSet<PairId> = ids.iter().copied().collect();
        WordPairList {
            language: self.language.clone(),
            pairs: self.pairs.iter().filter(|p| keep.contains(&p.id)).cloned().collect(),
        }
    }

    /// Every distinct word in the list, in first-appearance order.
    pub fn words(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in &self.pairs {
            for w in [&p.word1, &p.word2] {
                if seen.insert(w.as_str()) {
                    out.push(w.clone());
                }
            }
        }
        out
    }
}

/// Real-valued scores keyed by pair index.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    provenance: String,
    ids: Vec<PairId>,
    values: Vec<f64>,
}

impl ScoreVector {
    pub fn new(provenance: impl Into<String>, ids: Vec<PairId>, values: Vec<f64>) -> Result<Self> {
        if ids.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} pair indices but {} scores",
                ids.len(),
                values.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = ids.iter().find(|id| !seen.insert(**id)) {
            return Err(Error::Validation(format!("duplicate pair index {dup}")));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!("non-finite score {bad}")));
        }
        Ok(ScoreVector {
            provenance: provenance.into(),
            ids,
            values,
        })
    }

    pub fn from_pairs(provenance: impl Into<String>, entries: impl IntoIterator<Item = (PairId, f64)>) -> Result<Self> {
        let (ids, values) = entries.into_iter().unzip();
        ScoreVector::new(provenance, ids, values)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn ids(&self) -> &[PairId] {
        &self.ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, id: PairId) -> Option<f64> {
        self.ids.iter().position(|&i| i == id).map(|p| self.values[p])
    }

    pub fn iter(&self) -> impl Iterator<Item = (PairId, f64)> + '_ {
        self.ids.iter().copied().zip(self.values.iter().copied())
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// Values for `ids` in that order; every id must be present.
    pub fn values_for(&self, ids: &[PairId]) -> Result<Vec<f64>> {
        let lookup: HashMap<PairId, f64> = self.iter().collect();
        ids.iter()
            .map(|id| {
                lookup.get(id).copied().ok_or_else(|| {
                    Error::Alignment(format!("pair {id} has no score in `{}`", self.provenance))
                })
            })
            .collect()
    }

    /// The scores restricted to `ids`, in that order.
    pub fn restrict(&self, ids: &[PairId]) -> Result<ScoreVector> {
        let values = self.values_for(ids)?;
        ScoreVector::new(self.provenance.clone(), ids.to_vec(), values)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ScoreVector> {
        ScoreVector::new(
            self.provenance.clone(),
            self.ids.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Pair indices as a sorted list, for set comparisons.
    pub fn sorted_ids(&self) -> Vec<PairId> {
        let mut ids = self.ids.clone();
        ids.sort_unstable();
        ids
    }
}

/// Ranks keyed by pair index; rank 1 is the highest score.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    ids: Vec<PairId>,
    ranks: Vec<f64>,
}

impl Ranking {
    pub fn ids(&self) -> &[PairId] {
        &self.ids
    }

    pub fn ranks(&self) -> &[f64] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn rank_of(&self, id: PairId) -> Option<f64> {
        self.ids.iter().position(|&i| i == id).map(|p| self.ranks[p])
    }

    /// Pair indices from best to worst rank; equal ranks fall back to
    /// ascending pair index.
    pub fn ordered_ids(&self) -> Vec<PairId> {
        let mut order: Vec<usize> = (0..self.ids.len()).collect();
        order.sort_by(|&a, &b| {
            self.ranks[a]
                .total_cmp(&self.ranks[b])
                .then(self.ids[a].cmp(&self.ids[b]))
        });
        order.into_iter().map(|i| self.ids[i]).collect()
    }
}

/// Descending ranks with tied scores sharing the mean of their positions.
pub fn rank_scores(scores: &ScoreVector) -> Result<Ranking> {
    if scores.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "ranking needs at least 2 scores, got {}",
            scores.len()
        )));
    }
    let negated: Vec<f64> = scores.values.iter().map(|v| -v).collect();
    Ok(Ranking {
        ids: scores.ids.clone(),
        ranks: average_ranks(&negated),
    })
}

/// Correlate model scores with a reference on the pairs the model covers.
/// Returns the coefficient and the number of pairs used.
pub fn correlate_scores(model: &ScoreVector, reference: &ScoreVector, correlation: Correlation) -> Result<(f64, usize)> {
    let reference = reference.values_for(model.ids())?;
    let rho = correlation.compute(model.values(), &reference)?;
    Ok((rho, model.len()))
}

/// `u·v / (|u| |v|)`, or 0 when either vector has zero norm.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    cosine_flagged(u, v).map(|(c, _)| c)
}

/// Cosine similarity and a flag that is set when either norm is zero.
pub fn cosine_flagged(u: &[f64], v: &[f64]) -> Result<(f64, bool)> {
    if u.len() != v.len() {
        return Err(Error::InvalidArgument(format!(
            "cosine of vectors with dimensions {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (mut dot, mut uu, mut vv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        uu += a * a;
        vv += b * b;
    }
    if uu == 0.0 || vv == 0.0 {
        return Ok((0.0, true));
    }
    Ok(((dot / (uu.sqrt() * vv.sqrt())).clamp(-1.0, 1.0), false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    Error,
    #[default]
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OovRecord {
    pub id: PairId,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairScores {
    pub scores: ScoreVector,
    pub skipped: Vec<OovRecord>,
    /// Pairs where at least one vector had zero norm (scored 0).
    pub degenerate: Vec<PairId>,
}

/// Exact lookup first, then the lowercased form.
pub fn lookup<'t>(table: &'t VectorTable, word: &str) -> Option<&'t [f64]> {
    table.get(word).or_else(|| table.get(&word.to_lowercase()))
}

/// Cosine score for every pair whose words are both in `table`.
pub fn score_pairs(table: &VectorTable, pairs: &WordPairList, policy: OovPolicy) -> Result<PairScores> {
    let mut ids = Vec::with_capacity(pairs.len());
    let mut values = Vec::with_capacity(pairs.len());
    let mut skipped = Vec::new();
    let mut degenerate = Vec::new();

    for pair in pairs.pairs() {
        let missing = [&pair.word1, &pair.word2]
            .into_iter()
            .find(|w| lookup(table, w).is_none());
        if let Some(word) = missing {
            match policy {
                OovPolicy::Error => {
                    return Err(Error::Lookup {
                        word: word.clone(),
                        context: format!("pair {}", pair.id),
                    })
                }
                OovPolicy::Skip => {
                    skipped.push(OovRecord {
                        id: pair.id,
                        word: word.clone(),
                    });
                    continue;
                }
            }
        }
        let u = lookup(table, &pair.word1).expect("checked above");
        let v = lookup(table, &pair.word2).expect("checked above");
        let (score, zero) = cosine_flagged(u, v)?;
        if zero {
            warn!(
                "pair {} ({}, {}): zero vector, cosine set to 0",
                pair.id, pair.word1, pair.word2
            );
            degenerate.push(pair.id);
        }
        ids.push(pair.id);
        values.push(score);
    }
    Ok(PairScores {
        scores: ScoreVector::new(table.language().to_string(), ids, values)?,
        skipped,
        degenerate,
    })
}

/// Read the first three columns (`pair_index  word1  word2`) of any pair
/// TSV, such as an evaluation set or a score file. Further columns are
/// ignored; `#` lines are skipped.
pub fn read_pair_list<R: BufRead>(reader: R, language: impl Into<Language>) -> Result<WordPairList> {
    let mut pairs = Vec::new();
    let mut header_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if !header_seen {
            if fields.len() < 3 || fields[..3] != ["pair_index", "word1", "word2"] {
                return Err(Error::format(lineno, "header must start with pair_index, word1, word2"));
            }
            header_seen = true;
            continue;
        }
        if fields.len() < 3 {
            return Err(Error::format(lineno, format!("expected at least 3 columns, found {}", fields.len())));
        }
        let id: PairId = fields[0]
            .parse()
            .map_err(|e| Error::format(lineno, format!("bad pair index: {e}")))?;
        pairs.push(WordPair {
            id,
            word1: fields[1].to_owned(),
            word2: fields[2].to_owned(),
        });
    }
    if !header_seen {
        return Err(Error::format(1, "missing header"));
    }
    WordPairList::new(language, pairs)
}

/// `pair_index  word1  word2  score` rows followed by `#OOV` records.
pub fn write_scores_tsv<W: Write>(
    mut out: W,
    pairs: &WordPairList,
    scored: &PairScores,
) -> io::Result<()> {
    writeln!(out, "pair_index\tword1\tword2\tscore")?;
    for (id, score) in scored.scores.iter() {
        let (w1, w2) = pairs
            .get(id)
            .map_or(("", ""), |p| (p.word1.as_str(), p.word2.as_str()));
        writeln!(out, "{id}\t{w1}\t{w2}\t{score}")?;
    }
    for rec in &scored.skipped {
        writeln!(out, "#OOV\t{}\t{}", rec.id, rec.word)?;
    }
    Ok(())
}

/// Read a score TSV; comment lines and the header are skipped.
pub fn read_scores_tsv<R: BufRead>(reader: R, provenance: &str) -> Result<ScoreVector> {
    let mut entries = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        if line.starts_with('#') || line.trim().is_empty() || line.starts_with("pair_index") {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::format(lineno, format!("expected 4 columns, found {}", fields.len())));
        }
        let id: PairId = fields[0]
            .parse()
            .map_err(|e| Error::format(lineno, format!("bad pair index: {e}")))?;
        let score: f64 = fields[3]
            .parse()
            .map_err(|e| Error::format(lineno, format!("bad score: {e}")))?;
        entries.push((id, score));
    }
    ScoreVector::from_pairs(provenance, entries)
}
