use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::language::Language;
use crate::scoring::{PairId, ScoreVector, WordPair, WordPairList};
use crate::stats::mean;

pub const ANNOTATORS_PER_BATCH: usize = 13;
pub const BATCH_SIZE: usize = 50;
pub const MIN_SCORE: f64 = 0.0;
pub const MAX_SCORE: f64 = 10.0;

/// A block of pairs scored by the same annotators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub id: usize,
    /// Row positions in the evaluation set.
    pub rows: Vec<usize>,
}

/// One language version of a dataset with per-annotator human scores.
///
/// Rows are pairs; columns are annotator slots. Slot `j` of one batch and
/// slot `j` of another batch are generally different people, but within a
/// batch the column order is fixed (file order).
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSet {
    dataset: String,
    pairs: WordPairList,
    batch_of: Vec<usize>,
    scores: Vec<Vec<f64>>,
    annotators: usize,
}

/// Assign `n` consecutive rows to batches of `size`; the last batch takes
/// the remainder.
pub fn partition_batches(n: usize, size: usize) -> Vec<usize> {
    (0..n).map(|i| i / size).collect()
}

impl EvaluationSet {
    pub fn new(
        dataset: impl Into<String>,
        pairs: WordPairList,
        batch_of: Vec<usize>,
        scores: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = pairs.len();
        if batch_of.len() != n || scores.len() != n {
            return Err(Error::Validation(format!(
                "{n} pairs, {} batch labels and {} score rows",
                batch_of.len(),
                scores.len()
            )));
        }
        if n == 0 {
            return Err(Error::EmptyInput("evaluation set has no pairs".into()));
        }
        let annotators = scores[0].len();
        if annotators == 0 {
            return Err(Error::Validation("evaluation set has no annotator columns".into()));
        }
        for (row, s) in scores.iter().enumerate() {
            if s.len() != annotators {
                return Err(Error::Validation(format!(
                    "pair {} has {} scores, expected {annotators}",
                    pairs.pairs()[row].id,
                    s.len()
                )));
            }
            if let Some(bad) = s.iter().find(|v| !(MIN_SCORE..=MAX_SCORE).contains(*v)) {
                return Err(Error::Validation(format!(
                    "pair {}: score {bad} outside [0, 10]",
                    pairs.pairs()[row].id
                )));
            }
        }
        Ok(EvaluationSet {
            dataset: dataset.into(),
            pairs,
            batch_of,
            scores,
            annotators,
        })
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    pub fn language(&self) -> &Language {
        self.pairs.language()
    }

    pub fn pairs(&self) -> &WordPairList {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn annotators(&self) -> usize {
        self.annotators
    }

    pub fn scores(&self) -> &[Vec<f64>] {
        &self.scores
    }

    pub fn batch_labels(&self) -> &[usize] {
        &self.batch_of
    }

    /// Batches in order of first appearance.
    pub fn batches(&self) -> Vec<Batch> {
        let mut out: Vec<Batch> = Vec::new();
        for (row, &b) in self.batch_of.iter().enumerate() {
            match out.iter_mut().find(|x| x.id == b) {
                Some(batch) => batch.rows.push(row),
                None => out.push(Batch { id: b, rows: vec![row] }),
            }
        }
        out
    }

    /// Mean over all annotators for each pair.
    pub fn human_means(&self) -> ScoreVector {
        let values = self.scores.iter().map(|s| mean(s)).collect();
        ScoreVector::new(format!("human:{}", self.language()), self.pairs.ids(), values)
            .expect("validated scores")
    }

    /// Same set with `f` applied to every score.
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> Result<EvaluationSet> {
        let scores = self.scores.iter().map(|r| r.iter().map(|&v| f(v)).collect()).collect();
        EvaluationSet::new(self.dataset.clone(), self.pairs.clone(), self.batch_of.clone(), scores)
    }

    /// Check that `other` can be compared slot by slot with this set.
    pub fn check_aligned(&self, other: &EvaluationSet) -> Result<()> {
        if self.pairs.ids() != other.pairs.ids() {
            return Err(Error::Alignment(format!(
                "`{}` and `{}` have different pair indices",
                self.language(),
                other.language()
            )));
        }
        if self.batch_of != other.batch_of {
            return Err(Error::Alignment("batch partitions differ".into()));
        }
        if self.annotators != other.annotators {
            return Err(Error::Alignment(format!(
                "{} versus {} annotators per batch",
                self.annotators, other.annotators
            )));
        }
        Ok(())
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "pair_index\tword1\tword2\tbatch")?;
        for j in 1..=self.annotators {
            write!(out, "\ta{j:02}")?;
        }
        writeln!(out)?;
        for (row, pair) in self.pairs.pairs().iter().enumerate() {
            write!(out, "{}\t{}\t{}\t{}", pair.id, pair.word1, pair.word2, self.batch_of[row])?;
            for v in &self.scores[row] {
                write!(out, "\t{v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Parse the TSV form. Lines starting with `#` are ignored.
    pub fn read_tsv<R: BufRead>(reader: R, language: impl Into<Language>, dataset: impl Into<String>) -> Result<Self> {
        let mut header: Option<usize> = None;
        let mut pairs = Vec::new();
        let mut batch_of = Vec::new();
        let mut scores = Vec::new();
        let mut seen = HashSet::new();

        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let Some(annotators) = header else {
                header = Some(parse_header(&fields).map_err(|m| Error::format(lineno, m))?);
                continue;
            };
            if fields.len() != 4 + annotators {
                return Err(Error::format(
                    lineno,
                    format!("expected {} columns, found {}", 4 + annotators, fields.len()),
                ));
            }
            let id: PairId = fields[0]
                .parse()
                .map_err(|e| Error::format(lineno, format!("bad pair index: {e}")))?;
            if !seen.insert(id) {
                return Err(Error::format(lineno, format!("duplicate pair index {id}")));
            }
            let batch: usize = fields[3]
                .parse()
                .map_err(|e| Error::format(lineno, format!("bad batch: {e}")))?;
            let row = fields[4..]
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::format(lineno, format!("bad score `{f}`: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(bad) = row.iter().find(|v| !(MIN_SCORE..=MAX_SCORE).contains(*v)) {
                return Err(Error::format(lineno, format!("score {bad} outside [0, 10]")));
            }
            pairs.push(WordPair {
                id,
                word1: fields[1].to_owned(),
                word2: fields[2].to_owned(),
            });
            batch_of.push(batch);
            scores.push(row);
        }
        if header.is_none() {
            return Err(Error::format(1, "missing header"));
        }
        let pairs = WordPairList::new(language, pairs)?;
        EvaluationSet::new(dataset, pairs, batch_of, scores)
    }
}

fn parse_header(fields: &[&str]) -> std::result::Result<usize, String> {
    if fields.len() < 5 || fields[..4] != ["pair_index", "word1", "word2", "batch"] {
        return Err("header must start with pair_index, word1, word2, batch".into());
    }
    for (j, f) in fields[4..].iter().enumerate() {
        if *f != format!("a{:02}", j + 1) {
            return Err(format!("annotator column {} should be named a{:02}, found `{f}`", j + 1, j + 1));
        }
    }
    Ok(fields.len() - 4)
}

pub fn load_evaluation_set(
    path: impl AsRef<Path>,
    language: impl Into<Language>,
    dataset: impl Into<String>,
) -> Result<EvaluationSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    EvaluationSet::read_tsv(BufReader::new(file), language, dataset).map_err(|e| e.with_path(path))
}
