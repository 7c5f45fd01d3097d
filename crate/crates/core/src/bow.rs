//! Count-based vector space: windowed co-occurrence counts against the `k`
//! most frequent context words, normalized to positive PMI.

use std::collections::{BTreeSet, HashMap};

use log::debug;
use rayon::prelude::*;

use crate::corpus::{build_vocabulary, Cleaner, Corpus, Vocabulary};
use crate::error::{Error, Result};
use crate::language::Language;
use crate::vectors::VectorTable;

pub const DEFAULT_CONTEXT_WORDS: usize = 10_000;
pub const DEFAULT_WINDOW: usize = 2;

/// Dense `|targets| x k` co-occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    language: Language,
    row_words: Vec<String>,
    col_words: Vec<String>,
    counts: Vec<u64>,
    window: usize,
    total: u64,
}

impl CountMatrix {
    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn row_words(&self) -> &[String] {
        &self.row_words
    }

    pub fn col_words(&self) -> &[String] {
        &self.col_words
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn rows(&self) -> usize {
        self.row_words.len()
    }

    pub fn cols(&self) -> usize {
        self.col_words.len()
    }

    pub fn row(&self, r: usize) -> &[u64] {
        let k = self.cols();
        &self.counts[r * k..(r + 1) * k]
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.counts[r * self.cols() + c]
    }

    /// Count for a (target, context) word pair; 0 when either is unknown.
    pub fn count(&self, target: &str, context: &str) -> u64 {
        let r = self.row_words.iter().position(|w| w == target);
        let c = self.col_words.iter().position(|w| w == context);
        match (r, c) {
            (Some(r), Some(c)) => self.get(r, c),
            _ => 0,
        }
    }

    /// Matrix from explicit counts, mostly for tests and fixtures.
    pub fn from_counts(
        language: impl Into<Language>,
        row_words: Vec<String>,
        col_words: Vec<String>,
        counts: Vec<u64>,
        window: usize,
    ) -> Result<Self> {
        if counts.len() != row_words.len() * col_words.len() {
            return Err(Error::InvalidArgument(format!(
                "{} counts for a {}x{} matrix",
                counts.len(),
                row_words.len(),
                col_words.len()
            )));
        }
        let total = counts.iter().sum();
        Ok(CountMatrix {
            language: language.into(),
            row_words,
            col_words,
            counts,
            window,
            total,
        })
    }
}

/// Count, for every target occurrence at position `i`, the context words at
/// positions `j` of the same sentence with `0 < |i - j| <= window`.
///
/// Rows are the distinct targets in lexicographic order; columns are the
/// vocabulary's top `k` in frequency order.
pub fn count_cooccurrences<S: AsRef<str>>(
    corpus: &Corpus,
    targets: &[S],
    vocab: &Vocabulary,
    k: usize,
    window: usize,
) -> Result<CountMatrix> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be at least 1".into()));
    }
    let col_words = vocab.top_k(k)?.to_vec();
    let row_words: Vec<String> = targets
        .iter()
        .map(|t| t.as_ref().to_owned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let row_of: HashMap<&str, usize> = row_words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let col_of: HashMap<&str, usize> = col_words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let cells = row_words.len() * k;

    let count_chunk = |sentences: &[Vec<String>]| -> Vec<u64> {
        let mut counts = vec![0u64; cells];
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for sentence in sentences {
            rows.clear();
            cols.clear();
            rows.extend(sentence.iter().map(|t| row_of.get(t.as_str()).copied()));
            cols.extend(sentence.iter().map(|t| col_of.get(t.as_str()).copied()));
            for (i, row) in rows.iter().enumerate() {
                let Some(r) = row else { continue };
                let lo = i.saturating_sub(window);
                let hi = (i + window).min(sentence.len() - 1);
                for (j, col) in cols.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    if let Some(c) = col {
                        counts[r * k + c] += 1;
                    }
                }
            }
        }
        counts
    };

    // Partition sums are integer additions, so the result does not depend
    // on how sentences are split across threads.
    let sentences = corpus.sentences();
    let parts = rayon::current_num_threads().max(1);
    let chunk = sentences.len().div_ceil(parts).max(1);
    let counts = if cells == 0 {
        Vec::new()
    } else {
        sentences
            .par_chunks(chunk)
            .map(count_chunk)
            .reduce(
                || vec![0u64; cells],
                |mut acc, part| {
                    acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                    acc
                },
            )
    };
    let total = counts.iter().sum();
    Ok(CountMatrix {
        language: corpus.language().clone(),
        row_words,
        col_words,
        counts,
        window,
        total,
    })
}

/// `max(0, ln(n(w,c) * total / (row_sum(w) * col_sum(c))))` per cell, with
/// marginals taken from the matrix itself. The result has dimension `k` and
/// one row per target word.
pub fn ppmi_transform(m: &CountMatrix) -> Result<VectorTable> {
    if m.total == 0 {
        return Err(Error::Degenerate("co-occurrence matrix has no counts".into()));
    }
    let k = m.cols();
    let total = m.total as f64;
    let row_sums: Vec<u64> = (0..m.rows()).map(|r| m.row(r).iter().sum()).collect();
    let mut col_sums = vec![0u64; k];
    for r in 0..m.rows() {
        for (c, &n) in m.row(r).iter().enumerate() {
            col_sums[c] += n;
        }
    }

    let mut table = VectorTable::new(m.language.clone(), k)?;
    let mut vector = vec![0.0; k];
    for (r, word) in m.row_words.iter().enumerate() {
        vector.iter_mut().for_each(|x| *x = 0.0);
        if row_sums[r] > 0 {
            for (c, &n) in m.row(r).iter().enumerate() {
                if n > 0 {
                    let pmi = ((n as f64 * total) / (row_sums[r] as f64 * col_sums[c] as f64)).ln();
                    vector[c] = pmi.max(0.0);
                }
            }
        }
        table.insert(word.clone(), &vector)?;
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BowConfig {
    pub context_words: usize,
    pub window: usize,
}

impl Default for BowConfig {
    fn default() -> Self {
        BowConfig {
            context_words: DEFAULT_CONTEXT_WORDS,
            window: DEFAULT_WINDOW,
        }
    }
}

/// A PPMI table keyed by surface target words, plus the words that could
/// not be given a row.
#[derive(Debug, Clone)]
pub struct BowModel {
    pub table: VectorTable,
    pub matrix: CountMatrix,
    /// Targets dropped by cleaning or absent from the corpus.
    pub missing: Vec<String>,
}

/// Build PPMI vectors for surface `targets` from an already cleaned corpus.
///
/// Each target is lowercased and normalized with `cleaner` (the same
/// normalization the corpus went through); its vector is the PPMI row of the
/// normalized form. Targets whose normalized form never occurs in the corpus
/// are left out of the table.
pub fn build_bow_model<S: AsRef<str>>(
    cleaned: &Corpus,
    targets: &[S],
    cleaner: &Cleaner,
    config: BowConfig,
) -> Result<BowModel> {
    let vocab = build_vocabulary(cleaned)?;
    let mut surface_to_norm = Vec::new();
    let mut missing = Vec::new();
    for target in targets {
        let surface = target.as_ref().to_lowercase();
        match cleaner.normalize(&surface) {
            Some(norm) if vocab.contains(&norm) => surface_to_norm.push((surface, norm)),
            _ => missing.push(surface),
        }
    }
    surface_to_norm.sort();
    surface_to_norm.dedup();
    missing.sort();
    missing.dedup();
    if !missing.is_empty() {
        debug!("{} target words have no corpus row", missing.len());
    }
    let norms: Vec<&str> = surface_to_norm.iter().map(|(_, n)| n.as_str()).collect();
    let matrix = count_cooccurrences(cleaned, &norms, &vocab, config.context_words, config.window)?;
    let ppmi = ppmi_transform(&matrix)?;

    let mut table = VectorTable::new(cleaned.language().clone(), ppmi.dimension())?;
    for (surface, norm) in &surface_to_norm {
        let v = ppmi.get(norm).expect("every normalized target has a row");
        table.insert(surface.clone(), v)?;
    }
    Ok(BowModel {
        table,
        matrix,
        missing,
    })
}
