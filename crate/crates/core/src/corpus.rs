//! Corpus ingestion: tokenization, cleaning, vocabulary statistics and
//! sentence-level subsampling.
//!
//! Sentences are the atomic unit throughout. Co-occurrence windows never
//! cross a sentence boundary, so sampling selects whole sentences.

use std::collections::{HashMap, HashSet};
use std::io::{self, Write};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::language::Language;

/// How raw text is split into sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TextMode {
    /// Free running text: sentences end at `.`, `!`, `?`, `…` or a newline.
    #[default]
    Document,
    /// One sentence per line; punctuation never splits a line.
    Lines,
}

/// A language-tagged, sentence-segmented token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    language: Language,
    sentences: Vec<Vec<String>>,
    token_count: usize,
    type_count: usize,
}

impl Corpus {
    /// Build a corpus from pre-tokenized sentences. Empty sentences are
    /// dropped.
    pub fn from_sentences(language: impl Into<Language>, sentences: Vec<Vec<String>>) -> Self {
        let sentences: Vec<Vec<String>> = sentences.into_iter().filter(|s| !s.is_empty()).collect();
        let token_count = sentences.iter().map(Vec::len).sum();
        let type_count = sentences
            .iter()
            .flatten()
            .map(String::as_str)
            .collect::<HashSet<_>>()
            .len();
        Corpus {
            language: language.into(),
            sentences,
            token_count,
            type_count,
        }
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn sentences(&self) -> &[Vec<String>] {
        &self.sentences
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    pub fn token_count(&self) -> usize {
        self.token_count
    }

    pub fn type_count(&self) -> usize {
        self.type_count
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Distinct types divided by tokens; `None` for an empty corpus.
    pub fn type_token_ratio(&self) -> Option<f64> {
        (self.token_count > 0).then(|| self.type_count as f64 / self.token_count as f64)
    }

    /// Write one sentence per line, tokens separated by a single space.
    pub fn write_tokenized<W: Write>(&self, mut out: W) -> io::Result<()> {
        for sentence in &self.sentences {
            writeln!(out, "{}", sentence.join(" "))?;
        }
        Ok(())
    }
}

const SENTENCE_TERMINALS: [char; 5] = ['.', '!', '?', '…', '\n'];

/// Tokenize free running text (document mode).
pub fn tokenize_corpus(raw: &[u8], language: impl Into<Language>) -> Result<Corpus> {
    tokenize_corpus_with(raw, language, TextMode::Document)
}

/// Split raw UTF-8 text into lowercased sentences of whitespace-separated
/// tokens. Leading and trailing non-alphanumeric characters are trimmed
/// from each token.
pub fn tokenize_corpus_with(
    raw: &[u8],
    language: impl Into<Language>,
    mode: TextMode,
) -> Result<Corpus> {
    let text = std::str::from_utf8(raw).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })?;
    let pieces: Box<dyn Iterator<Item = &str>> = match mode {
        TextMode::Document => Box::new(text.split(SENTENCE_TERMINALS)),
        TextMode::Lines => Box::new(text.lines()),
    };
    let sentences = pieces.map(tokenize_sentence).collect();
    Ok(Corpus::from_sentences(language, sentences))
}

fn tokenize_sentence(piece: &str) -> Vec<String> {
    piece
        .split_whitespace()
        .map(|tok| tok.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|tok| !tok.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Word stemming function. Must be total over alphabetic strings.
pub trait Stemmer: Send + Sync {
    fn stem(&self, word: &str) -> String;
}

impl<F> Stemmer for F
where
    F: Fn(&str) -> String + Send + Sync,
{
    fn stem(&self, word: &str) -> String {
        self(word)
    }
}

/// Leaves every word unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityStemmer;

impl Stemmer for IdentityStemmer {
    fn stem(&self, word: &str) -> String {
        word.to_owned()
    }
}

/// Snowball stemmers; the English one is Porter2.
pub struct SnowballStemmer(rust_stemmers::Stemmer);

impl SnowballStemmer {
    pub fn english() -> Self {
        SnowballStemmer(rust_stemmers::Stemmer::create(rust_stemmers::Algorithm::English))
    }

    /// Stemmer for an ISO 639-1 code, if Snowball ships one.
    pub fn for_language(code: &str) -> Option<Self> {
        use rust_stemmers::Algorithm::*;
        let algorithm = match code {
            "ar" => Arabic,
            "da" => Danish,
            "nl" => Dutch,
            "en" => English,
            "fi" => Finnish,
            "fr" => French,
            "de" => German,
            "el" => Greek,
            "hu" => Hungarian,
            "it" => Italian,
            "no" => Norwegian,
            "pt" => Portuguese,
            "ro" => Romanian,
            "ru" => Russian,
            "es" => Spanish,
            "sv" => Swedish,
            "ta" => Tamil,
            "tr" => Turkish,
            _ => return None,
        };
        Some(SnowballStemmer(rust_stemmers::Stemmer::create(algorithm)))
    }
}

impl Stemmer for SnowballStemmer {
    fn stem(&self, word: &str) -> String {
        self.0.stem(word).into_owned()
    }
}

/// A set of lowercase stopwords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    pub fn none() -> Self {
        StopWords::default()
    }

    /// The NLTK stopword list for `code`, if one exists.
    pub fn nltk(code: &str) -> Option<Self> {
        stop_words::lookup(code).map(|words| StopWords::from_words(words.iter().copied()))
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopWords(
            words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// True when the token is non-empty and every character is alphabetic
/// (Unicode, so Cyrillic and umlauts qualify).
pub fn is_alphabetic_token(token: &str) -> bool {
    !token.is_empty() && token.chars().all(char::is_alphabetic)
}

/// Token normalization shared by corpus cleaning and target-word lookup.
///
/// Non-alphabetic tokens are removed first, then stopwords, then the
/// survivor is stemmed.
pub struct Cleaner {
    stopwords: StopWords,
    stemmer: Box<dyn Stemmer>,
}

impl Cleaner {
    pub fn new(stopwords: StopWords, stemmer: Box<dyn Stemmer>) -> Self {
        Cleaner { stopwords, stemmer }
    }

    /// NLTK stopwords plus the Snowball stemmer for `code`, falling back to
    /// no stopwords and the identity stemmer when either is unavailable.
    pub fn for_language(code: &str) -> Self {
        let stopwords = StopWords::nltk(code).unwrap_or_default();
        let stemmer: Box<dyn Stemmer> = match SnowballStemmer::for_language(code) {
            Some(s) => Box::new(s),
            None => Box::new(IdentityStemmer),
        };
        Cleaner::new(stopwords, stemmer)
    }

    /// Alphabetic filter only.
    pub fn passthrough() -> Self {
        Cleaner::new(StopWords::none(), Box::new(IdentityStemmer))
    }

    pub fn normalize(&self, token: &str) -> Option<String> {
        if !is_alphabetic_token(token) || self.stopwords.contains(token) {
            return None;
        }
        Some(self.stemmer.stem(token))
    }

    pub fn clean(&self, corpus: &Corpus) -> Corpus {
        let sentences = corpus
            .sentences
            .iter()
            .map(|s| s.iter().filter_map(|t| self.normalize(t)).collect())
            .collect();
        Corpus::from_sentences(corpus.language.clone(), sentences)
    }
}

/// Drop non-alphabetic tokens and stopwords, stem the rest, and drop
/// sentences left empty.
pub fn clean_tokens(corpus: &Corpus, stopwords: &StopWords, stemmer: &dyn Stemmer) -> Corpus {
    let sentences = corpus
        .sentences
        .iter()
        .map(|s| {
            s.iter()
                .filter(|t| is_alphabetic_token(t) && !stopwords.contains(t))
                .map(|t| stemmer.stem(t))
                .collect()
        })
        .collect();
    Corpus::from_sentences(corpus.language.clone(), sentences)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VocabEntry {
    /// Position in frequency order.
    pub id: usize,
    pub count: u64,
}

/// Word frequencies with a deterministic frequency order: descending
/// count, ties broken by lexicographic order of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    entries: HashMap<String, VocabEntry>,
    frequency_order: Vec<String>,
    total_tokens: u64,
}

impl Vocabulary {
    pub fn get(&self, word: &str) -> Option<VocabEntry> {
        self.entries.get(word).copied()
    }

    pub fn count(&self, word: &str) -> u64 {
        self.entries.get(word).map_or(0, |e| e.count)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.frequency_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequency_order.is_empty()
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn frequency_order(&self) -> &[String] {
        &self.frequency_order
    }

    /// The `k` most frequent words.
    pub fn top_k(&self, k: usize) -> Result<&[String]> {
        if k == 0 || k > self.len() {
            return Err(Error::InvalidArgument(format!(
                "k = {k} must be in 1..={} (vocabulary size)",
                self.len()
            )));
        }
        Ok(&self.frequency_order[..k])
    }

    /// `word<TAB>count` lines in frequency order.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for word in &self.frequency_order {
            writeln!(out, "{}\t{}", word, self.entries[word].count)?;
        }
        Ok(())
    }
}

pub fn build_vocabulary(corpus: &Corpus) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(Error::EmptyInput("cannot build a vocabulary from an empty corpus".into()));
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for token in corpus.sentences.iter().flatten() {
        *counts.entry(token).or_default() += 1;
    }
    let mut order: Vec<(&str, u64)> = counts.into_iter().collect();
    order.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let total_tokens = order.iter().map(|(_, c)| c).sum();
    let entries = order
        .iter()
        .enumerate()
        .map(|(id, &(w, count))| (w.to_owned(), VocabEntry { id, count }))
        .collect();
    let frequency_order = order.into_iter().map(|(w, _)| w.to_owned()).collect();
    Ok(Vocabulary {
        entries,
        frequency_order,
        total_tokens,
    })
}

/// Draw `round(fraction * sentence_count)` whole sentences uniformly
/// without replacement. Selected sentences keep their original order.
pub fn sample_corpus(corpus: &Corpus, fraction: f64, seed: u64) -> Result<Corpus> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "sample fraction {fraction} outside (0, 1]"
        )));
    }
    let n = corpus.sentence_count();
    let amount = ((fraction * n as f64).round() as usize).min(n);
    if amount == n {
        return Ok(corpus.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, n, amount).into_vec();
    picked.sort_unstable();
    let sentences = picked.into_iter().map(|i| corpus.sentences[i].clone()).collect();
    Ok(Corpus::from_sentences(corpus.language.clone(), sentences))
}
