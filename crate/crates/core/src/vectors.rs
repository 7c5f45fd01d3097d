//! Dense word vectors and the word2vec text interchange format.
//!
//! ```text
//! <vocab_size> <dimension>
//! word v1 v2 ... vd
//! ```
//!
//! Floats are written in the shortest representation that parses back to
//! the identical `f64`, so `load(save(t)) == t` for every finite table.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::language::Language;

/// Word to dense vector mapping with a fixed dimension.
///
/// Rows keep insertion order, which is also the order they are saved in.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTable {
    language: Language,
    dimension: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    data: Vec<f64>,
}

impl VectorTable {
    pub fn new(language: impl Into<Language>, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("vector dimension must be positive".into()));
        }
        Ok(VectorTable {
            language: language.into(),
            dimension,
            words: Vec::new(),
            index: HashMap::new(),
            data: Vec::new(),
        })
    }

    /// Insert or replace the vector for `word`. Returns true when an older
    /// vector was replaced.
    pub fn insert(&mut self, word: impl Into<String>, vector: &[f64]) -> Result<bool> {
        let word = word.into();
        if vector.len() != self.dimension {
            return Err(Error::InvalidArgument(format!(
                "vector for `{word}` has length {}, table dimension is {}",
                vector.len(),
                self.dimension
            )));
        }
        if word.is_empty() || word.chars().any(char::is_whitespace) {
            return Err(Error::InvalidArgument(format!(
                "word `{word}` is empty or contains whitespace"
            )));
        }
        match self.index.get(&word) {
            Some(&row) => {
                let d = self.dimension;
                self.data[row * d..(row + 1) * d].copy_from_slice(vector);
                Ok(true)
            }
            None => {
                self.index.insert(word.clone(), self.words.len());
                self.words.push(word);
                self.data.extend_from_slice(vector);
                Ok(false)
            }
        }
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&row| self.row(row))
    }

    fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dimension..(row + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.words
            .iter()
            .enumerate()
            .map(move |(i, w)| (w.as_str(), self.row(i)))
    }

    /// Multiply every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> VectorTable {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x *= factor);
        out
    }

    pub fn with_language(mut self, language: impl Into<Language>) -> Self {
        self.language = language.into();
        self
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.len(), self.dimension)?;
        for (word, vector) in self.iter() {
            write!(out, "{word}")?;
            for x in vector {
                write!(out, " {x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Parse word2vec text. Duplicate words keep the last vector.
    pub fn read_text<R: BufRead>(reader: R, language: impl Into<Language>) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line.map_err(|e| Error::format(1, e.to_string()))?,
            None => return Err(Error::format(1, "missing header line")),
        };
        let mut fields = header.split_whitespace();
        let mut header_field = |name: &str| -> Result<usize> {
            fields
                .next()
                .ok_or_else(|| Error::format(1, format!("header is missing the {name}")))?
                .parse::<usize>()
                .map_err(|e| Error::format(1, format!("cannot parse {name}: {e}")))
        };
        let declared = header_field("vocabulary size")?;
        let dimension = header_field("dimension")?;
        if dimension == 0 {
            return Err(Error::format(1, "dimension must be positive"));
        }
        let mut table = VectorTable::new(language, dimension)?;
        let mut vector = Vec::with_capacity(dimension);
        let mut rows = 0usize;
        let mut last_line = 1;

        for (idx, line) in lines {
            let lineno = idx + 1;
            last_line = lineno;
            let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            rows += 1;
            if rows > declared {
                return Err(Error::format(
                    lineno,
                    format!("header declares {declared} words but more rows follow"),
                ));
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("non-empty line has a first field");
            vector.clear();
            for part in parts {
                let x: f64 = part
                    .parse()
                    .map_err(|e| Error::format(lineno, format!("cannot parse `{part}`: {e}")))?;
                if !x.is_finite() {
                    return Err(Error::format(lineno, format!("non-finite value `{part}`")));
                }
                vector.push(x);
            }
            if vector.len() != dimension {
                return Err(Error::format(
                    lineno,
                    format!("expected {dimension} components, found {}", vector.len()),
                ));
            }
            if table.insert(word, &vector)? {
                warn!("line {lineno}: duplicate word `{word}`, keeping the last vector");
            }
        }
        if rows != declared {
            return Err(Error::format(
                last_line + 1,
                format!("header declares {declared} words, found {rows} at end of file"),
            ));
        }
        Ok(table)
    }
}

pub fn load_vectors(path: impl AsRef<Path>, language: impl Into<Language>) -> Result<VectorTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    VectorTable::read_text(BufReader::new(file), language).map_err(|e| e.with_path(path))
}

pub fn save_vectors(table: &VectorTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if table.is_empty() {
        return Err(Error::EmptyInput("refusing to save an empty vector table".into()));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    table.write_text(&mut out).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}
