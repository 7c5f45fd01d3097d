use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::language::Language;
use crate::scoring::{lookup, WordPairList};
use crate::vectors::VectorTable;

/// Aligned word tuples, one word per language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationLexicon {
    languages: Vec<Language>,
    rows: Vec<Vec<String>>,
}

impl TranslationLexicon {
    pub fn new(languages: Vec<Language>, rows: Vec<Vec<String>>) -> Result<Self> {
        if languages.len() < 2 {
            return Err(Error::InvalidArgument("a lexicon needs at least two languages".into()));
        }
        let unique: HashSet<&Language> = languages.iter().collect();
        if unique.len() != languages.len() {
            return Err(Error::Validation("duplicate language column in lexicon".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != languages.len() {
                return Err(Error::Validation(format!(
                    "lexicon row {i} has {} words, expected {}",
                    row.len(),
                    languages.len()
                )));
            }
            if row.iter().any(|w| w.is_empty() || w.contains(char::is_whitespace)) {
                return Err(Error::Validation(format!("lexicon row {i} has an empty or blank word")));
            }
        }
        Ok(TranslationLexicon { languages, rows })
    }

    /// Rows from the word positions of aligned pair lists: the first words
    /// of pair `i` form one row and the second words another. Repeated tuples
    /// are kept once, in first-seen order.
    pub fn from_pair_lists(lists: &[&WordPairList]) -> Result<Self> {
        let first = lists
            .first()
            .ok_or_else(|| Error::InvalidArgument("no pair lists given".into()))?;
        for l in &lists[1..] {
            if l.ids() != first.ids() {
                return Err(Error::Alignment(format!(
                    "pair lists `{}` and `{}` are not aligned",
                    first.language(),
                    l.language()
                )));
            }
        }
        let languages = lists.iter().map(|l| l.language().clone()).collect();
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        for i in 0..first.len() {
            for side in 0..2 {
                let row: Vec<String> = lists
                    .iter()
                    .map(|l| {
                        let p = &l.pairs()[i];
                        if side == 0 { p.word1.clone() } else { p.word2.clone() }
                    })
                    .collect();
                if seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
        TranslationLexicon::new(languages, rows)
    }

    pub fn languages(&self) -> &[Language] {
        &self.languages
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, language: &Language) -> Result<usize> {
        self.languages
            .iter()
            .position(|l| l == language)
            .ok_or_else(|| Error::Alignment(format!("lexicon has no `{language}` column")))
    }

    pub fn column(&self, language: &Language) -> Result<Vec<&str>> {
        let c = self.column_index(language)?;
        Ok(self.rows.iter().map(|r| r[c].as_str()).collect())
    }

    /// Two-language view, in the given column order.
    pub fn select(&self, l1: &Language, l2: &Language) -> Result<TranslationLexicon> {
        let (a, b) = (self.column_index(l1)?, self.column_index(l2)?);
        if a == b {
            return self_lexicon(l1, self.rows.iter().map(|r| r[a].clone()));
        }
        let rows = self.rows.iter().map(|r| vec![r[a].clone(), r[b].clone()]).collect();
        TranslationLexicon::new(vec![l1.clone(), l2.clone()], rows)
    }

    /// Keep rows whose words all resolve in the table of their language.
    /// Tables are matched to columns by position.
    pub fn filter_covered(&self, tables: &[&VectorTable]) -> Result<TranslationLexicon> {
        if tables.len() != self.languages.len() {
            return Err(Error::InvalidArgument(format!(
                "{} tables for a {}-language lexicon",
                tables.len(),
                self.languages.len()
            )));
        }
        let rows = self
            .rows
            .iter()
            .filter(|r| r.iter().zip(tables).all(|(w, t)| lookup(t, w).is_some()))
            .cloned()
            .collect();
        Ok(TranslationLexicon {
            languages: self.languages.clone(),
            rows,
        })
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let header: Vec<&str> = self.languages.iter().map(|l| l.as_str()).collect();
        writeln!(out, "{}", header.join("\t"))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join("\t"))?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut languages: Option<Vec<Language>> = None;
        let mut rows = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<String> = line.split('\t').map(str::to_owned).collect();
            match &languages {
                None => languages = Some(fields.into_iter().map(Language::from).collect()),
                Some(langs) => {
                    if fields.len() != langs.len() || fields.iter().any(|f| f.is_empty()) {
                        return Err(Error::format(
                            lineno,
                            format!("expected {} non-empty words, found `{line}`", langs.len()),
                        ));
                    }
                    rows.push(fields);
                }
            }
        }
        let languages = languages.ok_or_else(|| Error::format(1, "missing header of language codes"))?;
        TranslationLexicon::new(languages, rows)
    }
}

/// A lexicon pairing each word with itself, for combining two models of one
/// language.
pub fn self_lexicon(language: &Language, words: impl IntoIterator<Item = String>) -> Result<TranslationLexicon> {
    let mut seen = HashSet::new();
    let rows = words
        .into_iter()
        .filter(|w| seen.insert(w.clone()))
        .map(|w| vec![w.clone(), w])
        .collect();
    Ok(TranslationLexicon {
        languages: vec![language.clone(), language.clone()],
        rows,
    })
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<TranslationLexicon> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    TranslationLexicon::read_tsv(BufReader::new(file)).map_err(|e| e.with_path(path))
}
