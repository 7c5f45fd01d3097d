//! Pair exclusion across aligned language versions of a dataset.
//!
//! A pair is dropped everywhere as soon as one of its words is missing from
//! the vector table of any language version, so TL x JL comparisons always
//! run on identical pair sets.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::scoring::{lookup, PairId, WordPairList};
use crate::vectors::VectorTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingWord {
    pub language: Language,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub pair_ids: Vec<PairId>,
    pub covered: Vec<PairId>,
    /// Excluded pair index to the words that caused the exclusion.
    pub excluded: BTreeMap<PairId, Vec<MissingWord>>,
}

impl CoverageReport {
    pub fn excluded_ids(&self) -> Vec<PairId> {
        self.excluded.keys().copied().collect()
    }

    pub fn is_covered(&self, id: PairId) -> bool {
        !self.excluded.contains_key(&id)
    }

    /// `pair_index  word1  word2  status  missing_in` rows, with words taken
    /// from `reference`.
    pub fn write_tsv<W: Write>(&self, mut out: W, reference: &WordPairList) -> io::Result<()> {
        writeln!(out, "pair_index\tword1\tword2\tstatus\tmissing_in")?;
        for &id in &self.pair_ids {
            let (w1, w2) = reference
                .get(id)
                .map_or(("", ""), |p| (p.word1.as_str(), p.word2.as_str()));
            match self.excluded.get(&id) {
                None => writeln!(out, "{id}\t{w1}\t{w2}\tcovered\t-")?,
                Some(missing) => {
                    let cells: Vec<String> = missing.iter().map(|m| format!("{}:{}", m.language, m.word)).collect();
                    writeln!(out, "{id}\t{w1}\t{w2}\texcluded\t{}", cells.join(","))?
                }
            }
        }
        Ok(())
    }
}

/// Check every table against the pair lists of its language.
///
/// All lists must share the same pair indices in the same order. Every table
/// needs at least one list in its language; lists without a table do not
/// constrain coverage.
pub fn vocabulary_coverage(tables: &[&VectorTable], sets: &[&WordPairList]) -> Result<CoverageReport> {
    let first = sets
        .first()
        .ok_or_else(|| Error::InvalidArgument("coverage needs at least one pair list".into()))?;
    let pair_ids = first.ids();
    for set in &sets[1..] {
        if set.ids() != pair_ids {
            return Err(Error::Alignment(format!(
                "pair list for `{}` ({} pairs) is not aligned with `{}` ({} pairs)",
                set.language(),
                set.len(),
                first.language(),
                first.len()
            )));
        }
    }

    let mut excluded: BTreeMap<PairId, Vec<MissingWord>> = BTreeMap::new();
    for table in tables {
        let mut matched = false;
        for set in sets.iter().filter(|s| s.language() == table.language()) {
            matched = true;
            for pair in set.pairs() {
                for word in [&pair.word1, &pair.word2] {
                    if lookup(table, word).is_none() {
                        let entry = excluded.entry(pair.id).or_default();
                        let missing = MissingWord {
                            language: table.language().clone(),
                            word: word.clone(),
                        };
                        if !entry.contains(&missing) {
                            entry.push(missing);
                        }
                    }
                }
            }
        }
        if !matched {
            return Err(Error::Alignment(format!(
                "no pair list in language `{}` for its vector table",
                table.language()
            )));
        }
    }
    let covered = pair_ids.iter().copied().filter(|id| !excluded.contains_key(id)).collect();
    Ok(CoverageReport {
        pair_ids,
        covered,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::WordPair;

    fn list(lang: &str, pairs: &[(&str, &str)]) -> WordPairList {
        WordPairList::new(
            lang,
            pairs
                .iter()
                .enumerate()
                .map(|(id, (a, b))| WordPair {
                    id,
                    word1: a.to_string(),
                    word2: b.to_string(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn table(lang: &str, words: &[&str]) -> VectorTable {
        let mut t = VectorTable::new(lang, 1).unwrap();
        for w in words {
            t.insert(*w, &[1.0]).unwrap();
        }
        t
    }

    #[test]
    fn full_coverage() {
        let en = list("en", &[("cat", "dog"), ("car", "bus")]);
        let t = table("en", &["cat", "dog", "car", "bus"]);
        let r = vocabulary_coverage(&[&t], &[&en]).unwrap();
        assert!(r.excluded.is_empty());
        assert_eq!(r.covered, vec![0, 1]);
    }

    #[test]
    fn one_missing_word_excludes_its_pairs_everywhere() {
        let en = list("en", &[("cat", "dog"), ("car", "bus"), ("dog", "wolf"), ("sun", "moon")]);
        let de = list("de", &[("Katze", "Hund"), ("Auto", "Bus"), ("Hund", "Wolf"), ("Sonne", "Mond")]);
        let t_en = table("en", &["cat", "dog", "car", "bus", "wolf", "sun", "moon"]);
        let t_de = table("de", &["katze", "auto", "bus", "wolf", "sonne", "mond"]);
        let r = vocabulary_coverage(&[&t_en, &t_de], &[&en, &de]).unwrap();
        assert_eq!(r.excluded_ids(), vec![0, 2]);
        assert_eq!(r.covered, vec![1, 3]);
        assert_eq!(r.excluded[&0], vec![MissingWord { language: "de".into(), word: "Hund".into() }]);

        let mut out = Vec::new();
        r.write_tsv(&mut out, &en).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("0\tcat\tdog\texcluded\tde:Hund\n"), "{text}");
        assert!(text.contains("1\tcar\tbus\tcovered\t-\n"));
    }

    #[test]
    fn misaligned_sets() {
        let en = list("en", &[("cat", "dog"), ("car", "bus")]);
        let de = list("de", &[("Katze", "Hund")]);
        assert!(matches!(vocabulary_coverage(&[], &[&en, &de]), Err(Error::Alignment(_))));
        let ru = table("ru", &["кот"]);
        assert!(matches!(vocabulary_coverage(&[&ru], &[&en]), Err(Error::Alignment(_))));
    }

    #[test]
    fn nine_ninety_nine_minus_twenty_three() {
        let pairs: Vec<(String, String)> = (0..999).map(|i| (format!("a{i}"), format!("b{i}"))).collect();
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let en = list("en", &refs);
        let mut t = VectorTable::new("en", 1).unwrap();
        for (i, (a, b)) in pairs.iter().enumerate() {
            // drop one word from 23 evenly spaced pairs
            if !(i % 40 == 0 && i < 920) {
                t.insert(a.clone(), &[1.0]).unwrap();
            }
            t.insert(b.clone(), &[1.0]).unwrap();
        }
        let r = vocabulary_coverage(&[&t], &[&en]).unwrap();
        assert_eq!(r.excluded.len(), 23);
        assert_eq!(r.covered.len(), 976);
    }
}
