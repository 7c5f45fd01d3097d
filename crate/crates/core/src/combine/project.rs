use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scoring::lookup;
use crate::vectors::VectorTable;

use super::cca::{lexicon_columns, CcaModel};
use super::lexicon::TranslationLexicon;

/// Which projected halves make up the combined vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProjectionMode {
    #[default]
    Concat,
    FirstOnly,
    SecondOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProjectOptions {
    pub mode: ProjectionMode,
    /// Scale each projected half to unit length before concatenation.
    pub half_norm: bool,
}

/// Combined vectors keyed by the first-language word of each lexicon row.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedTable {
    pub table: VectorTable,
    /// Second-language word to the first-language key of its row.
    pub aliases: BTreeMap<String, String>,
}

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    v
}

/// Build one vector per lexicon row from the projected first- and
/// second-language vectors. The output table is in the first language.
///
/// When a first-language word appears in several rows, the first row wins.
pub fn project_concat(
    t1: &VectorTable,
    t2: &VectorTable,
    lexicon: &TranslationLexicon,
    model: &CcaModel,
    options: ProjectOptions,
) -> Result<CombinedTable> {
    if model.dims() != (t1.dimension(), t2.dimension()) {
        return Err(Error::Validation(format!(
            "model expects dimensions {:?}, tables have ({}, {})",
            model.dims(),
            t1.dimension(),
            t2.dimension()
        )));
    }
    let (w1, w2) = lexicon_columns(t1, t2, lexicon)?;
    let m = model.components();
    let dim = match options.mode {
        ProjectionMode::Concat => 2 * m,
        _ => m,
    };
    let mut table = VectorTable::new(t1.language().clone(), dim)?;
    let mut aliases = BTreeMap::new();
    let missing = |row: usize, word: &str, t: &VectorTable| Error::Lookup {
        word: word.to_owned(),
        context: format!("lexicon row {row}, language `{}`", t.language()),
    };
    for (row, (a, b)) in w1.iter().zip(&w2).enumerate() {
        if table.contains(a) {
            continue;
        }
        let mut halves = Vec::with_capacity(2);
        if options.mode != ProjectionMode::SecondOnly {
            let v = lookup(t1, a).ok_or_else(|| missing(row, a, t1))?;
            halves.push(model.project(0, v)?);
        }
        if options.mode != ProjectionMode::FirstOnly {
            let v = lookup(t2, b).ok_or_else(|| missing(row, b, t2))?;
            halves.push(model.project(1, v)?);
        }
        let vector: Vec<f64> = halves
            .into_iter()
            .flat_map(|h| if options.half_norm { unit(h) } else { h })
            .collect();
        table.insert(*a, &vector)?;
        aliases.entry((*b).to_owned()).or_insert_with(|| (*a).to_owned());
    }
    Ok(CombinedTable { table, aliases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combine::cca::{fit_cca_tables, CcaOptions};
    use crate::combine::lexicon::self_lexicon;
    use crate::scoring::{score_pairs, OovPolicy, WordPair, WordPairList};
    use nalgebra::DMatrix;

    fn table(lang: &str, rows: &[(&str, [f64; 3])]) -> VectorTable {
        let mut t = VectorTable::new(lang, 3).unwrap();
        for (w, v) in rows {
            t.insert(*w, v).unwrap();
        }
        t
    }

    fn fixture() -> VectorTable {
        table(
            "en",
            &[
                ("cat", [1.0, 0.2, 0.0]),
                ("dog", [0.9, 0.4, 0.1]),
                ("car", [0.0, 1.0, 0.3]),
                ("bus", [0.1, 0.8, 0.7]),
                ("sun", [0.5, 0.5, 0.9]),
            ],
        )
    }

    #[test]
    fn identity_model_preserves_pair_scores() {
        let t = fixture();
        let lex = self_lexicon(&"en".into(), t.words().to_vec()).unwrap();
        let id = DMatrix::identity(3, 3);
        let model = CcaModel::from_parts(
            ("en".into(), "en".into()),
            vec![0.0; 3],
            vec![0.0; 3],
            id.clone(),
            id,
            vec![1.0; 3],
            0.0,
            false,
        )
        .unwrap();
        let combined = project_concat(&t, &t, &lex, &model, ProjectOptions::default()).unwrap();
        assert_eq!(combined.table.dimension(), 6);
        assert_eq!(combined.table.len(), lex.len());
        let pairs = WordPairList::new(
            "en",
            vec![
                WordPair { id: 0, word1: "cat".into(), word2: "dog".into() },
                WordPair { id: 1, word1: "car".into(), word2: "sun".into() },
                WordPair { id: 2, word1: "bus".into(), word2: "cat".into() },
            ],
        )
        .unwrap();
        let single = score_pairs(&t, &pairs, OovPolicy::Error).unwrap().scores;
        let both = score_pairs(&combined.table, &pairs, OovPolicy::Error).unwrap().scores;
        for (a, b) in single.values().iter().zip(both.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn dimensions_per_mode() {
        let t = fixture();
        let other = table(
            "de",
            &[("Katze", [0.3, 0.1, 0.0]), ("Hund", [0.2, 0.9, 0.1]), ("Auto", [0.0, 0.1, 0.9]), ("Bus", [0.6, 0.6, 0.6])],
        );
        let lex = TranslationLexicon::read_tsv(
            "en\tde\ncat\tKatze\ndog\tHund\ncar\tAuto\nbus\tBus\n".as_bytes(),
        )
        .unwrap();
        let model = fit_cca_tables(&t, &other, &lex, &CcaOptions::default()).unwrap();
        assert_eq!(model.components(), 3);
        let full = project_concat(&t, &other, &lex, &model, ProjectOptions::default()).unwrap();
        assert_eq!(full.table.dimension(), 6);
        assert_eq!(full.aliases["Hund"], "dog");
        let one = ProjectOptions { mode: ProjectionMode::FirstOnly, half_norm: true };
        let half = project_concat(&t, &other, &lex, &model, one).unwrap();
        assert_eq!(half.table.dimension(), 3);
        let v = half.table.get("cat").unwrap();
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);

        let bad = TranslationLexicon::read_tsv("en\tde\nsun\tSonne\n".as_bytes()).unwrap();
        assert!(matches!(
            project_concat(&t, &other, &bad, &model, ProjectOptions::default()),
            Err(Error::Lookup { .. })
        ));
    }
}
