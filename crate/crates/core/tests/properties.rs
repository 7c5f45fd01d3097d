use std::collections::BTreeSet;

use nalgebra::DMatrix;
use proptest::prelude::*;

use vsm_eval::agreement::{
    cross_language_agreement, detect_outliers, partition_batches, within_language_agreement, EvaluationSet,
};
use vsm_eval::bow::{count_cooccurrences, ppmi_transform, CountMatrix};
use vsm_eval::combine::{fit_cca, interpolate_scores, CcaOptions};
use vsm_eval::corpus::{build_vocabulary, clean_tokens, sample_corpus, Corpus, IdentityStemmer, SnowballStemmer, StopWords};
use vsm_eval::coverage::vocabulary_coverage;
use vsm_eval::scoring::{cosine, rank_scores, score_pairs, OovPolicy, ScoreVector, WordPair, WordPairList};
use vsm_eval::stats::{kendall_tau_b, pearson, quintile_fscore, spearman, welch_t_test};
use vsm_eval::vectors::VectorTable;

const WORDS: [&str; 8] = ["ant", "bee", "cat", "dog", "eel", "fox", "gnu", "hen"];

fn corpus_strategy() -> impl Strategy<Value = Corpus> {
    prop::collection::vec(prop::collection::vec(0..WORDS.len(), 1..12), 1..10).prop_map(|ss| {
        Corpus::from_sentences(
            "en",
            ss.into_iter()
                .map(|s| s.into_iter().map(|i| WORDS[i].to_owned()).collect())
                .collect(),
        )
    })
}

fn scores(len: std::ops::Range<usize>) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    len.prop_flat_map(|n| {
        let v = prop::collection::vec(prop_oneof![(-5i32..5).prop_map(f64::from), -100.0..100.0f64], n);
        (v.clone(), v)
    })
}

fn full_counts(c: &Corpus, window: usize) -> CountMatrix {
    let vocab = build_vocabulary(c).unwrap();
    let words: Vec<&str> = vocab.frequency_order().iter().map(String::as_str).collect();
    count_cooccurrences(c, &words, &vocab, vocab.len(), window).unwrap()
}

fn toy_set(scores: Vec<Vec<f64>>) -> EvaluationSet {
    let pairs = (0..scores.len())
        .map(|id| WordPair { id, word1: format!("w{id}a"), word2: format!("w{id}b") })
        .collect();
    let n = scores.len();
    EvaluationSet::new("toy", WordPairList::new("en", pairs).unwrap(), partition_batches(n, 10), scores).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn doubling_counts_keeps_ppmi(c in corpus_strategy()) {
        let m = full_counts(&c, 2);
        let doubled: Vec<u64> = (0..m.rows()).flat_map(|r| m.row(r).iter().map(|x| 2 * x).collect::<Vec<_>>()).collect();
        let d = CountMatrix::from_counts("en", m.row_words().to_vec(), m.col_words().to_vec(), doubled, 2).unwrap();
        prop_assume!(m.total() > 0);
        let (a, b) = (ppmi_transform(&m).unwrap(), ppmi_transform(&d).unwrap());
        for (w, v) in a.iter() {
            for (x, y) in v.iter().zip(b.get(w).unwrap()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn counts_are_symmetric(c in corpus_strategy(), window in 1usize..4) {
        let m = full_counts(&c, window);
        for w1 in m.row_words() {
            for w2 in m.row_words() {
                prop_assert_eq!(m.count(w1, w2), m.count(w2, w1));
            }
        }
    }

    #[test]
    fn wider_windows_never_lose_counts(c in corpus_strategy(), window in 1usize..4) {
        let (narrow, wide) = (full_counts(&c, window), full_counts(&c, window + 1));
        for w1 in narrow.row_words() {
            for w2 in narrow.col_words() {
                prop_assert!(wide.count(w1, w2) >= narrow.count(w1, w2));
            }
        }
    }

    #[test]
    fn vocabulary_matches_recount(c in corpus_strategy()) {
        let v = build_vocabulary(&c).unwrap();
        let mut total = 0;
        for w in v.frequency_order() {
            let n = c.sentences().iter().flatten().filter(|t| *t == w).count() as u64;
            prop_assert_eq!(v.count(w), n);
            total += n;
        }
        prop_assert_eq!(total, v.total_tokens());
        prop_assert_eq!(v.len(), c.type_count());
        let ttr = c.type_token_ratio().unwrap();
        prop_assert!((ttr - c.type_count() as f64 / c.token_count() as f64).abs() < 1e-15);
        prop_assert_eq!(build_vocabulary(&sample_corpus(&c, 1.0, 9).unwrap()).unwrap(), v);
    }

    #[test]
    fn cleaning_is_idempotent(words in prop::collection::vec("[a-z]{1,8}|the|and|running|cats", 1..30)) {
        let c = Corpus::from_sentences("en", vec![words]);
        let stop = StopWords::nltk("en").unwrap();
        let snow = SnowballStemmer::english();
        let once = clean_tokens(&c, &stop, &IdentityStemmer);
        prop_assert_eq!(clean_tokens(&once, &stop, &IdentityStemmer), once);
        let stemmed = clean_tokens(&c, &StopWords::none(), &snow);
        prop_assert!(stemmed.sentences().iter().all(|s| !s.is_empty()));
    }

    #[test]
    fn vectors_round_trip(rows in prop::collection::vec(prop::collection::vec(-1e6..1e6f64, 3), 1..10)) {
        let mut t = VectorTable::new("en", 3).unwrap();
        for (i, r) in rows.iter().enumerate() {
            t.insert(format!("w{i}"), r).unwrap();
        }
        let mut buf = Vec::new();
        t.write_text(&mut buf).unwrap();
        let back = VectorTable::read_text(&buf[..], "en").unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn coverage_is_monotone(known in prop::collection::btree_set(0..WORDS.len(), 0..WORDS.len()), extra in 0..WORDS.len()) {
        let pairs: Vec<WordPair> = (0..WORDS.len() - 1)
            .map(|i| WordPair { id: i, word1: WORDS[i].into(), word2: WORDS[i + 1].into() })
            .collect();
        let list = WordPairList::new("en", pairs).unwrap();
        let mut t = VectorTable::new("en", 1).unwrap();
        for &i in &known {
            t.insert(WORDS[i], &[1.0]).unwrap();
        }
        let before = vocabulary_coverage(&[&t], &[&list]).unwrap();
        t.insert(WORDS[extra], &[1.0]).unwrap();
        let after = vocabulary_coverage(&[&t], &[&list]).unwrap();
        let (b, a): (BTreeSet<_>, BTreeSet<_>) = (before.covered.iter().collect(), after.covered.iter().collect());
        prop_assert!(b.is_subset(&a));
        let excluded: BTreeSet<_> = after.excluded.keys().collect();
        prop_assert!(a.is_disjoint(&excluded));
        prop_assert_eq!(a.len() + excluded.len(), list.len());
    }

    #[test]
    fn cosine_ignores_positive_scaling(
        u in prop::collection::vec(-10.0..10.0f64, 4),
        v in prop::collection::vec(-10.0..10.0f64, 4),
        alpha in 0.01..100.0f64,
        beta in 0.01..100.0f64,
    ) {
        let su: Vec<f64> = u.iter().map(|x| x * alpha).collect();
        let sv: Vec<f64> = v.iter().map(|x| x * beta).collect();
        let c = cosine(&u, &v).unwrap();
        prop_assert!((cosine(&su, &sv).unwrap() - c).abs() <= 1e-12);
        prop_assert!((-1.0..=1.0).contains(&c));
    }

    #[test]
    fn table_scaling_keeps_pair_scores(rows in prop::collection::vec(prop::collection::vec(0.0..5.0f64, 3), 4), factor in 0.1..10.0f64) {
        let mut t = VectorTable::new("en", 3).unwrap();
        for (i, r) in rows.iter().enumerate() {
            t.insert(WORDS[i], r).unwrap();
        }
        let pairs: Vec<WordPair> = (0..3).map(|i| WordPair { id: i, word1: WORDS[i].into(), word2: WORDS[i + 1].into() }).collect();
        let list = WordPairList::new("en", pairs).unwrap();
        let a = score_pairs(&t, &list, OovPolicy::Error).unwrap().scores;
        let b = score_pairs(&t.scaled(factor), &list, OovPolicy::Error).unwrap().scores;
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn ranks_survive_monotone_transforms((x, _) in scores(2..40)) {
        let ids: Vec<usize> = (0..x.len()).collect();
        let a = rank_scores(&ScoreVector::new("a", ids.clone(), x.clone()).unwrap()).unwrap();
        let b = rank_scores(&ScoreVector::new("b", ids, x.iter().map(|v| (v / 50.0).exp() * 3.0 + 1.0).collect()).unwrap()).unwrap();
        prop_assert_eq!(a.ranks(), b.ranks());
        let n = x.len() as f64;
        prop_assert!((a.ranks().iter().sum::<f64>() - n * (n + 1.0) / 2.0).abs() < 1e-9);
        let q = quintile_fscore(&a, &b, 2).unwrap();
        prop_assert!(q.f_scores.iter().all(|&f| f == 1.0));
    }

    #[test]
    fn correlations_are_symmetric_and_bounded((x, y) in scores(3..60)) {
        for f in [pearson, spearman, kendall_tau_b] {
            match (f(&x, &y), f(&y, &x)) {
                (Ok(a), Ok(b)) => {
                    prop_assert!((a - b).abs() <= 1e-12);
                    prop_assert!(a.abs() <= 1.0);
                }
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "asymmetric outcome {:?}", other),
            }
        }
    }

    #[test]
    fn spearman_ignores_monotone_transforms((x, y) in scores(3..60)) {
        if let Ok(r) = spearman(&x, &y) {
            let tx: Vec<f64> = x.iter().map(|v| v.powi(3) + 2.0 * v).collect();
            prop_assert!((spearman(&tx, &y).unwrap() - r).abs() <= 1e-12);
        }
    }

    #[test]
    fn quintile_overlap_is_symmetric((x, y) in scores(10..60)) {
        let ids: Vec<usize> = (0..x.len()).collect();
        let a = rank_scores(&ScoreVector::new("a", ids.clone(), x).unwrap()).unwrap();
        let b = rank_scores(&ScoreVector::new("b", ids, y).unwrap()).unwrap();
        let (ab, ba) = (quintile_fscore(&a, &b, 5).unwrap(), quintile_fscore(&b, &a, 5).unwrap());
        prop_assert_eq!(&ab.f_scores, &ba.f_scores);
        prop_assert!(ab.f_scores.iter().all(|f| (0.0..=1.0).contains(f)));
    }

    #[test]
    fn welch_is_antisymmetric((a, b) in scores(2..40)) {
        if let Ok(r) = welch_t_test(&a, &b) {
            let s = welch_t_test(&b, &a).unwrap();
            prop_assert_eq!(r.t_statistic, -s.t_statistic);
            prop_assert_eq!(r.p_value, s.p_value);
            prop_assert!((0.0..=1.0).contains(&r.p_value));
            prop_assert!(r.degrees_of_freedom <= (2 * a.len() - 2) as f64 + 1e-9);
        }
    }

    #[test]
    fn interpolation_swaps_exactly((x, y) in scores(2..30), lambda in 0.0..=1.0f64) {
        let ids: Vec<usize> = (0..x.len()).collect();
        let s1 = ScoreVector::new("a", ids.clone(), x).unwrap();
        let s2 = ScoreVector::new("b", ids, y).unwrap();
        let a = interpolate_scores(&s1, &s2, lambda).unwrap();
        let b = interpolate_scores(&s2, &s1, 1.0 - lambda).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn agreement_ignores_constant_shift(grid in prop::collection::vec(prop::collection::vec(0u8..=16, 13), 20)) {
        // scores on a 0.5 grid so the shift is exact
        let scores: Vec<Vec<f64>> = grid.iter().map(|r| r.iter().map(|&v| f64::from(v) * 0.5).collect()).collect();
        let set = toy_set(scores);
        let shifted = set.map_scores(|v| v + 2.0).unwrap();
        prop_assert_eq!(within_language_agreement(&set, 6).unwrap(), within_language_agreement(&shifted, 6).unwrap());
        let c = cross_language_agreement(&set, &set, 6).unwrap();
        if c.failed == 0 {
            prop_assert_eq!(c.mean, 1.0);
            prop_assert_eq!(c.std, 0.0);
        }
    }

    #[test]
    fn identical_annotators_are_never_outliers(col in prop::collection::vec(0.0..10.0f64, 5..30), threshold in 0.0..100.0f64) {
        let table = vec![col; 13];
        prop_assert!(detect_outliers(&table, threshold).unwrap().excluded.is_empty());
    }

    #[test]
    fn cca_ignores_invertible_transforms(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (n, dx, dy) = (30, 4, 3);
        let x = DMatrix::from_fn(n, dx, |_, _| rng.random_range(-1.0..1.0));
        let y = DMatrix::from_fn(n, dy, |i, j| x[(i, j)] + rng.random_range(-1.0..1.0));
        // well-conditioned upper-triangular transform
        let t = DMatrix::from_fn(dx, dx, |i, j| if i == j { 1.0 + rng.random_range(0.0..1.0) } else if i < j { rng.random_range(-0.5..0.5) } else { 0.0 });
        let opts = CcaOptions { eps: 0.0, ..CcaOptions::default() };
        let base = fit_cca(&x, &y, &opts).unwrap();
        let moved = fit_cca(&(&x * &t), &y, &opts).unwrap();
        prop_assert_eq!(base.components(), moved.components());
        for (a, b) in base.correlations().iter().zip(moved.correlations()) {
            prop_assert!((a - b).abs() <= 1e-8);
        }
        prop_assert!(base.correlations().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(base.correlations().iter().all(|&c| (0.0..=1.0 + 1e-12).contains(&c)));
    }
}
