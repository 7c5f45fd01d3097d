// Train one model per training language and evaluate each against the
// human scores of every judgment language, on the pairs all models cover.

use vsm_eval::agreement::EvaluationSet;
use vsm_eval::bow::{build_bow_model, BowConfig};
use vsm_eval::corpus::Cleaner;
use vsm_eval::coverage::vocabulary_coverage;
use vsm_eval::error::Result;
use vsm_eval::scoring::{correlate_scores, score_pairs, OovPolicy, WordPair, WordPairList};
use vsm_eval::stats::Correlation;
use vsm_eval::synthetic::topic_corpus;

const EN: [&[&str]; 3] = [&["cat", "dog", "pet", "fur"], &["car", "bus", "road", "wheel"], &["sun", "moon", "sky", "star"]];
const IT: [&[&str]; 3] = [
    &["gatto", "cane", "animale", "pelo"],
    &["auto", "autobus", "strada", "ruota"],
    &["sole", "luna", "cielo", "stella"],
];

fn pairs(lang: &str, topics: &[&[&str]; 3]) -> Result<WordPairList> {
    // (topic, word) positions shared by both languages
    let layout = [((0, 0), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (2, 1)), ((0, 2), (1, 2)), ((1, 3), (2, 3)), ((0, 3), (0, 0)), ((2, 2), (0, 1))];
    let list = layout
        .iter()
        .enumerate()
        .map(|(id, ((t1, w1), (t2, w2)))| WordPair {
            id,
            word1: topics[*t1][*w1].to_owned(),
            word2: topics[*t2][*w2].to_owned(),
        })
        .collect();
    WordPairList::new(lang, list)
}

pub fn run_example() -> Result<()> {
    // two annotators per judgment language
    let en_ratings = [[9.0, 8.5], [8.0, 9.0], [9.5, 9.0], [1.0, 2.0], [2.0, 1.5], [7.0, 6.5], [1.5, 2.5]];
    let it_ratings = [[8.0, 8.5], [9.0, 9.5], [8.5, 7.0], [3.0, 2.0], [1.0, 1.5], [5.0, 6.0], [2.0, 3.5]];
    let mut sets = Vec::new();
    for (lang, topics, ratings) in [("en", &EN, en_ratings), ("it", &IT, it_ratings)] {
        let list = pairs(lang, topics)?;
        let scores = ratings.iter().map(|r| r.to_vec()).collect();
        sets.push(EvaluationSet::new("toy", list, vec![0; ratings.len()], scores)?);
    }

    let config = BowConfig { context_words: 12, window: 2 };
    let mut tables = Vec::new();
    for (seed, (lang, topics)) in [("en", &EN), ("it", &IT)].into_iter().enumerate() {
        let corpus = topic_corpus(lang, topics, 2000, 6, seed as u64)?;
        let targets = sets[seed].pairs().words();
        tables.push(build_bow_model(&corpus, &targets, &Cleaner::passthrough(), config)?.table);
    }

    let table_refs: Vec<_> = tables.iter().collect();
    let lists: Vec<_> = sets.iter().map(|s| s.pairs()).collect();
    let coverage = vocabulary_coverage(&table_refs, &lists)?;
    println!("{} of {} pairs covered by every model", coverage.covered.len(), coverage.pair_ids.len());

    println!("TL\tJL\tpairs\tspearman");
    for (table, scored_in) in tables.iter().zip(&sets) {
        let scores = score_pairs(table, &scored_in.pairs().restrict(&coverage.covered), OovPolicy::Error)?.scores;
        for judged in &sets {
            let (rho, n) = correlate_scores(&scores, &judged.human_means(), Correlation::Spearman)?;
            println!("{}\t{}\t{n}\t{rho:.3}", table.language(), judged.language());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
