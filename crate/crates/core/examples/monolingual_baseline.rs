// Two models trained on independent 80% samples of one corpus, combined by
// interpolation and by CCA, averaged over 5 repetitions.

use vsm_eval::bow::{build_bow_model, BowConfig};
use vsm_eval::combine::{monolingual_baseline, BaselineConfig, Combiner};
use vsm_eval::corpus::{Cleaner, Corpus};
use vsm_eval::error::Result;
use vsm_eval::scoring::{ScoreVector, WordPair, WordPairList};
use vsm_eval::synthetic::topic_corpus;

pub fn run_example() -> Result<()> {
    let topics: [&[&str]; 3] = [&["cat", "dog", "pet", "fur"], &["car", "bus", "road", "wheel"], &["sun", "moon", "sky", "star"]];
    let corpus = topic_corpus("en", &topics, 1500, 6, 2)?;
    let raw = [("cat", "dog", 9.0), ("car", "bus", 8.5), ("sun", "moon", 8.0), ("pet", "road", 1.5), ("sky", "fur", 1.0), ("wheel", "star", 2.0), ("dog", "fur", 7.0)];
    let pairs = WordPairList::new(
        "en",
        raw.iter()
            .enumerate()
            .map(|(id, (a, b, _))| WordPair { id, word1: a.to_string(), word2: b.to_string() })
            .collect(),
    )?;
    let human = ScoreVector::new("human", (0..raw.len()).collect(), raw.iter().map(|r| r.2).collect())?;

    let targets = pairs.words();
    let cleaner = Cleaner::passthrough();
    let config = BowConfig { context_words: 12, window: 2 };
    let build = |c: &Corpus| Ok(build_bow_model(c, &targets, &cleaner, config)?.table);

    for (name, combiner) in [("li", Combiner::li()), ("cca", Combiner::cca())] {
        let report = monolingual_baseline(&corpus, build, &pairs, &human, &BaselineConfig::new(combiner, 99))?;
        let rhos: Vec<String> = report.rhos().iter().map(|r| format!("{r:.3}")).collect();
        println!("{name}: mean {:.3} over [{}], {} failed", report.mean().unwrap_or(f64::NAN), rhos.join(", "), report.failed());
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
