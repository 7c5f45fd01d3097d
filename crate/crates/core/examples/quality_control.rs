// Screening and outlier removal on raw crowdsourced scores. One annotator
// of every batch rates everything 5 points higher than the others.

use vsm_eval::agreement::{outlier_statistics, run_qc, write_exclusion_log, QcConfig, RawScore};
use vsm_eval::error::Result;
use vsm_eval::synthetic::raw_score_fixture;

pub fn run_example() -> Result<()> {
    // 15 annotators per batch: the outlier in slot 3 plus two surplus raters
    let (raw, mut screening) = raw_score_fixture(2, 50, 15, Some((3, 5.0)), 0.5, 21)?;
    // one rater failed the screening pairs
    screening[7].similar = 4.0;

    let per_annotator = |batch: usize| -> Vec<Vec<f64>> {
        let mut names: Vec<&str> = Vec::new();
        let mut cols: Vec<Vec<f64>> = Vec::new();
        for r in raw.iter().filter(|r: &&RawScore| r.batch == batch) {
            match names.iter().position(|n| *n == r.annotator) {
                Some(j) => cols[j].push(r.score),
                None => {
                    names.push(&r.annotator);
                    cols.push(vec![r.score]);
                }
            }
        }
        cols
    };
    let stats = outlier_statistics(&per_annotator(0))?;
    let shown: Vec<String> = stats.iter().map(|s| format!("{s:.2}")).collect();
    println!("batch 0 statistics: {}", shown.join(" "));

    let outcome = run_qc("toy", "en", &raw, &screening, &QcConfig::default())?;
    println!(
        "kept {} pairs x {} annotators",
        outcome.set.len(),
        outcome.set.annotators()
    );
    let mut log = Vec::new();
    write_exclusion_log(&mut log, &outcome.log).expect("write to memory");
    print!("{}", String::from_utf8_lossy(&log));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
