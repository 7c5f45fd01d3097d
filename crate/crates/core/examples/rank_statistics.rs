// The statistics behind the reports: rank correlations with ties, Welch's
// t-test and the per-quintile overlap of two rankings.

use vsm_eval::error::Result;
use vsm_eval::scoring::{rank_scores, ScoreVector};
use vsm_eval::stats::{average_ranks, kendall_tau_b, pearson, quintile_fscore, spearman, welch_t_test};

pub fn run_example() -> Result<()> {
    let human = [8.5, 7.0, 7.0, 3.0, 9.5, 1.0, 4.5, 6.0, 2.0, 5.0];
    let model = [0.61, 0.42, 0.50, 0.18, 0.70, 0.05, 0.33, 0.29, 0.21, 0.40];
    println!("ranks of human scores: {:?}", average_ranks(&human));
    println!("pearson  {:.4}", pearson(&human, &model)?);
    println!("spearman {:.4}", spearman(&human, &model)?);
    println!("kendall  {:.4}", kendall_tau_b(&human, &model)?);

    let within = [0.81, 0.84, 0.79, 0.86, 0.83, 0.80];
    let cross = [0.74, 0.71, 0.76, 0.70, 0.75, 0.73];
    let w = welch_t_test(&within, &cross)?;
    println!("welch t = {:.3}, df = {:.2}, p = {:.2e}", w.t_statistic, w.degrees_of_freedom, w.p_value);

    let h = rank_scores(&ScoreVector::new("human", (0..10).collect(), human.to_vec())?)?;
    let m = rank_scores(&ScoreVector::new("model", (0..10).collect(), model.to_vec())?)?;
    let overlap = quintile_fscore(&h, &m, 5)?;
    println!("quintile F: {:?} (block sizes {:?})", overlap.f_scores, overlap.block_sizes);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
