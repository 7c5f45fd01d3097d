// Score-level linear interpolation of two models whose errors are
// independent, swept over the weight of the first model.

use vsm_eval::combine::{interpolate_scores, LAMBDA_SWEEP};
use vsm_eval::error::Result;
use vsm_eval::scoring::{correlate_scores, ScoreVector};
use vsm_eval::stats::Correlation;
use vsm_eval::synthetic::complementary_models;

pub fn run_example() -> Result<()> {
    let models = complementary_models(300, 3.0, 5)?;
    let rho = |s: &ScoreVector| correlate_scores(s, &models.reference, Correlation::Spearman).map(|r| r.0);
    println!("model 1: {:.3}", rho(&models.model_1)?);
    println!("model 2: {:.3}", rho(&models.model_2)?);
    for lambda in LAMBDA_SWEEP {
        let mixed = interpolate_scores(&models.model_1, &models.model_2, lambda)?;
        println!("lambda {lambda:.2}: {:.3}", rho(&mixed)?);
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
