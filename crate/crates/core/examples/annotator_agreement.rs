// Agreement between disjoint annotator groups, within one judgment
// language and across two, on a synthetic four-language dataset shaped like
// WordSim353 (350 pairs, 7 batches of 50, 13 annotators per batch).

use vsm_eval::agreement::{agreement_table, quintile_agreement_analysis, significance_matrix, DEFAULT_SUBSET_SIZE};
use vsm_eval::error::Result;
use vsm_eval::synthetic::AgreementFixture;

pub fn run_example() -> Result<()> {
    let sets = AgreementFixture::ws353_shaped(7).generate()?;
    let table = agreement_table(&sets, DEFAULT_SUBSET_SIZE)?;

    println!("cell\tsamples\tmean\tstd");
    for cell in table.within.iter().chain(&table.cross) {
        println!("{}\t{}\t{:.3}\t{:.3}", cell.label, cell.sample_count(), cell.mean, cell.std);
    }

    let tests = significance_matrix(&table.within, &table.cross)?;
    let worst = tests.iter().map(|t| t.result.p_value).fold(0.0, f64::max);
    println!("{} Welch tests, largest p = {worst:.3e}", tests.len());

    let within = quintile_agreement_analysis(&sets[0], None, DEFAULT_SUBSET_SIZE, 5)?;
    let cross = quintile_agreement_analysis(&sets[0], Some(&sets[1]), DEFAULT_SUBSET_SIZE, 5)?;
    for curve in [within, cross] {
        let f: Vec<String> = curve.f_scores.iter().map(|v| format!("{v:.3}")).collect();
        println!("quintile F {} over {} splits: {}", curve.label, curve.cases, f.join(" "));
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
