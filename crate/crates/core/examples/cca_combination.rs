// CCA between two vector spaces whose rows are translations of each other,
// then one combined vector per word by concatenating both projections.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsm_eval::combine::{fit_cca_tables, load_cca_model, project_concat, save_cca_model, CcaOptions, ProjectOptions, TranslationLexicon};
use vsm_eval::error::Result;
use vsm_eval::vectors::VectorTable;

pub fn run_example() -> Result<()> {
    // both spaces are noisy linear images of a shared 3-dimensional meaning
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 40;
    let latent = DMatrix::from_fn(n, 3, |_, _| rng.random_range(-1.0..1.0));
    let map_en = DMatrix::from_fn(3, 8, |_, _| rng.random_range(-1.0..1.0));
    let map_de = DMatrix::from_fn(3, 6, |_, _| rng.random_range(-1.0..1.0));
    let mut noisy = |m: DMatrix<f64>| m.map(|v| v + rng.random_range(-0.1..0.1));
    let en = noisy(&latent * map_en);
    let de = noisy(&latent * map_de);

    let mut t_en = VectorTable::new("en", 8)?;
    let mut t_de = VectorTable::new("de", 6)?;
    let mut rows = Vec::new();
    for i in 0..n {
        let (w_en, w_de) = (format!("word{i}"), format!("wort{i}"));
        t_en.insert(w_en.clone(), en.row(i).iter().copied().collect::<Vec<_>>().as_slice())?;
        t_de.insert(w_de.clone(), de.row(i).iter().copied().collect::<Vec<_>>().as_slice())?;
        rows.push(vec![w_en, w_de]);
    }
    let lexicon = TranslationLexicon::new(vec!["en".into(), "de".into()], rows)?;

    let options = CcaOptions { components: Some(3), ..CcaOptions::default() };
    let model = fit_cca_tables(&t_en, &t_de, &lexicon, &options)?;
    let shown: Vec<String> = model.correlations().iter().map(|c| format!("{c:.4}")).collect();
    println!("canonical correlations: {}", shown.join(" "));

    let combined = project_concat(&t_en, &t_de, &lexicon, &model, ProjectOptions::default())?;
    println!(
        "{} combined vectors of dimension {}; `wort5` is stored under `{}`",
        combined.table.len(),
        combined.table.dimension(),
        combined.aliases["wort5"]
    );

    let path = std::env::temp_dir().join(format!("cca-example-{}.txt", std::process::id()));
    save_cca_model(&model, &path)?;
    let back = load_cca_model(&path)?;
    let _ = std::fs::remove_file(&path);
    assert_eq!(back, model);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
