// Raw text to PPMI vectors: tokenize, clean, count co-occurrences within a
// window of 2, keep the most frequent context words and save the table in
// word2vec text format.

use vsm_eval::bow::{build_bow_model, BowConfig};
use vsm_eval::corpus::{build_vocabulary, tokenize_corpus, Cleaner};
use vsm_eval::error::Result;
use vsm_eval::vectors::{load_vectors, save_vectors};

const TEXT: &str = "The cat chased the dog across the garden. A dog and a cat sleep by the fire! \
Cars and buses crowd the road every morning. The bus stopped behind a red car. \
The sun rose over the hills; the moon faded. Stars and the moon light the night sky.";

pub fn run_example() -> Result<()> {
    let corpus = tokenize_corpus(TEXT.as_bytes(), "en")?;
    let cleaner = Cleaner::for_language("en");
    let cleaned = cleaner.clean(&corpus);
    println!(
        "{} sentences, {} tokens ({} after removing stopwords and stemming)",
        corpus.sentence_count(),
        corpus.token_count(),
        cleaned.token_count()
    );

    let vocab = build_vocabulary(&cleaned)?;
    println!("most frequent: {:?}", vocab.top_k(5)?);

    let targets = ["cat", "dog", "car", "bus", "sun", "moon", "unicorn"];
    let config = BowConfig { context_words: 12, window: 2 };
    let model = build_bow_model(&cleaned, &targets, &cleaner, config)?;
    println!(
        "{} rows x {} columns, {} co-occurrences; missing: {:?}",
        model.table.len(),
        model.table.dimension(),
        model.matrix.total(),
        model.missing
    );

    let path = std::env::temp_dir().join(format!("ppmi-example-{}.vec", std::process::id()));
    save_vectors(&model.table, &path)?;
    let back = load_vectors(&path, "en")?;
    let _ = std::fs::remove_file(&path);
    assert_eq!(back, model.table);
    println!("round-tripped {} vectors through {}", back.len(), path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
