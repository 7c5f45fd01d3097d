#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use vsm_eval::agreement::{partition_batches, write_raw_scores, write_screening, EvaluationSet};
use vsm_eval::scoring::{WordPair, WordPairList};
use vsm_eval::synthetic::{raw_score_fixture, topic_corpus};

pub const EN_TOPICS: [&[&str]; 3] = [
    &["cat", "dog", "horse", "cow", "sheep"],
    &["car", "truck", "train", "plane", "boat"],
    &["sun", "moon", "star", "cloud", "rain"],
];
pub const DE_TOPICS: [&[&str]; 3] = [
    &["katze", "hund", "pferd", "kuh", "schaf"],
    &["auto", "lastwagen", "zug", "flugzeug", "boot"],
    &["sonne", "mond", "stern", "wolke", "regen"],
];

pub struct Fixture {
    pub dir: tempfile::TempDir,
}

impl Fixture {
    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }
}

/// (topic, word) coordinates of each pair, shared by both languages.
fn layout() -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for t in 0..3 {
        for w in 0..4 {
            out.push(((t, w), (t, w + 1)));
            out.push(((t, w), ((t + 1) % 3, (w + 2) % 5)));
        }
    }
    out
}

fn pair_list(lang: &str, topics: &[&[&str]; 3]) -> WordPairList {
    let pairs = layout()
        .into_iter()
        .enumerate()
        .map(|(id, ((t1, w1), (t2, w2)))| WordPair {
            id,
            word1: topics[t1][w1].to_owned(),
            word2: topics[t2][w2].to_owned(),
        })
        .collect();
    WordPairList::new(lang, pairs).unwrap()
}

fn evalset(lang: &str, topics: &[&[&str]; 3], offset: f64) -> EvaluationSet {
    let list = pair_list(lang, topics);
    let scores: Vec<Vec<f64>> = layout()
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let base = if a.0 == b.0 { 8.0 } else { 2.0 };
            (0..13)
                .map(|j| (base + offset + (((i * 7 + j * 3) % 5) as f64 - 2.0) * 0.5).clamp(0.0, 10.0))
                .collect()
        })
        .collect();
    let batches = partition_batches(list.len(), 50);
    EvaluationSet::new("toy", list, batches, scores).unwrap()
}

fn corpus_text(lang: &str, topics: &[&[&str]; 3], seed: u64) -> String {
    let corpus = topic_corpus(lang, topics, 1500, 7, seed).unwrap();
    corpus
        .sentences()
        .iter()
        .map(|s| {
            let mut line = s.join(" ");
            line.push_str(".\n");
            line
        })
        .collect()
}

/// Corpora, evaluation sets and raw QC inputs for two languages.
pub fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let f = Fixture { dir };
    fs::write(f.path("en.txt"), corpus_text("en", &EN_TOPICS, 1)).unwrap();
    fs::write(f.path("de.txt"), corpus_text("de", &DE_TOPICS, 2)).unwrap();
    for (name, set) in [("en.tsv", evalset("en", &EN_TOPICS, 0.0)), ("de.tsv", evalset("de", &DE_TOPICS, -0.5))] {
        let mut buf = Vec::new();
        set.write_tsv(&mut buf).unwrap();
        fs::write(f.path(name), buf).unwrap();
    }
    let variants = [("clean", 13, None, 0.0), ("noisy", 13, None, 0.5), ("planted", 13, Some((6, 5.0)), 0.5)];
    for (stem, annotators, planted, noise) in variants {
        let (raw, screening) = raw_score_fixture(2, 50, annotators, planted, noise, 4).unwrap();
        let mut buf = Vec::new();
        write_raw_scores(&mut buf, &raw).unwrap();
        fs::write(f.path(&format!("{stem}_raw.tsv")), buf).unwrap();
        let mut buf = Vec::new();
        write_screening(&mut buf, &screening).unwrap();
        fs::write(f.path(&format!("{stem}_screening.tsv")), buf).unwrap();
    }
    f
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsm-eval"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

/// Data rows of a TSV report: manifest comment and header removed.
pub fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(str::to_owned).collect())
        .collect()
}

/// Every command on the fixture, as (name, args, output files).
pub fn command_matrix(f: &Fixture) -> Vec<(&'static str, Vec<String>, Vec<PathBuf>)> {
    let p = |n: &str| f.arg(n);
    let lp = |l: &str, n: &str| format!("{l}={}", f.arg(n));
    vec![
        (
            "build-bow",
            vec!["build-bow".into(), "--corpus".into(), p("en.txt"), "--lang".into(), "en".into(), "--targets".into(), p("en.tsv"), "--context-words".into(), "12".into(), "--out".into(), p("en.vec")],
            vec![f.path("en.vec"), f.path("en.vec.manifest.json")],
        ),
        (
            "build-bow",
            vec!["build-bow".into(), "--corpus".into(), p("de.txt"), "--lang".into(), "de".into(), "--targets".into(), p("de.tsv"), "--context-words".into(), "12".into(), "--out".into(), p("de.vec")],
            vec![f.path("de.vec"), f.path("de.vec.manifest.json")],
        ),
        (
            "score",
            vec!["score".into(), "--vectors".into(), p("en.vec"), "--lang".into(), "en".into(), "--pairs".into(), p("en.tsv"), "--out".into(), p("en_scores.tsv")],
            vec![f.path("en_scores.tsv")],
        ),
        (
            "eval",
            vec!["eval".into(), "--model".into(), lp("en", "en.vec"), "--model".into(), lp("de", "de.vec"), "--evalset".into(), lp("en", "en.tsv"), "--evalset".into(), lp("de", "de.tsv"), "--out".into(), p("eval.tsv")],
            vec![f.path("eval.tsv")],
        ),
        (
            "agree",
            vec!["agree".into(), "--evalset".into(), lp("en", "en.tsv"), "--evalset".into(), lp("de", "de.tsv"), "--out".into(), p("agree.tsv"), "--samples".into(), p("samples.tsv"), "--significance".into(), p("welch.tsv")],
            vec![f.path("agree.tsv"), f.path("samples.tsv"), f.path("welch.tsv")],
        ),
        (
            "quintiles",
            vec!["quintiles".into(), "--mode".into(), "model".into(), "--evalset".into(), lp("en", "en.tsv"), "--scores".into(), p("en_scores.tsv"), "--out".into(), p("quintiles.tsv")],
            vec![f.path("quintiles.tsv")],
        ),
        (
            "combine",
            vec!["combine".into(), "--method".into(), "li".into(), "--model".into(), lp("en", "en.vec"), "--model".into(), lp("de", "de.vec"), "--evalset".into(), lp("en", "en.tsv"), "--evalset".into(), lp("de", "de.tsv"), "--out".into(), p("li.tsv"), "--scores-out".into(), p("li_scores.tsv")],
            vec![f.path("li.tsv"), f.path("li_scores.tsv")],
        ),
        (
            "combine",
            vec!["combine".into(), "--method".into(), "cca".into(), "--model".into(), lp("en", "en.vec"), "--model".into(), lp("de", "de.vec"), "--evalset".into(), lp("en", "en.tsv"), "--evalset".into(), lp("de", "de.tsv"), "--out".into(), p("cca.tsv"), "--vectors-out".into(), p("cca.vec"), "--model-out".into(), p("cca.model")],
            vec![f.path("cca.tsv"), f.path("cca.vec"), f.path("cca.vec.manifest.json"), f.path("cca.model"), f.path("cca.model.manifest.json")],
        ),
        (
            "qc",
            vec!["qc".into(), "--raw".into(), p("planted_raw.tsv"), "--screening".into(), p("planted_screening.tsv"), "--lang".into(), "en".into(), "--annotators".into(), "12".into(), "--out".into(), p("qc.tsv"), "--log".into(), p("qc_log.tsv")],
            vec![f.path("qc.tsv"), f.path("qc_log.tsv")],
        ),
        (
            "coverage",
            vec!["coverage".into(), "--model".into(), lp("en", "en.vec"), "--model".into(), lp("de", "de.vec"), "--evalset".into(), lp("en", "en.tsv"), "--evalset".into(), lp("de", "de.tsv"), "--out".into(), p("coverage.tsv")],
            vec![f.path("coverage.tsv")],
        ),
        (
            "baseline",
            vec!["baseline".into(), "--corpus".into(), p("en.txt"), "--lang".into(), "en".into(), "--evalset".into(), p("en.tsv"), "--method".into(), "li".into(), "--context-words".into(), "12".into(), "--seed".into(), "17".into(), "--out".into(), p("baseline.tsv")],
            vec![f.path("baseline.tsv")],
        ),
        (
            "sample",
            vec!["sample".into(), "--corpus".into(), p("en.txt"), "--lang".into(), "en".into(), "--fraction".into(), "0.5".into(), "--seed".into(), "3".into(), "--out".into(), p("sample.txt")],
            vec![f.path("sample.txt"), f.path("sample.txt.manifest.json")],
        ),
    ]
}
