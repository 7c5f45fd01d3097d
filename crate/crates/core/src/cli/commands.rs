use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use log::info;

use super::manifest::{write_report, RunManifest};
use super::*;
use crate::agreement::{
    agreement_table, cross_language_agreement, model_quintiles, quintile_agreement_analysis, read_raw_scores,
    read_screening, run_qc, significance_matrix, within_language_agreement, write_exclusion_log, AgreementReport,
    EvaluationSet, OutlierMode, QcConfig, QuintileCurve,
};
use crate::bow::{build_bow_model, BowConfig};
use crate::combine::{
    fit_cca_tables, interpolate_scores, monolingual_baseline, project_concat, save_cca_model, self_lexicon,
    BaselineConfig, CcaOptions, Combiner, ProjectOptions, ProjectionMode, TranslationLexicon,
};
use crate::corpus::{
    sample_corpus, tokenize_corpus_with, Cleaner, Corpus, IdentityStemmer, SnowballStemmer, Stemmer, StopWords,
    TextMode,
};
use crate::coverage::vocabulary_coverage;
use crate::error::{Error, Result};
use crate::scoring::{
    correlate_scores, read_pair_list, read_scores_tsv, score_pairs, write_scores_tsv, OovPolicy, PairId, ScoreVector,
    WordPairList,
};
use crate::stats::Correlation;
use crate::vectors::{save_vectors, VectorTable};

pub(super) fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::BuildBow(a) => build_bow(&a),
        Command::Score(a) => score(&a),
        Command::Eval(a) => eval(&a),
        Command::Agree(a) => agree(&a),
        Command::Quintiles(a) => quintiles(&a),
        Command::Combine(a) => combine(&a),
        Command::Qc(a) => qc(&a),
        Command::Coverage(a) => coverage(&a),
        Command::Baseline(a) => baseline(&a),
        Command::Sample(a) => sample(&a),
    }
}

impl From<TextModeArg> for TextMode {
    fn from(m: TextModeArg) -> Self {
        match m {
            TextModeArg::Document => TextMode::Document,
            TextModeArg::Lines => TextMode::Lines,
        }
    }
}

impl From<CorrelationArg> for Correlation {
    fn from(c: CorrelationArg) -> Self {
        match c {
            CorrelationArg::Spearman => Correlation::Spearman,
            CorrelationArg::Pearson => Correlation::Pearson,
            CorrelationArg::Kendall => Correlation::Kendall,
        }
    }
}

fn cleaner(opts: &CorpusOpts) -> Cleaner {
    let stopwords = if opts.no_stopwords {
        StopWords::none()
    } else {
        StopWords::nltk(&opts.lang).unwrap_or_default()
    };
    let stemmer: Box<dyn Stemmer> = match SnowballStemmer::for_language(&opts.lang) {
        Some(s) if !opts.no_stem => Box::new(s),
        _ => Box::new(IdentityStemmer),
    };
    Cleaner::new(stopwords, stemmer)
}

fn read_corpus(m: &mut RunManifest, path: &Path, lang: &str, mode: TextModeArg) -> Result<Corpus> {
    let raw = m.read_input("corpus", path)?;
    tokenize_corpus_with(&raw, lang, mode.into()).map_err(|e| e.with_path(path))
}

fn read_table(m: &mut RunManifest, lp: &LangPath) -> Result<VectorTable> {
    let bytes = m.read_input("vectors", &lp.path)?;
    VectorTable::read_text(&bytes[..], lp.lang.as_str()).map_err(|e| e.with_path(&lp.path))
}

fn read_set(m: &mut RunManifest, lp: &LangPath, dataset: &str) -> Result<EvaluationSet> {
    let bytes = m.read_input("evalset", &lp.path)?;
    EvaluationSet::read_tsv(&bytes[..], lp.lang.as_str(), dataset).map_err(|e| e.with_path(&lp.path))
}

fn read_scores(m: &mut RunManifest, path: &Path, provenance: &str) -> Result<ScoreVector> {
    let bytes = m.read_input("scores", path)?;
    read_scores_tsv(&bytes[..], provenance).map_err(|e| e.with_path(path))
}

fn read_sets(m: &mut RunManifest, lps: &[LangPath], dataset: &str) -> Result<Vec<EvaluationSet>> {
    lps.iter().map(|lp| read_set(m, lp, dataset)).collect()
}

fn set_for<'a>(sets: &'a [EvaluationSet], lang: &str) -> Result<&'a EvaluationSet> {
    sets.iter()
        .find(|s| s.language().as_str() == lang)
        .ok_or_else(|| Error::InvalidArgument(format!("no --evalset given for language `{lang}`")))
}

/// One word per line, or the words of a pair TSV.
fn parse_targets(bytes: &[u8], path: &Path) -> Result<Vec<String>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode { offset: e.valid_up_to() })?;
    let first = text.lines().find(|l| !l.starts_with('#') && !l.trim().is_empty());
    if first.is_some_and(|l| l.starts_with("pair_index\t")) {
        return Ok(read_pair_list(bytes, "targets").map_err(|e| e.with_path(path))?.words());
    }
    let mut seen = BTreeSet::new();
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter(|l| seen.insert(l.to_string()))
        .map(str::to_owned)
        .collect())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn build_bow(a: &BuildBowArgs) -> Result<()> {
    let mut m = RunManifest::new("build-bow", a);
    let corpus = read_corpus(&mut m, &a.corpus.corpus, &a.corpus.lang, a.corpus.text_mode)?;
    let target_bytes = m.read_input("targets", &a.targets)?;
    let targets = parse_targets(&target_bytes, &a.targets)?;
    let cleaner = cleaner(&a.corpus);
    let cleaned = cleaner.clean(&corpus);
    info!("{} sentences, {} tokens after cleaning", cleaned.sentence_count(), cleaned.token_count());
    let config = BowConfig {
        context_words: a.bow.context_words,
        window: a.bow.window,
    };
    let model = build_bow_model(&cleaned, &targets, &cleaner, config)?;
    m.record("rows", model.table.len());
    m.record("context_words", model.matrix.cols());
    m.record("cooccurrence_total", model.matrix.total());
    m.record("missing_targets", &model.missing);
    save_vectors(&model.table, &a.out)?;
    m.write_sidecar(&a.out)
}

fn score(a: &ScoreArgs) -> Result<()> {
    let mut m = RunManifest::new("score", a);
    let table = read_table(&mut m, &LangPath { lang: a.lang.clone(), path: a.vectors.clone() })?;
    let bytes = m.read_input("pairs", &a.pairs)?;
    let pairs = read_pair_list(&bytes[..], a.lang.as_str()).map_err(|e| e.with_path(&a.pairs))?;
    let policy = match a.oov {
        OovArg::Skip => OovPolicy::Skip,
        OovArg::Error => OovPolicy::Error,
    };
    let scored = score_pairs(&table, &pairs, policy)?;
    m.record("scored", scored.scores.len());
    m.record("skipped", scored.skipped.len());
    m.record("zero_norm", &scored.degenerate);
    write_report(a.out.as_deref(), &m, |w| write_scores_tsv(w, &pairs, &scored))
}

enum Source {
    Table(VectorTable),
    Scores(ScoreVector),
}

fn eval(a: &EvalArgs) -> Result<()> {
    if a.models.is_empty() && a.scores.is_empty() {
        return Err(Error::InvalidArgument("give at least one --model or --scores".into()));
    }
    let mut m = RunManifest::new("eval", a);
    let mut sources = Vec::new();
    for lp in &a.models {
        sources.push((lp.lang.clone(), Source::Table(read_table(&mut m, lp)?)));
    }
    for lp in &a.scores {
        sources.push((lp.lang.clone(), Source::Scores(read_scores(&mut m, &lp.path, &lp.to_string())?)));
    }
    let sets = read_sets(&mut m, &a.evalsets, &a.dataset)?;
    let lists: Vec<&WordPairList> = sets.iter().map(|s| s.pairs()).collect();
    let tables: Vec<&VectorTable> = sources
        .iter()
        .filter_map(|(_, s)| match s {
            Source::Table(t) => Some(t),
            Source::Scores(_) => None,
        })
        .collect();
    let report = vocabulary_coverage(&tables, &lists)?;
    let mut covered: Vec<PairId> = report.covered.clone();
    for (_, s) in &sources {
        if let Source::Scores(sv) = s {
            covered.retain(|id| sv.get(*id).is_some());
        }
    }
    let total = report.pair_ids.len();
    let correlation: Correlation = a.correlation.into();

    let mut rows = Vec::new();
    for (lang, source) in &sources {
        let scores = match source {
            Source::Table(t) => {
                let pairs = set_for(&sets, lang)?.pairs().restrict(&covered);
                score_pairs(t, &pairs, OovPolicy::Error)?.scores
            }
            Source::Scores(sv) => sv.restrict(&covered)?,
        };
        for set in &sets {
            let (rho, n) = correlate_scores(&scores, &set.human_means(), correlation)?;
            rows.push((lang.clone(), set.language().to_string(), n, rho));
        }
    }
    m.record("pairs_total", total);
    m.record("pairs_covered", covered.len());
    write_report(a.out.as_deref(), &m, |w| {
        writeln!(w, "training_language\tjudgment_language\tpairs\texcluded\tcorrelation\tvalue")?;
        for (tl, jl, n, rho) in &rows {
            writeln!(w, "{tl}\t{jl}\t{n}\t{}\t{correlation}\t{rho}", total - n)?;
        }
        Ok(())
    })
}

fn write_agreement_rows(w: &mut dyn Write, kind: &str, reports: &[AgreementReport]) -> std::io::Result<()> {
    for r in reports {
        writeln!(w, "{}\t{kind}\t{}\t{}\t{}\t{}", r.label, r.sample_count(), r.failed, r.mean, r.std)?;
    }
    Ok(())
}

fn agree(a: &AgreeArgs) -> Result<()> {
    let mut m = RunManifest::new("agree", a);
    let sets = read_sets(&mut m, &a.evalsets, &a.dataset)?;
    let k = a.subset_size;
    let (within, cross) = match a.mode {
        AgreeMode::Within => (
            sets.iter().map(|s| within_language_agreement(s, k)).collect::<Result<Vec<_>>>()?,
            Vec::new(),
        ),
        AgreeMode::Cross | AgreeMode::Both => {
            if sets.len() < 2 {
                return Err(Error::InvalidArgument("cross-language agreement needs two or more --evalset".into()));
            }
            if a.mode == AgreeMode::Both {
                let t = agreement_table(&sets, k)?;
                (t.within, t.cross)
            } else {
                let mut cross = Vec::new();
                for i in 0..sets.len() {
                    for j in i + 1..sets.len() {
                        cross.push(cross_language_agreement(&sets[i], &sets[j], k)?);
                    }
                }
                (Vec::new(), cross)
            }
        }
    };
    let samples: usize = within.iter().chain(&cross).map(|r| r.sample_count()).sum();
    m.record("samples", samples);

    if let Some(path) = &a.samples {
        write_report(Some(path), &m, |w| {
            writeln!(w, "cell\tbatch\tsubset\trho")?;
            for r in within.iter().chain(&cross) {
                r.write_samples(&mut *w)?;
            }
            Ok(())
        })?;
    }
    if let Some(path) = &a.significance {
        if within.is_empty() || cross.is_empty() {
            return Err(Error::InvalidArgument("significance needs --mode both".into()));
        }
        let rows = significance_matrix(&within, &cross)?;
        write_report(Some(path), &m, |w| {
            writeln!(w, "within\tcross\tt\tdf\tp")?;
            for r in &rows {
                writeln!(
                    w,
                    "{}\t{}\t{}\t{}\t{}",
                    r.within, r.cross, r.result.t_statistic, r.result.degrees_of_freedom, r.result.p_value
                )?;
            }
            Ok(())
        })?;
    }
    write_report(a.out.as_deref(), &m, |w| {
        writeln!(w, "cell\tkind\tsamples\tfailed\tmean\tstd")?;
        write_agreement_rows(w, "within", &within)?;
        write_agreement_rows(w, "cross", &cross)
    })
}

fn quintiles(a: &QuintilesArgs) -> Result<()> {
    let mut m = RunManifest::new("quintiles", a);
    let sets = read_sets(&mut m, &a.evalsets, &a.dataset)?;
    let (k, q) = (a.subset_size, a.quintiles);
    let curves: Vec<QuintileCurve> = match a.mode {
        QuintileMode::Within => sets
            .iter()
            .map(|s| quintile_agreement_analysis(s, None, k, q))
            .collect::<Result<_>>()?,
        QuintileMode::Cross => {
            if sets.len() < 2 {
                return Err(Error::InvalidArgument("cross mode needs two or more --evalset".into()));
            }
            let mut out = Vec::new();
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    out.push(quintile_agreement_analysis(&sets[i], Some(&sets[j]), k, q)?);
                }
            }
            out
        }
        QuintileMode::Model => {
            let path = a
                .scores
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("model mode needs --scores".into()))?;
            if sets.len() != 1 {
                return Err(Error::InvalidArgument("model mode takes exactly one --evalset".into()));
            }
            let model = read_scores(&mut m, path, "model")?;
            vec![model_quintiles(&model, &sets[0], q)?]
        }
    };
    write_report(a.out.as_deref(), &m, |w| {
        writeln!(w, "label\tquintile\tf_score\tcases")?;
        for c in &curves {
            for (i, f) in c.f_scores.iter().enumerate() {
                writeln!(w, "{}\t{}\t{f}\t{}", c.label, i + 1, c.cases)?;
            }
        }
        Ok(())
    })
}

fn combine(a: &CombineArgs) -> Result<()> {
    let mut m = RunManifest::new("combine", a);
    if a.models.len() + a.scores.len() != 2 {
        return Err(Error::InvalidArgument("combine takes exactly two --model or --scores inputs".into()));
    }
    if a.method == CombineMethod::Cca && a.models.len() != 2 {
        return Err(Error::InvalidArgument("cca needs two --model vector tables".into()));
    }
    let sets = read_sets(&mut m, &a.evalsets, &a.dataset)?;
    let inputs: Vec<&LangPath> = a.models.iter().chain(&a.scores).collect();
    let (l1, l2) = (inputs[0].lang.as_str(), inputs[1].lang.as_str());
    let judgment = a.judgment.as_deref().unwrap_or(l1);
    let human = set_for(&sets, judgment)?.human_means();
    let correlation: Correlation = a.correlation.into();

    let tables = a.models.iter().map(|lp| read_table(&mut m, lp)).collect::<Result<Vec<_>>>()?;
    let mut given = Vec::new();
    for lp in &a.scores {
        given.push(read_scores(&mut m, &lp.path, &lp.to_string())?);
    }

    // Pairs every model covers, scored monolingually.
    let lists: Vec<&WordPairList> = dedup_langs(&[l1, l2, judgment])
        .iter()
        .map(|l| set_for(&sets, l).map(|s| s.pairs()))
        .collect::<Result<_>>()?;
    let table_refs: Vec<&VectorTable> = tables.iter().collect();
    let mut covered = vocabulary_coverage(&table_refs, &lists)?.covered;
    for sv in &given {
        covered.retain(|id| sv.get(*id).is_some());
    }
    let mut singles: Vec<ScoreVector> = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let pairs = set_for(&sets, &a.models[i].lang)?.pairs().restrict(&covered);
        singles.push(score_pairs(t, &pairs, OovPolicy::Error)?.scores);
    }
    for sv in &given {
        singles.push(sv.restrict(&covered)?);
    }

    let combined = match a.method {
        CombineMethod::Li => interpolate_scores(&singles[0], &singles[1], a.lambda)?,
        CombineMethod::Cca => {
            let (t1, t2) = (&tables[0], &tables[1]);
            let lexicon = match &a.lexicon {
                Some(path) => {
                    let bytes = m.read_input("lexicon", path)?;
                    let lex = TranslationLexicon::read_tsv(&bytes[..]).map_err(|e| e.with_path(path))?;
                    lex.select(t1.language(), t2.language())?
                }
                None if l1 == l2 => self_lexicon(t1.language(), set_for(&sets, l1)?.pairs().words())?,
                None => TranslationLexicon::from_pair_lists(&[set_for(&sets, l1)?.pairs(), set_for(&sets, l2)?.pairs()])?,
            };
            let lexicon = lexicon.filter_covered(&[t1, t2])?;
            if lexicon.is_empty() {
                return Err(Error::EmptyInput("no lexicon row is covered by both models".into()));
            }
            let options = CcaOptions {
                eps: a.eps,
                components: a.components,
                dim_cap: (!a.no_dim_cap).then_some(a.dim_cap),
                normalize_rows: !a.no_normalize,
            };
            let model = fit_cca_tables(t1, t2, &lexicon, &options)?;
            m.record("lexicon_rows", lexicon.len());
            m.record("cca_components", model.components());
            m.record("cca_correlations", model.correlations());
            let mode = match a.projection {
                ProjectionArg::Concat => ProjectionMode::Concat,
                ProjectionArg::First => ProjectionMode::FirstOnly,
                ProjectionArg::Second => ProjectionMode::SecondOnly,
            };
            let joined = project_concat(t1, t2, &lexicon, &model, ProjectOptions { mode, half_norm: a.half_norm })?;
            if let Some(path) = &a.vectors_out {
                save_vectors(&joined.table, path)?;
                m.write_sidecar(path)?;
            }
            if let Some(path) = &a.model_out {
                save_cca_model(&model, path)?;
                m.write_sidecar(path)?;
            }
            let pairs = set_for(&sets, l1)?.pairs().restrict(&covered);
            let scores = score_pairs(&joined.table, &pairs, OovPolicy::Skip)?.scores;
            let kept: Vec<PairId> = scores.ids().to_vec();
            singles = singles.iter().map(|s| s.restrict(&kept)).collect::<Result<_>>()?;
            scores
        }
    };

    let mut rows = Vec::new();
    for (name, sv) in [("model1", &singles[0]), ("model2", &singles[1]), ("combined", &combined)] {
        let (rho, n) = correlate_scores(sv, &human, correlation)?;
        rows.push((name, n, rho));
    }
    m.record("pairs", combined.len());
    if let Some(path) = &a.scores_out {
        let pairs = set_for(&sets, l1)?.pairs().clone();
        let scored = crate::scoring::PairScores {
            scores: combined.clone(),
            skipped: Vec::new(),
            degenerate: Vec::new(),
        };
        write_report(Some(path), &m, |w| write_scores_tsv(w, &pairs, &scored))?;
    }
    let labels = [l1.to_owned(), l2.to_owned(), format!("{l1}+{l2}")];
    write_report(a.out.as_deref(), &m, |w| {
        writeln!(w, "source\tlanguage\tjudgment_language\tpairs\tcorrelation\tvalue")?;
        for ((name, n, rho), label) in rows.iter().zip(&labels) {
            writeln!(w, "{name}\t{label}\t{judgment}\t{n}\t{correlation}\t{rho}")?;
        }
        Ok(())
    })
}

fn dedup_langs<'a>(langs: &[&'a str]) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for l in langs {
        if !out.contains(l) {
            out.push(l);
        }
    }
    out
}

fn qc(a: &QcArgs) -> Result<()> {
    let mut m = RunManifest::new("qc", a);
    let bytes = m.read_input("raw", &a.raw)?;
    let raw = read_raw_scores(&bytes[..]).map_err(|e| e.with_path(&a.raw))?;
    let screening = match &a.screening {
        Some(path) => {
            let bytes = m.read_input("screening", path)?;
            read_screening(&bytes[..]).map_err(|e| e.with_path(path))?
        }
        None => Vec::new(),
    };
    let config = QcConfig {
        threshold: a.threshold,
        mode: match a.mode {
            QcModeArg::Single => OutlierMode::SinglePass,
            QcModeArg::Fixpoint => OutlierMode::Fixpoint,
        },
        annotators_per_batch: a.annotators,
        ..QcConfig::default()
    };
    let outcome = run_qc(&a.dataset, a.lang.as_str(), &raw, &screening, &config)?;
    m.record("pairs", outcome.set.len());
    m.record("exclusions", outcome.log.len());
    if let Some(path) = &a.log {
        write_report(Some(path), &m, |w| write_exclusion_log(w, &outcome.log))?;
    }
    write_report(a.out.as_deref(), &m, |w| outcome.set.write_tsv(w))
}

fn coverage(a: &CoverageArgs) -> Result<()> {
    let mut m = RunManifest::new("coverage", a);
    let tables = a.models.iter().map(|lp| read_table(&mut m, lp)).collect::<Result<Vec<_>>>()?;
    let mut lists = Vec::new();
    for lp in &a.evalsets {
        let bytes = m.read_input("pairs", &lp.path)?;
        lists.push(read_pair_list(&bytes[..], lp.lang.as_str()).map_err(|e| e.with_path(&lp.path))?);
    }
    let table_refs: Vec<&VectorTable> = tables.iter().collect();
    let list_refs: Vec<&WordPairList> = lists.iter().collect();
    let report = vocabulary_coverage(&table_refs, &list_refs)?;
    m.record("pairs", report.pair_ids.len());
    m.record("covered", report.covered.len());
    m.record("excluded", report.excluded.len());
    write_report(a.out.as_deref(), &m, |w| report.write_tsv(w, &lists[0]))
}

fn baseline(a: &BaselineArgs) -> Result<()> {
    let mut m = RunManifest::new("baseline", a);
    let corpus = read_corpus(&mut m, &a.corpus.corpus, &a.corpus.lang, a.corpus.text_mode)?;
    let set = read_set(&mut m, &LangPath { lang: a.corpus.lang.clone(), path: a.evalset.clone() }, "dataset")?;
    let cleaner = cleaner(&a.corpus);
    let cleaned = cleaner.clean(&corpus);
    let targets = set.pairs().words();
    let config = BowConfig {
        context_words: a.bow.context_words,
        window: a.bow.window,
    };
    let build = |c: &Corpus| Ok(build_bow_model(c, &targets, &cleaner, config)?.table);
    let combiner = match a.method {
        CombineMethod::Li => Combiner::li(),
        CombineMethod::Cca => Combiner::cca(),
    };
    let baseline = BaselineConfig {
        combiner,
        fraction: a.fraction,
        reps: a.reps,
        seed: a.seed,
        correlation: a.correlation.into(),
    };
    let report = monolingual_baseline(&cleaned, build, set.pairs(), &set.human_means(), &baseline)?;
    m.record("mean", report.mean());
    m.record("failed", report.failed());
    write_report(a.out.as_deref(), &m, |w| {
        writeln!(w, "rep\tseed_1\tseed_2\tstatus\tpairs\tvalue")?;
        for r in &report.repetitions {
            match &r.outcome {
                Ok((rho, n)) => writeln!(w, "{}\t{}\t{}\tok\t{n}\t{rho}", r.rep, r.seeds.0, r.seeds.1)?,
                Err(msg) => writeln!(w, "{}\t{}\t{}\tfailed: {msg}\t0\tNaN", r.rep, r.seeds.0, r.seeds.1)?,
            }
        }
        Ok(())
    })
}

fn sample(a: &SampleArgs) -> Result<()> {
    let mut m = RunManifest::new("sample", a);
    let corpus = read_corpus(&mut m, &a.corpus, &a.lang, a.text_mode)?;
    let sampled = sample_corpus(&corpus, a.fraction, a.seed)?;
    m.record("sentences", sampled.sentence_count());
    m.record("tokens", sampled.token_count());
    let mut buf = Vec::new();
    sampled.write_tokenized(&mut buf).expect("write to memory");
    write_file(&a.out, &buf)?;
    m.write_sidecar(&a.out)
}
