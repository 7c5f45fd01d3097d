//! Regularized canonical correlation analysis.
//!
//! Both views are centered and reduced to their principal directions by a
//! thin SVD, `Xc = U S Vᵀ`. With `σ² = s² / (n - 1)` the regularized
//! whitening of `X` in that basis is `diag((σ² + ε)^-1/2)`, so the
//! whitened cross-covariance is
//!
//! ```text
//! M = diag(σx / sqrt(σx² + ε)) Uxᵀ Uy diag(σy / sqrt(σy² + ε))
//! ```
//!
//! Its singular values are the canonical correlations and its singular
//! vectors give the projections `A = Vx diag((σx² + ε)^-1/2) P`. Working in
//! data space keeps the cost at `O(n² d)` even when `d` is 10000 PPMI
//! columns. Directions with zero variance are dropped; they cannot carry
//! correlation.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::vectors::VectorTable;

use super::lexicon::TranslationLexicon;

pub const DEFAULT_EPS: f64 = 1e-8;
pub const DEFAULT_DIM_CAP: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcaOptions {
    /// Added to the diagonal of both covariance matrices.
    pub eps: f64,
    /// Number of canonical pairs to keep; `None` keeps all.
    pub components: Option<usize>,
    /// Keep at most this many principal directions per view before CCA.
    /// The effective cap is `min(n - 1, cap)`. `None` keeps the full rank.
    pub dim_cap: Option<usize>,
    /// Scale every input row to unit length before fitting and projecting.
    pub normalize_rows: bool,
}

impl Default for CcaOptions {
    fn default() -> Self {
        CcaOptions {
            eps: DEFAULT_EPS,
            components: None,
            dim_cap: None,
            normalize_rows: false,
        }
    }
}

impl CcaOptions {
    /// Defaults for vector tables: row normalization and the dimension cap.
    pub fn for_tables() -> Self {
        CcaOptions {
            dim_cap: Some(DEFAULT_DIM_CAP),
            normalize_rows: true,
            ..CcaOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcaModel {
    languages: (Language, Language),
    mean_1: DVector<f64>,
    mean_2: DVector<f64>,
    projection_1: DMatrix<f64>,
    projection_2: DMatrix<f64>,
    correlations: Vec<f64>,
    eps: f64,
    normalize_rows: bool,
}

struct View {
    mean: DVector<f64>,
    u: DMatrix<f64>,
    v: DMatrix<f64>,
    sigma2: Vec<f64>,
}

fn reduce(x: &DMatrix<f64>, cap: Option<usize>) -> Result<View> {
    let n = x.nrows();
    let mean = x.row_mean().transpose();
    let mut centered = x.clone();
    for mut row in centered.row_iter_mut() {
        row -= mean.transpose();
    }
    let svd = centered.svd(true, true);
    let (u, v_t) = (svd.u.expect("requested U"), svd.v_t.expect("requested Vᵀ"));
    let s = &svd.singular_values;

    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
    let smax = order.first().map_or(0.0, |&i| s[i]);
    let tol = smax * (n.max(x.ncols()) as f64) * f64::EPSILON;
    let mut keep: Vec<usize> = order.into_iter().filter(|&i| s[i] > tol && s[i] > 0.0).collect();
    if let Some(cap) = cap {
        keep.truncate(cap.min(n - 1).max(1));
    }
    if keep.is_empty() {
        return Err(Error::Degenerate("input matrix has rank 0 after centering".into()));
    }
    let u = DMatrix::from_fn(n, keep.len(), |r, c| u[(r, keep[c])]);
    let v = DMatrix::from_fn(x.ncols(), keep.len(), |r, c| v_t[(keep[c], r)]);
    let sigma2 = keep.iter().map(|&i| s[i] * s[i] / (n as f64 - 1.0)).collect();
    Ok(View { mean, u, v, sigma2 })
}

/// Fit CCA on row-aligned matrices. Returns the model with languages
/// `("x", "y")`; use [`fit_cca_tables`] for labelled tables.
pub fn fit_cca(x: &DMatrix<f64>, y: &DMatrix<f64>, options: &CcaOptions) -> Result<CcaModel> {
    fit_labelled(x, y, options, ("x".into(), "y".into()))
}

fn fit_labelled(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    options: &CcaOptions,
    languages: (Language, Language),
) -> Result<CcaModel> {
    let n = x.nrows();
    if y.nrows() != n {
        return Err(Error::Alignment(format!("{} rows in X but {} in Y", n, y.nrows())));
    }
    if n < 2 {
        return Err(Error::Degenerate(format!("CCA needs at least 2 aligned rows, got {n}")));
    }
    if x.ncols() == 0 || y.ncols() == 0 {
        return Err(Error::Degenerate("CCA input has no columns".into()));
    }
    if !(options.eps >= 0.0 && options.eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("regularization {} must be >= 0", options.eps)));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Validation("CCA input contains non-finite values".into()));
    }
    let (x, y) = if options.normalize_rows {
        (normalize_rows(x), normalize_rows(y))
    } else {
        (x.clone(), y.clone())
    };
    let vx = reduce(&x, options.dim_cap)?;
    let vy = reduce(&y, options.dim_cap)?;
    let eps = options.eps;

    let shrink = |s2: &[f64]| -> Vec<f64> { s2.iter().map(|&v| (v / (v + eps)).sqrt()).collect() };
    let (ax, ay) = (shrink(&vx.sigma2), shrink(&vy.sigma2));
    let mut core = vx.u.transpose() * &vy.u;
    for r in 0..core.nrows() {
        for c in 0..core.ncols() {
            core[(r, c)] *= ax[r] * ay[c];
        }
    }
    let svd = core.svd(true, true);
    let (p, q_t) = (svd.u.expect("requested U"), svd.v_t.expect("requested Vᵀ"));
    let s = &svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));

    let available = vx.sigma2.len().min(vy.sigma2.len());
    let m = options.components.map_or(available, |c| c.min(available));
    if m == 0 {
        return Err(Error::InvalidArgument("components must be at least 1".into()));
    }
    let order = &order[..m];
    let correlations = order.iter().map(|&i| s[i].clamp(0.0, 1.0)).collect();

    let project = |view: &View, basis: &dyn Fn(usize, usize) -> f64| -> DMatrix<f64> {
        let k = view.sigma2.len();
        let scaled = DMatrix::from_fn(k, m, |r, c| basis(r, order[c]) / (view.sigma2[r] + eps).sqrt());
        &view.v * scaled
    };
    let projection_1 = project(&vx, &|r, c| p[(r, c)]);
    let projection_2 = project(&vy, &|r, c| q_t[(c, r)]);

    Ok(CcaModel {
        languages,
        mean_1: vx.mean,
        mean_2: vy.mean,
        projection_1,
        projection_2,
        correlations,
        eps,
        normalize_rows: options.normalize_rows,
    })
}

fn normalize_rows(x: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = x.clone();
    for mut row in out.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    out
}

/// Stack the table vectors of one lexicon column into a matrix.
pub fn lexicon_matrix(table: &VectorTable, words: &[&str]) -> Result<DMatrix<f64>> {
    let d = table.dimension();
    let mut data = Vec::with_capacity(words.len() * d);
    for (row, w) in words.iter().enumerate() {
        let v = crate::scoring::lookup(table, w).ok_or_else(|| Error::Lookup {
            word: (*w).to_owned(),
            context: format!("lexicon row {row}, language `{}`", table.language()),
        })?;
        data.extend_from_slice(v);
    }
    Ok(DMatrix::from_row_slice(words.len(), d, &data))
}

/// Fit on the lexicon rows. The lexicon columns are taken in the order of
/// the table languages; rows with a word missing from either table must be
/// filtered out beforehand.
pub fn fit_cca_tables(
    t1: &VectorTable,
    t2: &VectorTable,
    lexicon: &TranslationLexicon,
    options: &CcaOptions,
) -> Result<CcaModel> {
    let (w1, w2) = lexicon_columns(t1, t2, lexicon)?;
    let x = lexicon_matrix(t1, &w1)?;
    let y = lexicon_matrix(t2, &w2)?;
    log::info!(
        "fitting CCA on {} aligned rows ({} x {} dims)",
        lexicon.len(),
        t1.dimension(),
        t2.dimension()
    );
    fit_labelled(&x, &y, options, (t1.language().clone(), t2.language().clone()))
}

pub(crate) fn lexicon_columns<'a>(
    t1: &VectorTable,
    t2: &VectorTable,
    lexicon: &'a TranslationLexicon,
) -> Result<(Vec<&'a str>, Vec<&'a str>)> {
    if t1.language() == t2.language() {
        if lexicon.languages().len() != 2 {
            return Err(Error::Alignment("same-language combination needs a two-column lexicon".into()));
        }
        let col = |c: usize| lexicon.rows().iter().map(|r| r[c].as_str()).collect();
        return Ok((col(0), col(1)));
    }
    Ok((lexicon.column(t1.language())?, lexicon.column(t2.language())?))
}

impl CcaModel {
    /// Assemble a model from explicit parts, e.g. an identity fixture.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        languages: (Language, Language),
        mean_1: Vec<f64>,
        mean_2: Vec<f64>,
        projection_1: DMatrix<f64>,
        projection_2: DMatrix<f64>,
        correlations: Vec<f64>,
        eps: f64,
        normalize_rows: bool,
    ) -> Result<Self> {
        let m = correlations.len();
        if projection_1.ncols() != m || projection_2.ncols() != m {
            return Err(Error::Validation(format!(
                "projections have {} and {} columns for {m} correlations",
                projection_1.ncols(),
                projection_2.ncols()
            )));
        }
        if mean_1.len() != projection_1.nrows() || mean_2.len() != projection_2.nrows() {
            return Err(Error::Validation("mean length does not match projection rows".into()));
        }
        if correlations.iter().any(|c| !(0.0..=1.0).contains(c)) || correlations.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Validation("correlations must be non-increasing within [0, 1]".into()));
        }
        Ok(CcaModel {
            languages,
            mean_1: DVector::from_vec(mean_1),
            mean_2: DVector::from_vec(mean_2),
            projection_1,
            projection_2,
            correlations,
            eps,
            normalize_rows,
        })
    }

    pub fn languages(&self) -> (&Language, &Language) {
        (&self.languages.0, &self.languages.1)
    }

    pub fn with_languages(mut self, l1: impl Into<Language>, l2: impl Into<Language>) -> Self {
        self.languages = (l1.into(), l2.into());
        self
    }

    pub fn correlations(&self) -> &[f64] {
        &self.correlations
    }

    pub fn components(&self) -> usize {
        self.correlations.len()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn normalize_rows(&self) -> bool {
        self.normalize_rows
    }

    pub fn projection_1(&self) -> &DMatrix<f64> {
        &self.projection_1
    }

    pub fn projection_2(&self) -> &DMatrix<f64> {
        &self.projection_2
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.projection_1.nrows(), self.projection_2.nrows())
    }

    /// Center and project one vector of the first (`side == 0`) or second
    /// view.
    pub fn project(&self, side: usize, v: &[f64]) -> Result<Vec<f64>> {
        let (mean, proj) = match side {
            0 => (&self.mean_1, &self.projection_1),
            1 => (&self.mean_2, &self.projection_2),
            _ => return Err(Error::InvalidArgument(format!("view {side} does not exist"))),
        };
        if v.len() != mean.len() {
            return Err(Error::Validation(format!(
                "vector of dimension {} for a view of dimension {}",
                v.len(),
                mean.len()
            )));
        }
        let norm = if self.normalize_rows {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.0 { n } else { 1.0 }
        } else {
            1.0
        };
        let m = proj.ncols();
        let mut out = vec![0.0; m];
        for (r, (&x, &mu)) in v.iter().zip(mean.iter()).enumerate() {
            let c = x / norm - mu;
            if c != 0.0 {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += c * proj[(r, k)];
                }
            }
        }
        Ok(out)
    }

    /// Project all rows of a matrix of one view.
    pub fn transform(&self, side: usize, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let m = self.components();
        let mut out = DMatrix::zeros(x.nrows(), m);
        for r in 0..x.nrows() {
            let row: Vec<f64> = x.row(r).iter().copied().collect();
            let p = self.project(side, &row)?;
            for k in 0..m {
                out[(r, k)] = p[k];
            }
        }
        Ok(out)
    }

    /// Text dump: header `l1 l2 d1 d2 m eps`, then `normalize`,
    /// `correlations`, the two means, and the rows of both projections.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        let (d1, d2) = self.dims();
        writeln!(
            out,
            "{} {} {d1} {d2} {} {}",
            self.languages.0,
            self.languages.1,
            self.components(),
            self.eps
        )?;
        writeln!(out, "normalize {}", u8::from(self.normalize_rows))?;
        write_labelled(&mut out, "correlations", self.correlations.iter())?;
        write_labelled(&mut out, "mean1", self.mean_1.iter())?;
        write_labelled(&mut out, "mean2", self.mean_2.iter())?;
        for proj in [&self.projection_1, &self.projection_2] {
            for r in 0..proj.nrows() {
                let row: Vec<String> = proj.row(r).iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate().map(|(i, l)| {
            l.map(|s| (i + 1, s)).map_err(|e| Error::format(i + 1, e.to_string()))
        });
        let mut next = |what: &str| -> Result<(usize, String)> {
            lines.next().unwrap_or_else(|| Err(Error::format(0, format!("unexpected end of file, expected {what}"))))
        };
        let (lineno, header) = next("header")?;
        let h: Vec<&str> = header.split(' ').collect();
        if h.len() != 6 {
            return Err(Error::format(lineno, "header must be `l1 l2 d1 d2 m eps`"));
        }
        let num = |s: &str| -> Result<usize> {
            s.parse().map_err(|e| Error::format(lineno, format!("bad header field `{s}`: {e}")))
        };
        let (d1, d2, m) = (num(h[2])?, num(h[3])?, num(h[4])?);
        let eps: f64 = h[5]
            .parse()
            .map_err(|e| Error::format(lineno, format!("bad eps `{}`: {e}", h[5])))?;
        let languages = (Language::from(h[0]), Language::from(h[1]));

        let (lineno, norm) = next("normalize line")?;
        let normalize_rows = match norm.as_str() {
            "normalize 0" => false,
            "normalize 1" => true,
            _ => return Err(Error::format(lineno, "expected `normalize 0|1`")),
        };
        let correlations = read_labelled(next("correlations")?, "correlations", m)?;
        let mean_1 = read_labelled(next("mean1")?, "mean1", d1)?;
        let mean_2 = read_labelled(next("mean2")?, "mean2", d2)?;
        let mut read_matrix = |rows: usize| -> Result<DMatrix<f64>> {
            let mut data = Vec::with_capacity(rows * m);
            for _ in 0..rows {
                let (lineno, line) = next("projection row")?;
                let vals = parse_floats(lineno, line.split(' ').filter(|s| !s.is_empty()))?;
                if vals.len() != m {
                    return Err(Error::format(lineno, format!("expected {m} values, found {}", vals.len())));
                }
                data.extend(vals);
            }
            Ok(DMatrix::from_row_slice(rows, m, &data))
        };
        let projection_1 = read_matrix(d1)?;
        let projection_2 = read_matrix(d2)?;
        CcaModel::from_parts(
            languages,
            mean_1,
            mean_2,
            projection_1,
            projection_2,
            correlations,
            eps,
            normalize_rows,
        )
    }
}

fn write_labelled<'a, W: Write>(out: &mut W, label: &str, values: impl Iterator<Item = &'a f64>) -> io::Result<()> {
    write!(out, "{label}")?;
    for v in values {
        write!(out, " {v}")?;
    }
    writeln!(out)
}

fn parse_floats<'a>(lineno: usize, fields: impl Iterator<Item = &'a str>) -> Result<Vec<f64>> {
    fields
        .map(|f| {
            f.parse::<f64>()
                .map_err(|e| Error::format(lineno, format!("bad number `{f}`: {e}")))
        })
        .collect()
}

fn read_labelled((lineno, line): (usize, String), label: &str, len: usize) -> Result<Vec<f64>> {
    let mut fields = line.split(' ');
    if fields.next() != Some(label) {
        return Err(Error::format(lineno, format!("expected `{label}` line")));
    }
    let vals = parse_floats(lineno, fields)?;
    if vals.len() != len {
        return Err(Error::format(lineno, format!("`{label}` has {} values, expected {len}", vals.len())));
    }
    Ok(vals)
}

pub fn save_cca_model(model: &CcaModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    model.write_text(&mut out).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn load_cca_model(path: impl AsRef<Path>) -> Result<CcaModel> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    CcaModel::read_text(BufReader::new(file)).map_err(|e| e.with_path(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, n: usize, d: usize) -> DMatrix<f64> {
        DMatrix::from_fn(n, d, |_, _| rng.random_range(-1.0..1.0))
    }

    fn covariance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
        let n = a.nrows() as f64;
        let ca = a - DMatrix::from_fn(a.nrows(), a.ncols(), |_, c| a.column(c).mean());
        let cb = b - DMatrix::from_fn(b.nrows(), b.ncols(), |_, c| b.column(c).mean());
        ca.transpose() * cb / (n - 1.0)
    }

    /// Square roots of the eigenvalues of
    /// `Cxx⁻¹ Cxy Cyy⁻¹ Cyx` with ε on both diagonals, via Cholesky.
    fn eigen_oracle(x: &DMatrix<f64>, y: &DMatrix<f64>, eps: f64) -> Vec<f64> {
        let cxx = covariance(x, x) + DMatrix::identity(x.ncols(), x.ncols()) * eps;
        let cyy = covariance(y, y) + DMatrix::identity(y.ncols(), y.ncols()) * eps;
        let cxy = covariance(x, y);
        let l = cxx.cholesky().unwrap().l();
        let l_inv = l.clone().try_inverse().unwrap();
        let cyy_inv = cyy.try_inverse().unwrap();
        let k = &l_inv * &cxy * cyy_inv * cxy.transpose() * l_inv.transpose();
        let k = (&k + k.transpose()) * 0.5;
        let mut ev: Vec<f64> = k.symmetric_eigen().eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    #[test]
    fn matches_eigen_oracle_on_40_by_5_and_7() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random(&mut rng, 40, 5);
        let y = random(&mut rng, 40, 7);
        let model = fit_cca(&x, &y, &CcaOptions::default()).unwrap();
        let oracle = eigen_oracle(&x, &y, DEFAULT_EPS);
        assert_eq!(model.components(), 5);
        for (a, b) in model.correlations().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn projected_views_are_uncorrelated_unit_variance_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random(&mut rng, 50, 4);
        let y = random(&mut rng, 50, 6);
        let model = fit_cca(&x, &y, &CcaOptions { eps: 0.0, ..CcaOptions::default() }).unwrap();
        let a = model.transform(0, &x).unwrap();
        let b = model.transform(1, &y).unwrap();
        let caa = covariance(&a, &a);
        let cab = covariance(&a, &b);
        for i in 0..model.components() {
            for j in 0..model.components() {
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((caa[(i, j)] - id).abs() < 1e-9);
                let cor = if i == j { model.correlations()[i] } else { 0.0 };
                assert!((cab[(i, j)] - cor).abs() < 1e-9, "{i} {j}");
            }
        }
    }

    #[test]
    fn self_and_rotated_views_correlate_fully() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // large variance keeps the ε shrinkage σ²/(σ²+ε) below 1e-8
        let x = random(&mut rng, 30, 6) * 10.0;
        let model = fit_cca(&x, &x, &CcaOptions::default()).unwrap();
        assert!(model.correlations().iter().all(|c| (c - 1.0).abs() < 1e-8));

        let q = random(&mut rng, 6, 6).qr().q();
        let model = fit_cca(&x, &(&x * q), &CcaOptions::default()).unwrap();
        assert!(model.correlations().iter().all(|c| (c - 1.0).abs() < 1e-8));
    }

    #[test]
    fn wide_inputs_are_reduced_to_data_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random(&mut rng, 12, 40);
        let y = random(&mut rng, 12, 25);
        let model = fit_cca(&x, &y, &CcaOptions::default()).unwrap();
        assert_eq!(model.components(), 11);
        assert_eq!(model.dims(), (40, 25));
        let capped = fit_cca(&x, &y, &CcaOptions { dim_cap: Some(4), ..CcaOptions::default() }).unwrap();
        assert_eq!(capped.components(), 4);
    }

    #[test]
    fn degenerate_inputs() {
        let x = DMatrix::from_row_slice(1, 2, &[1.0, 2.0]);
        assert!(matches!(fit_cca(&x, &x, &CcaOptions::default()), Err(Error::Degenerate(_))));
        let flat = DMatrix::from_element(5, 3, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = random(&mut rng, 5, 2);
        assert!(matches!(fit_cca(&flat, &y, &CcaOptions::default()), Err(Error::Degenerate(_))));
        assert!(matches!(fit_cca(&y, &random(&mut rng, 4, 2), &CcaOptions::default()), Err(Error::Alignment(_))));
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random(&mut rng, 20, 3);
        let y = random(&mut rng, 20, 4);
        let model = fit_cca(&x, &y, &CcaOptions { components: Some(2), ..CcaOptions::for_tables() })
            .unwrap()
            .with_languages("en", "de");
        let mut buf = Vec::new();
        model.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("en de 3 4 2 0.00000001\n"), "{text}");
        let back = CcaModel::read_text(text.as_bytes()).unwrap();
        assert_eq!(back, model);
    }
}
