//! Scalar statistics: rank correlations, Welch's t-test and quintile
//! overlap between rankings.

mod correlation;
mod quintile;
mod special;
mod welch;

pub use correlation::{average_ranks, kendall_tau_b, pearson, spearman, Correlation};
pub use quintile::{quintile_blocks, quintile_fscore, QuintileOverlap};
pub use special::regularized_incomplete_beta;
pub use welch::{t_two_sided_p, welch_t_test, WelchResult};

/// Arithmetic mean; `NaN` for an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance (divides by `n - 1`); `NaN` when `n < 2`.
pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn sample_std(xs: &[f64]) -> f64 {
    sample_variance(xs).sqrt()
}
