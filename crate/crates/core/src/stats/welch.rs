use crate::error::{Error, Result};

use super::{mean, regularized_incomplete_beta, sample_variance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchResult {
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    /// Two-sided.
    pub p_value: f64,
}

/// Two-sided tail probability `P(|T| >= |t|)` of Student's t with `df`
/// degrees of freedom.
pub fn t_two_sided_p(t: f64, df: f64) -> f64 {
    assert!(df > 0.0, "degrees of freedom must be positive");
    if t.is_infinite() {
        return 0.0;
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

/// Welch's unequal-variance t-test with Welch–Satterthwaite degrees of
/// freedom.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<WelchResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "Welch's test needs at least 2 observations per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (sample_variance(a) / na, sample_variance(b) / nb);
    if va == 0.0 && vb == 0.0 {
        return Err(Error::Degenerate("both samples have zero variance".into()));
    }
    let se2 = va + vb;
    let t = (mean(a) - mean(b)) / se2.sqrt();
    let df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    Ok(WelchResult {
        t_statistic: t,
        degrees_of_freedom: df,
        p_value: t_two_sided_p(t, df),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn same_sample() {
        let a = [1.0, 4.0, 2.0, 8.0];
        let r = welch_t_test(&a, &a).unwrap();
        assert_eq!(r.t_statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn shifted_by_one() {
        let r = welch_t_test(&[1., 2., 3., 4., 5.], &[2., 3., 4., 5., 6.]).unwrap();
        // var = 2.5 each, se = sqrt(0.5 + 0.5) = 1
        assert_abs_diff_eq!(r.t_statistic, -1.0, epsilon = 1e-15);
        // df = 1 / (2 * 0.25 / 4) = 8
        assert_abs_diff_eq!(r.degrees_of_freedom, 8.0, epsilon = 1e-12);
        assert!(r.p_value > 0.3 && r.p_value < 0.4);
    }

    #[test]
    fn closed_form_df_one_and_two() {
        // df = 1: p = 1 - 2 atan(|t|) / pi ; df = 2: p = 1 - |t| / sqrt(2 + t^2)
        for &t in &[0.1, 1.0, 2.5, 10.0] {
            let cauchy = 1.0 - 2.0 * f64::atan(t) / std::f64::consts::PI;
            assert_abs_diff_eq!(t_two_sided_p(t, 1.0), cauchy, epsilon = 1e-13);
            assert_abs_diff_eq!(t_two_sided_p(-t, 2.0), 1.0 - t / (2.0 + t * t).sqrt(), epsilon = 1e-13);
        }
    }

    #[test]
    fn degenerate_and_short_samples() {
        assert!(matches!(welch_t_test(&[1., 1.], &[2., 2.]), Err(Error::Degenerate(_))));
        assert!(matches!(welch_t_test(&[1.], &[2., 3.]), Err(Error::InvalidArgument(_))));
        // one constant sample is fine
        assert!(welch_t_test(&[1., 1., 1.], &[2., 3., 4.]).is_ok());
    }
}
