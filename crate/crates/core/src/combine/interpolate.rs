use crate::error::{Error, Result};
use crate::scoring::ScoreVector;

pub const DEFAULT_LAMBDA: f64 = 0.5;
pub const LAMBDA_SWEEP: [f64; 5] = [0.25, 0.33, 0.5, 0.67, 0.75];

/// Weights `(λ, 1 - λ)` computed so that the pair for `1 - λ` is the exact
/// mirror image of the pair for `λ`.
///
/// `1 - λ` only rounds when `λ < 0.5`; in that case the weights are derived
/// from the rounded complement, which keeps
/// `interpolate(a, b, λ) == interpolate(b, a, 1 - λ)` bit for bit.
fn weights(lambda: f64) -> (f64, f64) {
    if lambda < 0.5 {
        let mu = 1.0 - lambda;
        (1.0 - mu, mu)
    } else {
        (lambda, 1.0 - lambda)
    }
}

/// Per-pair `λ s1 + (1 - λ) s2`. Both vectors must cover the same pairs;
/// the output follows the pair order of `s1`.
pub fn interpolate_scores(s1: &ScoreVector, s2: &ScoreVector, lambda: f64) -> Result<ScoreVector> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
    }
    if s1.sorted_ids() != s2.sorted_ids() {
        return Err(Error::Alignment(format!(
            "`{}` covers {} pairs and `{}` covers {}; interpolation needs identical pair sets",
            s1.provenance(),
            s1.len(),
            s2.provenance(),
            s2.len()
        )));
    }
    let (w1, w2) = weights(lambda);
    let other = s2.values_for(s1.ids())?;
    let values = s1.values().iter().zip(&other).map(|(a, b)| w1 * a + w2 * b).collect();
    ScoreVector::new(
        format!("li({}, {}; {lambda})", s1.provenance(), s2.provenance()),
        s1.ids().to_vec(),
        values,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(name: &str, values: &[f64]) -> ScoreVector {
        ScoreVector::new(name, (0..values.len()).collect(), values.to_vec()).unwrap()
    }

    #[test]
    fn endpoints_and_midpoint() {
        let a = sv("a", &[0.2, -0.4, 0.9]);
        let b = sv("b", &[0.6, 0.1, 0.3]);
        assert_eq!(interpolate_scores(&a, &b, 1.0).unwrap().values(), a.values());
        assert_eq!(interpolate_scores(&a, &b, 0.0).unwrap().values(), b.values());
        let mid = interpolate_scores(&a, &b, 0.5).unwrap();
        assert!((mid.values()[0] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn sweep_is_monotone_between_endpoints() {
        let a = sv("a", &[0.2, -0.4, 0.9, 0.0]);
        let b = sv("b", &[0.6, 0.1, 0.3, 0.0]);
        let curves: Vec<ScoreVector> = LAMBDA_SWEEP.iter().map(|&l| interpolate_scores(&a, &b, l).unwrap()).collect();
        for p in 0..4 {
            let (lo, hi) = (a.values()[p].min(b.values()[p]), a.values()[p].max(b.values()[p]));
            let vals: Vec<f64> = curves.iter().map(|c| c.values()[p]).collect();
            assert!(vals.iter().all(|v| (lo..=hi).contains(v)));
            // moving weight towards `a` moves the score towards a's value
            let towards_a = a.values()[p] >= b.values()[p];
            assert!(vals.windows(2).all(|w| if towards_a { w[0] <= w[1] } else { w[0] >= w[1] }));
        }
    }

    #[test]
    fn argument_checks() {
        let a = sv("a", &[0.2, 0.4]);
        let b = sv("b", &[0.6]);
        assert!(matches!(interpolate_scores(&a, &b, 0.5), Err(Error::Alignment(_))));
        assert!(matches!(interpolate_scores(&a, &a, 1.5), Err(Error::InvalidArgument(_))));
        assert!(interpolate_scores(&a, &a, -0.1).is_err());
    }

    #[test]
    fn different_pair_order_is_aligned_by_index() {
        let a = ScoreVector::new("a", vec![0, 1], vec![1.0, 0.0]).unwrap();
        let b = ScoreVector::new("b", vec![1, 0], vec![0.5, 0.25]).unwrap();
        let out = interpolate_scores(&a, &b, 0.5).unwrap();
        assert_eq!(out.values(), &[0.625, 0.25]);
    }

    proptest::proptest! {
        #[test]
        fn swapping_mirrors_lambda(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..40),
            lambda in 0.0f64..=1.0,
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = values.into_iter().unzip();
            let (a, b) = (sv("a", &x), sv("b", &y));
            let forward = interpolate_scores(&a, &b, lambda).unwrap();
            let backward = interpolate_scores(&b, &a, 1.0 - lambda).unwrap();
            proptest::prop_assert_eq!(forward.values(), backward.values());
        }

        #[test]
        fn spearman_ignores_common_rescaling(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 3..40),
            scale in 0.01f64..100.0,
        ) {
            let x: Vec<f64> = values.iter().map(|v| v.0).collect();
            let y: Vec<f64> = values.iter().map(|v| v.1).collect();
            let reference: Vec<f64> = values.iter().map(|v| v.2).collect();
            let base = interpolate_scores(&sv("a", &x), &sv("b", &y), 0.5).unwrap();
            let scaled = interpolate_scores(
                &sv("a", &x.iter().map(|v| v * scale).collect::<Vec<_>>()),
                &sv("b", &y.iter().map(|v| v * scale).collect::<Vec<_>>()),
                0.5,
            ).unwrap();
            if let (Ok(r1), Ok(r2)) = (
                crate::stats::spearman(base.values(), &reference),
                crate::stats::spearman(scaled.values(), &reference),
            ) {
                proptest::prop_assert!((r1 - r2).abs() < 1e-12);
            }
        }
    }
}
