use crate::error::{Error, Result};
use crate::scoring::Ranking;

/// Relative F-scores between corresponding rank blocks of two rankings.
#[derive(Debug, Clone, PartialEq)]
pub struct QuintileOverlap {
    pub f_scores: Vec<f64>,
    pub block_sizes: Vec<usize>,
}

/// Sizes of `q` contiguous blocks over `n` items; they differ by at most one
/// and the larger blocks come first.
pub fn quintile_blocks(n: usize, q: usize) -> Vec<usize> {
    (0..q).map(|i| n / q + usize::from(i < n % q)).collect()
}

/// Split both rankings into `q` blocks by rank order and compute
/// `2|A_i ∩ B_i| / (|A_i| + |B_i|)` per block. Equal ranks are ordered by
/// ascending pair index.
pub fn quintile_fscore(r1: &Ranking, r2: &Ranking, q: usize) -> Result<QuintileOverlap> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 blocks, got {q}")));
    }
    let mut a = r1.ids().to_vec();
    let mut b = r2.ids().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::Alignment("rankings cover different pair indices".into()));
    }
    let n = a.len();
    if n < q {
        return Err(Error::InvalidArgument(format!("{n} items cannot fill {q} blocks")));
    }
    let block_sizes = quintile_blocks(n, q);

    // block membership by position of the pair index in the sorted id list
    let slot = |id| a.binary_search(&id).expect("same index set");
    let mut block_of = vec![0usize; n];
    let mut start = 0;
    let order1 = r1.ordered_ids();
    for (block, &size) in block_sizes.iter().enumerate() {
        for &id in &order1[start..start + size] {
            block_of[slot(id)] = block;
        }
        start += size;
    }
    let order2 = r2.ordered_ids();
    let mut shared = vec![0usize; q];
    start = 0;
    for (block, &size) in block_sizes.iter().enumerate() {
        shared[block] = order2[start..start + size]
            .iter()
            .filter(|&&id| block_of[slot(id)] == block)
            .count();
        start += size;
    }
    let f_scores = shared
        .iter()
        .zip(&block_sizes)
        .map(|(&s, &size)| 2.0 * s as f64 / (2 * size) as f64)
        .collect();
    Ok(QuintileOverlap {
        f_scores,
        block_sizes,
    })
}
