//! Symmetric decreasing rearrangement of uniformly sampled functions.

/// Rearranges uniform cell samples into the equimeasurable even function that
/// decreases away from the interval's center. Each sample stands for one cell
/// of equal width, so level-set measures are preserved exactly at cell
/// granularity.
pub fn sdr(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    if n <= 1 {
        return values.to_vec();
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let center = (n as f64 - 1.0) / 2.0;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let di = (i as f64 - center).abs();
        let dj = (j as f64 - center).abs();
        di.total_cmp(&dj).then(i.cmp(&j))
    });
    let mut out = vec![0.0; n];
    for (rank, &slot) in order.iter().enumerate() {
        out[slot] = sorted[rank];
    }
    out
}
