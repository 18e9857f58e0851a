use crate::error::{Error, Result};

/// Gini index: half the relative mean absolute difference of `values`.
///
/// Evaluated on the sorted vector, where the double sum of absolute
/// differences collapses to `2 * sum_k (2k - n + 1) * y_(k)`. The result lies
/// in `[0, (n - 1) / n]` and does not depend on input order.
pub fn gini(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Argument("gini of an empty vector".into()));
    }
    if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::Validation(format!(
            "gini input {bad} is not a finite non-negative number"
        )));
    }
    let n = values.len() as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n;
    if mean <= 0.0 {
        return Err(Error::Argument("gini undefined for zero mean".into()));
    }

    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(k, y)| (2.0 * k as f64 - n + 1.0) * y)
        .sum();
    let mean_difference = 2.0 * weighted / (n * n);
    Ok((mean_difference / (2.0 * mean)).max(0.0))
}
