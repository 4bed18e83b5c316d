//! Moment and order-statistic helpers shared by the feature summaries
//! and the ratings reporter.

/// Arithmetic mean. Returns 0.0 for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64;
    (m, var.sqrt())
}

/// Linear-interpolation quantile of a pre-sorted slice (the same method
/// spreadsheets and numpy's default use): index `q * (n - 1)` with
/// fractional interpolation between the surrounding order statistics.
///
/// `sorted` must be non-empty and ascending; `q` is clamped to [0, 1].
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    let q = q.clamp(0.0, 1.0);
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = pos - lo as f64;
        sorted[lo] + (sorted[hi] - sorted[lo]) * frac
    }
}

/// Linear-interpolation quantile of an unsorted slice.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in quantile"));
    quantile_sorted(&sorted, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_std_two_point() {
        let (m, s) = mean_std(&[0.0, 2.0]);
        assert_eq!(m, 1.0);
        assert_eq!(s, 1.0);
    }

    #[test]
    fn mean_std_constant() {
        let (m, s) = mean_std(&[3.5, 3.5, 3.5]);
        assert_eq!(m, 3.5);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn mean_std_matches_two_pass_oracle() {
        // Independent two-pass computation on a fixed pseudo-random series.
        let mut x = 0.5_f64;
        let series: Vec<f64> = (0..64)
            .map(|_| {
                x = (x * 997.0 + 0.1234).fract();
                x * 10.0 - 5.0
            })
            .collect();
        let m_oracle = series.iter().sum::<f64>() / series.len() as f64;
        let var_oracle =
            series.iter().map(|v| (v - m_oracle).powi(2)).sum::<f64>() / series.len() as f64;
        let (m, s) = mean_std(&series);
        assert!((m - m_oracle).abs() < 1e-12);
        assert!((s - var_oracle.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn quantiles_match_sort_and_interpolate_oracle() {
        // Brute-force oracle: sort, then interpolate at q*(n-1) by hand.
        let values = [4.0, 1.0, 7.0, 2.0, 9.0, 3.0, 8.0];
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &(q, _) in &[(0.25, ()), (0.5, ()), (0.75, ()), (0.0, ()), (1.0, ())] {
            let pos = q * (sorted.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let frac = pos - lo as f64;
            let expect = if frac == 0.0 {
                sorted[lo]
            } else {
                sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
            };
            assert!((quantile(&values, q) - expect).abs() < 1e-12, "q={q}");
        }
    }

    #[test]
    fn quantile_five_point() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 0.25), 2.0);
        assert_eq!(quantile(&v, 0.5), 3.0);
        assert_eq!(quantile(&v, 0.75), 4.0);
        assert_eq!(quantile(&v, 1.0), 5.0);
    }
}
