//! Principal component analysis with per-feature z-scoring, a cyclic
//! Jacobi eigensolver, and component selection by cumulative explained
//! variance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PcaError {
    #[error("need at least 2 rows to fit (got {0})")]
    TooFewRows(usize),
    #[error("rows have inconsistent widths ({first} vs {other})")]
    RaggedRows { first: usize, other: usize },
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("row width {got} does not match model dimension {expect}")]
    DimensionMismatch { got: usize, expect: usize },
}

/// Result of per-column z-scoring.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub data: Vec<Vec<f64>>,
    pub mean: Vec<f64>,
    /// Per-column population std; 1.0 for flagged constant columns.
    pub scale: Vec<f64>,
    /// True where the column had zero variance and was mapped to zeros.
    pub constant: Vec<bool>,
}

/// Z-scores every column of a stimuli-by-features matrix. Zero-variance
/// columns map to zero with their scale flagged as 1.
pub fn normalize(matrix: &[Vec<f64>]) -> Result<Normalized, PcaError> {
    if matrix.len() < 2 {
        return Err(PcaError::TooFewRows(matrix.len()));
    }
    let d = matrix[0].len();
    for (r, row) in matrix.iter().enumerate() {
        if row.len() != d {
            return Err(PcaError::RaggedRows { first: d, other: row.len() });
        }
        if let Some(col) = row.iter().position(|v| !v.is_finite()) {
            return Err(PcaError::NonFinite { row: r, col });
        }
    }
    let n = matrix.len() as f64;
    let mut mean = vec![0.0; d];
    for row in matrix {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut var = vec![0.0; d];
    for row in matrix {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    let mut scale = vec![1.0; d];
    let mut constant = vec![false; d];
    for j in 0..d {
        let sd = (var[j] / n).sqrt();
        if sd > 0.0 {
            scale[j] = sd;
        } else {
            constant[j] = true;
        }
    }
    let data = matrix
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, v)| if constant[j] { 0.0 } else { (v - mean[j]) / scale[j] })
                .collect()
        })
        .collect();
    Ok(Normalized { data, mean, scale, constant })
}

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method,
/// sweeping until every off-diagonal magnitude drops below `tol`.
/// Returns (eigenvalues, eigenvectors-as-rows), unsorted.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>, tol: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let d = a.len();
    // Accumulate rotations into V (columns are eigenvectors).
    let mut v = vec![vec![0.0; d]; d];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if d < 2 {
        let vals = (0..d).map(|i| a[i][i]).collect();
        return (vals, v);
    }
    for _sweep in 0..200 {
        let mut off = 0.0_f64;
        for p in 0..d {
            for q in p + 1..d {
                off = off.max(a[p][q].abs());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                if a[p][q].abs() < tol * 1e-3 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let vals: Vec<f64> = (0..d).map(|i| a[i][i]).collect();
    // Transpose V so eigenvectors come out as rows, matching vals order.
    let vecs: Vec<Vec<f64>> = (0..d).map(|j| (0..d).map(|i| v[i][j]).collect()).collect();
    (vals, vecs)
}

/// Fitted PCA model: the z-scoring parameters, the selected orthonormal
/// components (rows) and their explained-variance ratios.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    pub explained_variance_ratio: Vec<f64>,
    pub k: usize,
}

/// Fits PCA on raw rows. Columns are z-scored first; the covariance of the
/// normalized data is diagonalized by [`jacobi_eigen`]; `k` is the smallest
/// component count whose cumulative explained-variance ratio reaches
/// `variance_threshold`. Component signs are fixed so the largest-magnitude
/// loading of each component is positive.
pub fn fit_pca(matrix: &[Vec<f64>], variance_threshold: f64) -> Result<PcaModel, PcaError> {
    let normalized = normalize(matrix)?;
    let n = normalized.data.len();
    let d = normalized.data[0].len();
    let mut cov = vec![vec![0.0; d]; d];
    for row in &normalized.data {
        for i in 0..d {
            if row[i] == 0.0 {
                continue;
            }
            for j in i..d {
                cov[i][j] += row[i] * row[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            cov[i][j] /= n as f64;
            cov[j][i] = cov[i][j];
        }
    }
    let (vals, vecs) = jacobi_eigen(cov, 1e-12);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).expect("finite eigenvalues"));
    let total: f64 = vals.iter().map(|&v| v.max(0.0)).sum();
    let total = if total > 0.0 { total } else { 1.0 };

    let mut cumulative = 0.0;
    let mut components = Vec::new();
    let mut ratios = Vec::new();
    for &idx in &order {
        let ratio = vals[idx].max(0.0) / total;
        let mut comp = vecs[idx].clone();
        // Deterministic sign: largest-magnitude loading positive.
        let lead = comp
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .unwrap_or(1.0);
        if lead < 0.0 {
            for c in &mut comp {
                *c = -*c;
            }
        }
        components.push(comp);
        ratios.push(ratio);
        cumulative += ratio;
        if cumulative >= variance_threshold {
            break;
        }
    }
    let k = components.len();
    Ok(PcaModel {
        mean: normalized.mean,
        scale: normalized.scale,
        components,
        explained_variance_ratio: ratios,
        k,
    })
}

impl PcaModel {
    /// Projects one raw row onto the selected components.
    pub fn project(&self, row: &[f64]) -> Result<Vec<f64>, PcaError> {
        if row.len() != self.mean.len() {
            return Err(PcaError::DimensionMismatch { got: row.len(), expect: self.mean.len() });
        }
        let z: Vec<f64> = row
            .iter()
            .zip(self.mean.iter().zip(&self.scale))
            .map(|(v, (m, s))| (v - m) / s)
            .collect();
        Ok(self
            .components
            .iter()
            .map(|comp| comp.iter().zip(&z).map(|(c, x)| c * x).sum())
            .collect())
    }

    /// Cumulative explained-variance ratio of the selected components.
    pub fn cumulative_ratio(&self) -> f64 {
        self.explained_variance_ratio.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 11) as f64) / ((1u64 << 53) as f64)
    }

    #[test]
    fn normalize_two_point_column() {
        let m = vec![vec![1.0], vec![3.0]];
        let n = normalize(&m).unwrap();
        assert_eq!(n.data, vec![vec![-1.0], vec![1.0]]);
    }

    #[test]
    fn normalize_constant_column_is_flagged() {
        let m = vec![vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 3.0]];
        let n = normalize(&m).unwrap();
        assert!(n.constant[0]);
        assert!(!n.constant[1]);
        assert_eq!(n.scale[0], 1.0);
        assert!(n.data.iter().all(|r| r[0] == 0.0));
    }

    #[test]
    fn normalize_postcondition_zero_mean_unit_std() {
        let mut state = 7u64;
        let m: Vec<Vec<f64>> =
            (0..50).map(|_| (0..6).map(|_| lcg(&mut state) * 10.0).collect()).collect();
        let n = normalize(&m).unwrap();
        for j in 0..6 {
            let col: Vec<f64> = n.data.iter().map(|r| r[j]).collect();
            let (mean, std) = crate::stats::mean_std(&col);
            assert!(mean.abs() < 1e-9);
            assert!((std - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn normalize_rejects_single_row() {
        assert!(matches!(normalize(&[vec![1.0]]), Err(PcaError::TooFewRows(1))));
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let a = vec![vec![3.0, 0.0], vec![0.0, 1.0]];
        let (vals, vecs) = jacobi_eigen(a, 1e-12);
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!((vecs[0][0].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_known_two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 3 and 1.
        let (mut vals, _) = jacobi_eigen(vec![vec![2.0, 1.0], vec![1.0, 2.0]], 1e-12);
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((vals[0] - 3.0).abs() < 1e-10);
        assert!((vals[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        // A = V diag(w) V^T must reproduce the input.
        let mut state = 99u64;
        let d = 8;
        let mut a = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in i..d {
                let v = lcg(&mut state) * 2.0 - 1.0;
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        let (vals, vecs) = jacobi_eigen(a.clone(), 1e-12);
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += vecs[k][i] * vals[k] * vecs[k][j];
                }
                assert!((acc - a[i][j]).abs() < 1e-8, "({i},{j})");
            }
        }
    }

    fn plane_corpus(n: usize, d: usize) -> Vec<Vec<f64>> {
        // Rank-2 data: two fixed directions with comparable spread.
        let mut state = 13u64;
        let dir1: Vec<f64> = (0..d).map(|j| ((j as f64) * 0.7).sin() + 0.3).collect();
        let dir2: Vec<f64> = (0..d).map(|j| ((j as f64) * 1.3).cos() - 0.2).collect();
        (0..n)
            .map(|_| {
                let a = lcg(&mut state) * 4.0 - 2.0;
                let b = lcg(&mut state) * 4.0 - 2.0;
                (0..d).map(|j| a * dir1[j] + b * dir2[j]).collect()
            })
            .collect()
    }

    #[test]
    fn rank_two_data_selects_two_components() {
        let m = plane_corpus(40, 10);
        let model = fit_pca(&m, 0.95).unwrap();
        assert_eq!(model.k, 2);
        assert!(model.cumulative_ratio() > 0.999);
    }

    #[test]
    fn isotropic_data_needs_most_components() {
        // Independent per-column noise: ratios hover near 1/d, so the 0.95
        // rule keeps roughly ceil(0.95 d) components.
        let mut state = 31u64;
        let d = 10;
        let m: Vec<Vec<f64>> =
            (0..4000).map(|_| (0..d).map(|_| lcg(&mut state) * 2.0 - 1.0).collect()).collect();
        let model = fit_pca(&m, 0.95).unwrap();
        assert!((9..=10).contains(&model.k), "k = {}", model.k);
        for r in &model.explained_variance_ratio {
            assert!((r - 0.1).abs() < 0.02, "ratio {r}");
        }
    }

    #[test]
    fn components_are_orthonormal() {
        let m = plane_corpus(60, 12);
        let model = fit_pca(&m, 0.95).unwrap();
        for (i, a) in model.components.iter().enumerate() {
            for (j, b) in model.components.iter().enumerate() {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-8, "({i},{j}) dot = {dot}");
            }
        }
    }

    #[test]
    fn full_component_set_reconstructs_centered_data() {
        // With threshold 1.0 every direction with variance gets kept, so
        // back-projection reproduces the z-scored rows.
        let m = plane_corpus(30, 6);
        let model = fit_pca(&m, 1.0).unwrap();
        let norm = normalize(&m).unwrap();
        for (raw, z) in m.iter().zip(&norm.data) {
            let proj = model.project(raw).unwrap();
            let mut back = vec![0.0; 6];
            for (p, comp) in proj.iter().zip(&model.components) {
                for (b, c) in back.iter_mut().zip(comp) {
                    *b += p * c;
                }
            }
            for (b, expect) in back.iter().zip(z) {
                assert!((b - expect).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn ratios_are_non_increasing_and_reach_threshold() {
        let m = plane_corpus(50, 20);
        let model = fit_pca(&m, 0.95).unwrap();
        for w in model.explained_variance_ratio.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        assert!(model.cumulative_ratio() >= 0.95 - 1e-12);
    }

    #[test]
    fn rejects_non_finite_input() {
        let m = vec![vec![1.0, f64::NAN], vec![2.0, 3.0]];
        assert!(matches!(fit_pca(&m, 0.95), Err(PcaError::NonFinite { row: 0, col: 1 })));
    }

    #[test]
    fn project_checks_dimension() {
        let m = plane_corpus(10, 4);
        let model = fit_pca(&m, 0.95).unwrap();
        assert!(matches!(
            model.project(&[1.0, 2.0]),
            Err(PcaError::DimensionMismatch { got: 2, expect: 4 })
        ));
    }

    #[test]
    fn model_serializes_to_json_and_back() {
        let m = plane_corpus(20, 5);
        let model = fit_pca(&m, 0.95).unwrap();
        let json = serde_json::to_string(&model).unwrap();
        let back: PcaModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back.k, model.k);
        assert_eq!(back.components, model.components);
    }
}
