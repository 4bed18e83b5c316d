//! Support vector machine trained by sequential minimal optimization.
//!
//! The solver sweeps all examples, picking the partner multiplier by the
//! largest error gap, until a full pass changes nothing (all KKT conditions
//! hold within tolerance) or the pass budget runs out. The procedure is
//! fully deterministic. Multi-class problems train one-vs-rest with the
//! largest decision value winning and ties broken by class order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvmError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("training set has a single class")]
    SingleClass,
    #[error("feature vectors have inconsistent widths ({first} vs {other})")]
    RaggedFeatures { first: usize, other: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Kernel {
    Linear,
    /// Gaussian kernel; `gamma = None` means `1 / n_features`.
    Rbf { gamma: Option<f64> },
}

impl Kernel {
    fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Kernel::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            Kernel::Rbf { gamma } => {
                let g = gamma.unwrap_or(1.0 / a.len() as f64);
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-g * d2).exp()
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvmConfig {
    pub kernel: Kernel,
    pub c: f64,
    pub tolerance: f64,
    pub max_passes: usize,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self { kernel: Kernel::Linear, c: 1.0, tolerance: 1e-3, max_passes: 10_000 }
    }
}

/// A trained binary machine. `converged` is false when the pass budget ran
/// out first; the partial model is still usable.
#[derive(Debug, Clone)]
pub struct BinarySvm {
    support: Vec<Vec<f64>>,
    support_labels: Vec<f64>,
    alphas: Vec<f64>,
    bias: f64,
    kernel: Kernel,
    pub converged: bool,
    pub passes: usize,
}

impl BinarySvm {
    /// Signed distance-like decision value; >= 0 classifies as +1.
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut acc = self.bias;
        for ((sv, &y), &a) in
            self.support.iter().zip(&self.support_labels).zip(&self.alphas)
        {
            acc += a * y * self.kernel.eval(sv, x);
        }
        acc
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        if self.decision(x) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn num_support_vectors(&self) -> usize {
        self.support.len()
    }
}

/// Trains a binary SVM on labels in {-1, +1}.
pub fn train_binary(
    features: &[Vec<f64>],
    labels: &[f64],
    config: &SvmConfig,
) -> Result<BinarySvm, SvmError> {
    let n = features.len();
    if n == 0 {
        return Err(SvmError::EmptyTrainingSet);
    }
    let d = features[0].len();
    for row in features {
        if row.len() != d {
            return Err(SvmError::RaggedFeatures { first: d, other: row.len() });
        }
    }
    if labels.iter().all(|&y| y > 0.0) || labels.iter().all(|&y| y < 0.0) {
        return Err(SvmError::SingleClass);
    }

    // Precompute the kernel matrix; corpora here are small (n <= a few
    // hundred after balancing).
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = config.kernel.eval(&features[i], &features[j]);
            k[i][j] = v;
            k[j][i] = v;
        }
    }

    let mut alphas = vec![0.0f64; n];
    let mut bias = 0.0f64;
    let c = config.c;
    let tol = config.tolerance;
    // Error cache E[t] = f(x_t) - y_t, updated incrementally after every
    // multiplier change.
    let mut errors: Vec<f64> = labels.iter().map(|&y| -y).collect();

    let mut passes = 0;
    let mut converged = false;
    while passes < config.max_passes {
        passes += 1;
        let mut changed = 0;
        for i in 0..n {
            let e_i = errors[i];
            let r_i = labels[i] * e_i;
            if !((r_i < -tol && alphas[i] < c) || (r_i > tol && alphas[i] > 0.0)) {
                continue;
            }
            // Partner with the largest error gap; ties resolve to the
            // lowest index, keeping the sweep deterministic.
            let mut j_best = usize::MAX;
            let mut gap_best = -1.0;
            for (j, &e_j) in errors.iter().enumerate() {
                if j == i {
                    continue;
                }
                let gap = (e_i - e_j).abs();
                if gap > gap_best {
                    gap_best = gap;
                    j_best = j;
                }
            }
            if j_best == usize::MAX {
                continue;
            }
            let j = j_best;
            let e_j = errors[j];

            let (alpha_i_old, alpha_j_old) = (alphas[i], alphas[j]);
            let (lo, hi) = if labels[i] != labels[j] {
                ((alpha_j_old - alpha_i_old).max(0.0), (c + alpha_j_old - alpha_i_old).min(c))
            } else {
                ((alpha_i_old + alpha_j_old - c).max(0.0), (alpha_i_old + alpha_j_old).min(c))
            };
            if lo >= hi {
                continue;
            }
            let eta = 2.0 * k[i][j] - k[i][i] - k[j][j];
            if eta >= 0.0 {
                continue;
            }
            let mut alpha_j = alpha_j_old - labels[j] * (e_i - e_j) / eta;
            alpha_j = alpha_j.clamp(lo, hi);
            if (alpha_j - alpha_j_old).abs() < 1e-5 {
                continue;
            }
            let alpha_i = alpha_i_old + labels[i] * labels[j] * (alpha_j_old - alpha_j);
            alphas[i] = alpha_i;
            alphas[j] = alpha_j;

            let di = labels[i] * (alpha_i - alpha_i_old);
            let dj = labels[j] * (alpha_j - alpha_j_old);
            let b1 = bias - e_i - di * k[i][i] - dj * k[i][j];
            let b2 = bias - e_j - di * k[i][j] - dj * k[j][j];
            let new_bias = if alpha_i > 0.0 && alpha_i < c {
                b1
            } else if alpha_j > 0.0 && alpha_j < c {
                b2
            } else {
                (b1 + b2) / 2.0
            };
            let db = new_bias - bias;
            bias = new_bias;
            for t in 0..n {
                errors[t] += di * k[i][t] + dj * k[j][t] + db;
            }
            changed += 1;
        }
        if changed == 0 {
            // A full sweep with no update: every example satisfies the KKT
            // conditions within tolerance.
            converged = true;
            break;
        }
    }

    let mut support = Vec::new();
    let mut support_labels = Vec::new();
    let mut sv_alphas = Vec::new();
    for i in 0..n {
        if alphas[i] > 0.0 {
            support.push(features[i].clone());
            support_labels.push(labels[i]);
            sv_alphas.push(alphas[i]);
        }
    }
    Ok(BinarySvm {
        support,
        support_labels,
        alphas: sv_alphas,
        bias,
        kernel: config.kernel,
        converged,
        passes,
    })
}

/// One-vs-rest multi-class wrapper. Class ids are the caller's (sorted,
/// deduplicated); prediction returns the class with the largest decision
/// value, earliest class winning ties.
#[derive(Debug, Clone)]
pub struct MultiSvm {
    pub classes: Vec<usize>,
    machines: Vec<BinarySvm>,
}

impl MultiSvm {
    pub fn train(
        features: &[Vec<f64>],
        labels: &[usize],
        config: &SvmConfig,
    ) -> Result<Self, SvmError> {
        let mut classes: Vec<usize> = labels.to_vec();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() < 2 {
            return Err(SvmError::SingleClass);
        }
        if classes.len() == 2 {
            // Plain binary machine: first class is -1, second +1.
            let signed: Vec<f64> = labels
                .iter()
                .map(|&l| if l == classes[1] { 1.0 } else { -1.0 })
                .collect();
            let machine = train_binary(features, &signed, config)?;
            return Ok(Self { classes, machines: vec![machine] });
        }
        let machines = classes
            .iter()
            .map(|&cls| {
                let signed: Vec<f64> =
                    labels.iter().map(|&l| if l == cls { 1.0 } else { -1.0 }).collect();
                train_binary(features, &signed, config)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { classes, machines })
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        if self.classes.len() == 2 {
            let d = self.machines[0].decision(x);
            return if d >= 0.0 { self.classes[1] } else { self.classes[0] };
        }
        let mut best = (f64::NEG_INFINITY, 0usize);
        for (cls, machine) in self.classes.iter().zip(&self.machines) {
            let d = machine.decision(x);
            if d > best.0 {
                best = (d, *cls);
            }
        }
        best.1
    }

    pub fn converged(&self) -> bool {
        self.machines.iter().all(|m| m.converged)
    }
}
