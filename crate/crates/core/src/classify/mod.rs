//! Balanced-subsample classification harness: categorize ratings into 2 or
//! 3 classes, equalize class counts by seeded random subsampling, train an
//! SVM on a stratified split, and report mean +/- std accuracy over
//! repeated iterations.

mod svm;

pub use svm::{train_binary, BinarySvm, Kernel, MultiSvm, SvmConfig, SvmError};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("rating {0} outside the 1..9 scale")]
    RatingOutOfRange(f64),
    #[error("class '{0}' has no samples")]
    EmptyClass(String),
    #[error("need at least 2 non-empty classes (got {0})")]
    TooFewClasses(usize),
    #[error("class '{class}' too small for a {train_fraction} stratified split ({size} samples)")]
    ClassTooSmall { class: String, size: usize, train_fraction: f64 },
    #[error(transparent)]
    Svm(#[from] SvmError),
}

/// Two-way rating category; the scale midpoint 5 classifies as Low.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cat2 {
    Low,
    High,
}

/// Three-way rating category: low < 3.5, 3.5 <= mid <= 6, high > 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cat3 {
    Low,
    Mid,
    High,
}

fn check_rating(rating: f64) -> Result<f64, ClassifyError> {
    if (1.0..=9.0).contains(&rating) {
        Ok(rating)
    } else {
        Err(ClassifyError::RatingOutOfRange(rating))
    }
}

pub fn categorize_2(rating: f64) -> Result<Cat2, ClassifyError> {
    let r = check_rating(rating)?;
    Ok(if r > 5.0 { Cat2::High } else { Cat2::Low })
}

pub fn categorize_3(rating: f64) -> Result<Cat3, ClassifyError> {
    let r = check_rating(rating)?;
    Ok(if r < 3.5 {
        Cat3::Low
    } else if r <= 6.0 {
        Cat3::Mid
    } else {
        Cat3::High
    })
}

/// Category scheme selector for the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatScheme {
    Two,
    Three,
}

impl CatScheme {
    pub fn num_classes(&self) -> usize {
        match self {
            CatScheme::Two => 2,
            CatScheme::Three => 3,
        }
    }

    /// Class index of a rating under this scheme.
    pub fn class_of(&self, rating: f64) -> Result<usize, ClassifyError> {
        Ok(match self {
            CatScheme::Two => categorize_2(rating)? as usize,
            CatScheme::Three => categorize_3(rating)? as usize,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            CatScheme::Two => "2-cat",
            CatScheme::Three => "3-cat",
        }
    }
}

/// A feature vector paired with its rated value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledSample {
    pub features: Vec<f64>,
    pub rating: f64,
}

/// Draws `min_class_size` indices per class uniformly without replacement.
/// Output order is class-major, deterministic under the rng.
pub fn balanced_subsample<R: Rng>(
    by_class: &BTreeMap<usize, Vec<usize>>,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>, ClassifyError> {
    if by_class.len() < 2 {
        return Err(ClassifyError::TooFewClasses(by_class.len()));
    }
    for (cls, members) in by_class {
        if members.is_empty() {
            return Err(ClassifyError::EmptyClass(cls.to_string()));
        }
    }
    let target = by_class.values().map(Vec::len).min().unwrap();
    let mut picked = Vec::with_capacity(target * by_class.len());
    for (&cls, members) in by_class {
        let mut pool = members.clone();
        // Partial Fisher-Yates: the first `target` slots become the draw.
        for slot in 0..target {
            let swap = rng.gen_range(slot..pool.len());
            pool.swap(slot, swap);
        }
        picked.extend(pool[..target].iter().map(|&idx| (cls, idx)));
    }
    Ok(picked)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    pub iterations: usize,
    pub train_fraction: f64,
    pub seed: u64,
    pub svm: SvmConfig,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { iterations: 50, train_fraction: 0.8, seed: 0, svm: SvmConfig::default() }
    }
}

/// Accuracy summary over the harness iterations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricsReport {
    pub task: String,
    pub scheme: CatScheme,
    pub corpus_size: usize,
    pub balanced_size: usize,
    pub iterations: usize,
    pub accuracy_mean: f64,
    pub accuracy_std: f64,
    pub per_iteration: Vec<f64>,
    pub all_converged: bool,
}

fn iteration_seed(master: u64, iteration: usize) -> u64 {
    // SplitMix-style mix keeps per-iteration streams independent.
    let mut z = master ^ (iteration as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the full harness for one task: per iteration, balance the classes,
/// split each class 80/20 (stratified), train, and score test accuracy.
/// Iterations run in parallel; each derives its own generator from
/// (seed, iteration), so scheduling never changes results.
pub fn run_iterations(
    samples: &[LabeledSample],
    scheme: CatScheme,
    task: &str,
    config: &HarnessConfig,
) -> Result<MetricsReport, ClassifyError> {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in samples.iter().enumerate() {
        by_class.entry(scheme.class_of(s.rating)?).or_default().push(i);
    }
    if by_class.len() < 2 {
        return Err(ClassifyError::TooFewClasses(by_class.len()));
    }
    let min_size = by_class.values().map(Vec::len).min().unwrap();
    let train_n = ((min_size as f64) * config.train_fraction).floor() as usize;
    if train_n == 0 || train_n == min_size {
        return Err(ClassifyError::ClassTooSmall {
            class: by_class
                .iter()
                .find(|(_, v)| v.len() == min_size)
                .map(|(k, _)| k.to_string())
                .unwrap_or_default(),
            size: min_size,
            train_fraction: config.train_fraction,
        });
    }

    let results: Vec<Result<(f64, bool), ClassifyError>> = (0..config.iterations)
        .into_par_iter()
        .map(|iter| {
            let mut rng = ChaCha8Rng::seed_from_u64(iteration_seed(config.seed, iter));
            let balanced = balanced_subsample(&by_class, &mut rng)?;

            // Stratified split: shuffle each class's slice, take the first
            // train_n for training.
            let mut train_idx = Vec::new();
            let mut test_idx = Vec::new();
            for class_slice in balanced.chunks(min_size) {
                let mut members: Vec<usize> = class_slice.iter().map(|&(_, i)| i).collect();
                for slot in 0..members.len() {
                    let swap = rng.gen_range(slot..members.len());
                    members.swap(slot, swap);
                }
                train_idx.extend_from_slice(&members[..train_n]);
                test_idx.extend_from_slice(&members[train_n..]);
            }

            let features: Vec<Vec<f64>> =
                train_idx.iter().map(|&i| samples[i].features.clone()).collect();
            let labels: Vec<usize> = train_idx
                .iter()
                .map(|&i| scheme.class_of(samples[i].rating))
                .collect::<Result<_, _>>()?;
            let model = MultiSvm::train(&features, &labels, &config.svm)?;
            let mut correct = 0usize;
            for &i in &test_idx {
                let predicted = model.predict(&samples[i].features);
                if predicted == scheme.class_of(samples[i].rating)? {
                    correct += 1;
                }
            }
            Ok((correct as f64 / test_idx.len() as f64, model.converged()))
        })
        .collect();

    let mut per_iteration = Vec::with_capacity(config.iterations);
    let mut all_converged = true;
    for r in results {
        let (acc, conv) = r?;
        per_iteration.push(acc);
        all_converged &= conv;
    }
    let (accuracy_mean, accuracy_std) = crate::stats::mean_std(&per_iteration);
    Ok(MetricsReport {
        task: task.to_string(),
        scheme,
        corpus_size: samples.len(),
        balanced_size: min_size * by_class.len(),
        iterations: config.iterations,
        accuracy_mean,
        accuracy_std,
        per_iteration,
        all_converged,
    })
}

/// Renders reports as an aligned table: one row per corpus size, columns
/// valence/arousal by category scheme, cells `mean+/-std`.
pub fn render_metrics_table(reports: &[&MetricsReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8}{:>16}{:>16}{:>16}{:>16}\n",
        "", "Valence 2-Cat", "Valence 3-Cat", "Arousal 2-Cat", "Arousal 3-Cat"
    ));
    let mut by_size: BTreeMap<usize, BTreeMap<String, &MetricsReport>> = BTreeMap::new();
    for r in reports {
        by_size
            .entry(r.corpus_size)
            .or_default()
            .insert(format!("{}/{}", r.task, r.scheme.label()), r);
    }
    for (size, row) in &by_size {
        out.push_str(&format!("{size:<8}"));
        for key in
            ["valence/2-cat", "valence/3-cat", "arousal/2-cat", "arousal/3-cat"]
        {
            match row.get(key) {
                Some(r) => out.push_str(&format!(
                    "{:>16}",
                    format!("{:.2}+/-{:.3}", r.accuracy_mean, r.accuracy_std)
                )),
                None => out.push_str(&format!("{:>16}", "-")),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_way_boundaries() {
        assert_eq!(categorize_2(5.0).unwrap(), Cat2::Low);
        assert_eq!(categorize_2(5.01).unwrap(), Cat2::High);
        assert_eq!(categorize_2(1.0).unwrap(), Cat2::Low);
        assert_eq!(categorize_2(9.0).unwrap(), Cat2::High);
    }

    #[test]
    fn three_way_boundaries() {
        assert_eq!(categorize_3(3.5).unwrap(), Cat3::Mid);
        assert_eq!(categorize_3(6.0).unwrap(), Cat3::Mid);
        assert_eq!(categorize_3(6.01).unwrap(), Cat3::High);
        assert_eq!(categorize_3(2.0).unwrap(), Cat3::Low);
        assert_eq!(categorize_3(3.49).unwrap(), Cat3::Low);
    }

    #[test]
    fn out_of_range_ratings_rejected() {
        assert!(categorize_2(0.5).is_err());
        assert!(categorize_3(9.5).is_err());
    }

    #[test]
    fn categories_partition_the_scale() {
        // Every rating maps to exactly one class under both schemes.
        let mut r = 1.0;
        while r <= 9.0 {
            categorize_2(r).unwrap();
            categorize_3(r).unwrap();
            r += 0.01;
        }
    }

    fn groups(sizes: &[usize]) -> BTreeMap<usize, Vec<usize>> {
        let mut map = BTreeMap::new();
        let mut next = 0;
        for (cls, &n) in sizes.iter().enumerate() {
            map.insert(cls, (next..next + n).collect());
            next += n;
        }
        map
    }

    #[test]
    fn subsample_equalizes_to_min_class() {
        let by_class = groups(&[10, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let picked = balanced_subsample(&by_class, &mut rng).unwrap();
        assert_eq!(picked.len(), 8);
        assert_eq!(picked.iter().filter(|(c, _)| *c == 0).count(), 4);
        assert_eq!(picked.iter().filter(|(c, _)| *c == 1).count(), 4);
        // Without replacement.
        let mut idx: Vec<usize> = picked.iter().map(|&(_, i)| i).collect();
        idx.sort_unstable();
        idx.dedup();
        assert_eq!(idx.len(), 8);
    }

    #[test]
    fn equal_classes_keep_counts() {
        let by_class = groups(&[4, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let picked = balanced_subsample(&by_class, &mut rng).unwrap();
        assert_eq!(picked.len(), 8);
    }

    #[test]
    fn subsample_is_deterministic_under_seed() {
        let by_class = groups(&[20, 9, 14]);
        let a = balanced_subsample(&by_class, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = balanced_subsample(&by_class, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subsample_rejects_empty_class() {
        let mut by_class = groups(&[5]);
        by_class.insert(1, vec![]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            balanced_subsample(&by_class, &mut rng),
            Err(ClassifyError::EmptyClass(_))
        ));
    }

    /// Linearly separable corpus: rating determines a feature cluster.
    fn separable_corpus(n: usize) -> Vec<LabeledSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        (0..n)
            .map(|_| {
                let high: bool = rng.gen_bool(0.5);
                let rating = if high { 5.5 + rng.gen::<f64>() * 3.0 } else { 1.5 + rng.gen::<f64>() * 3.0 };
                let center = if high { 3.0 } else { -3.0 };
                let features = vec![
                    center + rng.gen::<f64>() - 0.5,
                    -center + rng.gen::<f64>() - 0.5,
                ];
                LabeledSample { features, rating }
            })
            .collect()
    }

    #[test]
    fn separable_corpus_scores_high_with_low_spread() {
        let samples = separable_corpus(200);
        let config = HarnessConfig { iterations: 50, seed: 9, ..HarnessConfig::default() };
        let report = run_iterations(&samples, CatScheme::Two, "valence", &config).unwrap();
        assert!(report.accuracy_mean >= 0.95, "mean = {}", report.accuracy_mean);
        assert!(report.accuracy_std <= 0.05, "std = {}", report.accuracy_std);
        assert_eq!(report.per_iteration.len(), 50);
        assert!(report.all_converged);
    }

    #[test]
    fn permuted_labels_score_near_chance() {
        let mut samples = separable_corpus(200);
        // Break the feature-rating link by rotating the ratings.
        let ratings: Vec<f64> = samples.iter().map(|s| s.rating).collect();
        let n = samples.len();
        for (i, s) in samples.iter_mut().enumerate() {
            s.rating = ratings[(i + n / 2) % n];
        }
        let config = HarnessConfig { iterations: 50, seed: 11, ..HarnessConfig::default() };
        let report = run_iterations(&samples, CatScheme::Two, "valence", &config).unwrap();
        assert!(
            (report.accuracy_mean - 0.5).abs() <= 0.15,
            "mean = {}",
            report.accuracy_mean
        );
    }

    #[test]
    fn harness_is_reproducible_bit_for_bit() {
        let samples = separable_corpus(80);
        let config = HarnessConfig { iterations: 10, seed: 77, ..HarnessConfig::default() };
        let a = run_iterations(&samples, CatScheme::Two, "valence", &config).unwrap();
        let b = run_iterations(&samples, CatScheme::Two, "valence", &config).unwrap();
        assert_eq!(a.per_iteration, b.per_iteration);
    }

    #[test]
    fn class_too_small_for_split_is_rejected() {
        let samples: Vec<LabeledSample> = vec![
            LabeledSample { features: vec![0.0], rating: 2.0 },
            LabeledSample { features: vec![1.0], rating: 8.0 },
            LabeledSample { features: vec![1.1], rating: 8.1 },
        ];
        let config = HarnessConfig { iterations: 2, ..HarnessConfig::default() };
        assert!(matches!(
            run_iterations(&samples, CatScheme::Two, "t", &config),
            Err(ClassifyError::ClassTooSmall { .. })
        ));
    }

    #[test]
    fn metrics_table_layout() {
        let samples = separable_corpus(120);
        let config = HarnessConfig { iterations: 5, seed: 3, ..HarnessConfig::default() };
        let v2 = run_iterations(&samples, CatScheme::Two, "valence", &config).unwrap();
        let v3 = run_iterations(&samples, CatScheme::Three, "valence", &config).unwrap();
        let a2 = run_iterations(&samples, CatScheme::Two, "arousal", &config).unwrap();
        let a3 = run_iterations(&samples, CatScheme::Three, "arousal", &config).unwrap();
        let table = render_metrics_table(&[&v2, &v3, &a2, &a3]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("Valence 2-Cat"));
        assert!(lines[0].contains("Arousal 3-Cat"));
        assert!(lines[1].starts_with("120"));
        assert_eq!(lines[1].matches("+/-").count(), 4);
    }
}
