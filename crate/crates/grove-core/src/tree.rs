//! CART classification trees: gini splitting, random-subspace and
//! random-threshold growth, probability prediction.
//!
//! Split quality is compared in exact integer arithmetic. For a candidate
//! split of a node with `n` samples into sides of `nL`/`nR` samples and
//! per-class counts `L_k`/`R_k`, minimizing the count-weighted gini of the
//! children is equivalent to maximizing
//!
//! ```text
//! score / (nL * nR)   with   score = sum(L_k^2) * nR + sum(R_k^2) * nL
//! ```
//!
//! so candidates are ranked by cross-multiplied integer comparison and ties
//! broken by (lower feature index, lower threshold), which keeps the argmax
//! reproducible across platforms and immune to float rounding.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, IndexSample};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, ChaCha8Rng};

/// Ensemble flavor; also fixes how single trees draw their splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Random forest: exact splits over a random subset of round(sqrt(d)) features.
    Rf,
    /// Extra-trees: one uniformly drawn threshold per feature in a random
    /// subset of round(sqrt(d)) features.
    Et,
    /// Bagged trees: exact splits over all d features.
    Bt,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Rf => "rf",
            Flavor::Et => "et",
            Flavor::Bt => "bt",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rf" => Ok(Flavor::Rf),
            "et" => Ok(Flavor::Et),
            "bt" => Ok(Flavor::Bt),
            other => Err(format!("unknown flavor {other:?} (expected rf, et or bt)")),
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How candidate thresholds are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// Scan all midpoints between consecutive distinct sorted values.
    Exact,
    /// Draw one threshold uniformly in (min, max) per candidate feature.
    RandomThreshold,
}

/// Growth configuration for a single tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    pub flavor: Flavor,
    /// Features sampled per node; `round(sqrt(d))` (min 1) for RF/ET, `d` for BT.
    pub max_features: usize,
    /// Nodes with fewer than `2 * min_samples_leaf` samples become leaves.
    pub min_samples_leaf: usize,
    pub seed: u64,
}

impl GrowthParams {
    /// Standard parameters for a flavor on a d-feature dataset: fully grown
    /// trees (`min_samples_leaf = 1`) with the flavor's feature-subset rule.
    pub fn for_flavor(flavor: Flavor, n_features: usize, seed: u64) -> GrowthParams {
        let sqrt_d = ((n_features as f64).sqrt().round() as usize).max(1);
        let max_features = match flavor {
            Flavor::Rf | Flavor::Et => sqrt_d.min(n_features),
            Flavor::Bt => n_features,
        };
        GrowthParams {
            flavor,
            max_features,
            min_samples_leaf: 1,
            seed,
        }
    }

    pub fn with_min_samples_leaf(mut self, min_samples_leaf: usize) -> GrowthParams {
        self.min_samples_leaf = min_samples_leaf.max(1);
        self
    }

    fn split_mode(&self) -> SplitMode {
        match self.flavor {
            Flavor::Et => SplitMode::RandomThreshold,
            Flavor::Rf | Flavor::Bt => SplitMode::Exact,
        }
    }
}

/// Split stored at an internal node: `x[feature] <= threshold` routes left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub feature: usize,
    pub threshold: f64,
    pub left: usize,
    pub right: usize,
}

/// One node of a fitted tree. `split == None` marks a leaf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: usize,
    pub depth: u32,
    /// Training samples of each class reaching this node (with bootstrap
    /// multiplicity).
    pub counts: Vec<u32>,
    pub split: Option<Split>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    /// Total training samples at the node.
    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Majority class, ties broken by lowest class index.
    pub fn majority(&self) -> usize {
        majority_class(&self.counts)
    }
}

/// A fitted CART tree stored as a node array rooted at id 0, in
/// breadth-first id order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub n_features: usize,
    /// Training samples used to fit (in-bag size, with multiplicity).
    pub n_train: usize,
    pub params: GrowthParams,
    pub nodes: Vec<TreeNode>,
}

/// Gini impurity `1 - sum_k p_k^2` of a count vector.
///
/// Panics if the counts sum to zero; callers never evaluate empty nodes.
pub fn gini(counts: &[u32]) -> f64 {
    let n: u64 = counts.iter().map(|&c| c as u64).sum();
    assert!(n > 0, "gini of an empty node");
    let sum_sq: u64 = counts.iter().map(|&c| (c as u64) * (c as u64)).sum();
    1.0 - sum_sq as f64 / (n as f64 * n as f64)
}

/// Misclassification rate `1 - max_k p_k` of a count vector.
pub fn misclassification_rate(counts: &[u32]) -> f64 {
    let n: u64 = counts.iter().map(|&c| c as u64).sum();
    assert!(n > 0, "misclassification rate of an empty node");
    let max = counts.iter().copied().max().unwrap_or(0) as u64;
    1.0 - max as f64 / n as f64
}

/// Misclassified sample count `n - max_k count_k`; the integer numerator
/// behind `misclassification_rate`.
pub fn misclassified(counts: &[u32]) -> u64 {
    let n: u64 = counts.iter().map(|&c| c as u64).sum();
    n - counts.iter().copied().max().unwrap_or(0) as u64
}

pub fn majority_class(counts: &[u32]) -> usize {
    let mut best = 0;
    for (k, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = k;
        }
    }
    best
}

/// Best split found for a node.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCandidate {
    pub feature: usize,
    pub threshold: f64,
    /// Count-weighted gini decrease of the split (reporting only; candidate
    /// ranking uses exact integer comparison).
    pub impurity_decrease: f64,
}

struct RawSplit {
    feature: usize,
    threshold: f64,
    /// sum(L^2)*nR + sum(R^2)*nL; larger is better.
    score: u128,
    n_left: u64,
    n_right: u64,
    left_counts: Vec<u32>,
}

impl RawSplit {
    fn beats(&self, other: &RawSplit) -> bool {
        // score/(nL*nR) compared by cross-multiplication; candidates are
        // generated in (feature, threshold) order, so strict improvement
        // keeps the first of any exact tie.
        let lhs = self.score * (other.n_left * other.n_right) as u128;
        let rhs = other.score * (self.n_left * self.n_right) as u128;
        lhs > rhs
    }

    /// Exact check that the split strictly lowers weighted gini below the
    /// parent's: score/(nL*nR) > sum(C^2)/n.
    fn positive_gain(&self, parent_counts: &[u32]) -> bool {
        let n = (self.n_left + self.n_right) as u128;
        let parent_sq: u128 = parent_counts
            .iter()
            .map(|&c| (c as u128) * (c as u128))
            .sum();
        self.score * n > parent_sq * (self.n_left * self.n_right) as u128
    }

    fn impurity_decrease(&self, parent_counts: &[u32]) -> f64 {
        let n = (self.n_left + self.n_right) as f64;
        let mut right_counts = parent_counts.to_vec();
        for (r, &l) in right_counts.iter_mut().zip(&self.left_counts) {
            *r -= l;
        }
        gini(parent_counts)
            - (self.n_left as f64 * gini(&self.left_counts)
                + self.n_right as f64 * gini(&right_counts))
                / n
    }
}

fn class_counts(ds: &Dataset, rows: &[usize]) -> Vec<u32> {
    let mut counts = vec![0u32; ds.n_classes()];
    for &r in rows {
        counts[ds.label(r)] += 1;
    }
    counts
}

/// Scans one feature's exact midpoint thresholds; returns the best candidate
/// respecting `min_samples_leaf` on both sides.
fn scan_feature_exact(
    ds: &Dataset,
    rows: &[usize],
    feature: usize,
    min_samples_leaf: usize,
    n_classes: usize,
) -> Option<RawSplit> {
    let mut pairs: Vec<(f64, usize)> = rows
        .iter()
        .map(|&r| (ds.value(r, feature), ds.label(r)))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));

    let n = pairs.len() as u64;
    let mut left = vec![0u32; n_classes];
    let mut right = vec![0u32; n_classes];
    for &(_, label) in &pairs {
        right[label] += 1;
    }
    let mut sum_sq_left: u64 = 0;
    let mut sum_sq_right: u64 = right.iter().map(|&c| (c as u64) * (c as u64)).sum();

    let mut best: Option<RawSplit> = None;
    for p in 1..pairs.len() {
        let label = pairs[p - 1].1;
        sum_sq_left += 2 * left[label] as u64 + 1;
        sum_sq_right -= 2 * right[label] as u64 - 1;
        left[label] += 1;
        right[label] -= 1;

        let (v0, v1) = (pairs[p - 1].0, pairs[p].0);
        if v0 == v1 || p < min_samples_leaf || pairs.len() - p < min_samples_leaf {
            continue;
        }
        let mut threshold = v0 + (v1 - v0) / 2.0;
        if threshold >= v1 {
            // Adjacent floats: fall back to the left value so `x <= c`
            // routes exactly p samples left.
            threshold = v0;
        }
        let (n_left, n_right) = (p as u64, n - p as u64);
        let score = sum_sq_left as u128 * n_right as u128 + sum_sq_right as u128 * n_left as u128;
        let candidate = RawSplit {
            feature,
            threshold,
            score,
            n_left,
            n_right,
            left_counts: Vec::new(),
        };
        if best.as_ref().is_none_or(|b| candidate.beats(b)) {
            best = Some(RawSplit {
                left_counts: left.clone(),
                ..candidate
            });
        }
    }
    best
}

/// Scores one uniformly drawn threshold for a feature (extra-trees mode).
fn scan_feature_random(
    ds: &Dataset,
    rows: &[usize],
    feature: usize,
    min_samples_leaf: usize,
    n_classes: usize,
    rng: &mut ChaCha8Rng,
) -> Option<RawSplit> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &r in rows {
        let v = ds.value(r, feature);
        min = min.min(v);
        max = max.max(v);
    }
    if !(min < max) {
        return None;
    }
    let threshold = rng.random_range(min..max);

    let mut left = vec![0u32; n_classes];
    let mut right = vec![0u32; n_classes];
    for &r in rows {
        if ds.value(r, feature) <= threshold {
            left[ds.label(r)] += 1;
        } else {
            right[ds.label(r)] += 1;
        }
    }
    let n_left: u64 = left.iter().map(|&c| c as u64).sum();
    let n_right: u64 = right.iter().map(|&c| c as u64).sum();
    if (n_left as usize) < min_samples_leaf || (n_right as usize) < min_samples_leaf {
        return None;
    }
    let sum_sq = |c: &[u32]| -> u128 { c.iter().map(|&v| (v as u128) * (v as u128)).sum() };
    Some(RawSplit {
        feature,
        threshold,
        score: sum_sq(&left) * n_right as u128 + sum_sq(&right) * n_left as u128,
        n_left,
        n_right,
        left_counts: left,
    })
}

fn search_split(
    ds: &Dataset,
    rows: &[usize],
    candidate_features: &[usize],
    mode: SplitMode,
    min_samples_leaf: usize,
    rng: &mut ChaCha8Rng,
) -> Option<RawSplit> {
    let n_classes = ds.n_classes();
    let mut best: Option<RawSplit> = None;
    for &feature in candidate_features {
        let candidate = match mode {
            SplitMode::Exact => {
                scan_feature_exact(ds, rows, feature, min_samples_leaf, n_classes)
            }
            SplitMode::RandomThreshold => {
                scan_feature_random(ds, rows, feature, min_samples_leaf, n_classes, rng)
            }
        };
        if let Some(c) = candidate {
            if best.as_ref().is_none_or(|b| c.beats(b)) {
                best = Some(c);
            }
        }
    }
    best
}

/// Finds the best split of `rows` over `candidate_features`, or `None` when
/// nothing separates them (fewer than two samples, a single label, or all
/// candidate features constant).
pub fn best_split(
    ds: &Dataset,
    rows: &[usize],
    candidate_features: &[usize],
    mode: SplitMode,
    seed: u64,
) -> Option<SplitCandidate> {
    if rows.len() < 2 || candidate_features.is_empty() {
        return None;
    }
    let counts = class_counts(ds, rows);
    if counts.iter().filter(|&&c| c > 0).count() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    search_split(ds, rows, candidate_features, mode, 1, &mut rng).map(|raw| SplitCandidate {
        feature: raw.feature,
        threshold: raw.threshold,
        impurity_decrease: raw.impurity_decrease(&counts),
    })
}

/// Grows a tree on the in-bag rows of `sample`.
///
/// Nodes stop splitting when pure, when they hold fewer than
/// `2 * min_samples_leaf` samples, when no candidate feature separates them,
/// or when the best candidate has no positive gini decrease. Candidate
/// features (and extra-trees thresholds) come from a generator seeded by
/// `(params.seed, node id)`, so sibling subtrees never share random state.
pub fn grow(ds: &Dataset, sample: &IndexSample, params: &GrowthParams) -> Result<DecisionTree> {
    if sample.in_bag().is_empty() {
        return Err(Error::InvalidDataset("empty in-bag sample".into()));
    }
    if sample.n() != ds.n_rows() {
        return Err(Error::InvalidDataset(format!(
            "sample over {} rows used with a dataset of {} rows",
            sample.n(),
            ds.n_rows()
        )));
    }
    let d = ds.n_features();
    let m = params.max_features.clamp(1, d);
    let mode = params.split_mode();
    let min_leaf = params.min_samples_leaf.max(1);

    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut queue: std::collections::VecDeque<(usize, Vec<usize>, u32)> =
        std::collections::VecDeque::new();

    nodes.push(placeholder(0, 0));
    queue.push_back((0, sample.in_bag().to_vec(), 0));

    while let Some((id, rows, depth)) = queue.pop_front() {
        let counts = class_counts(ds, &rows);
        let n: u32 = counts.iter().sum();
        let pure = counts.iter().filter(|&&c| c > 0).count() < 2;

        let mut split = None;
        if !pure && (n as usize) >= 2 * min_leaf {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(params.seed, id as u64));
            let features: Vec<usize> = if m >= d {
                (0..d).collect()
            } else {
                let mut chosen = rand::seq::index::sample(&mut rng, d, m).into_vec();
                chosen.sort_unstable();
                chosen
            };
            if let Some(raw) = search_split(ds, &rows, &features, mode, min_leaf, &mut rng) {
                if raw.positive_gain(&counts) {
                    split = Some(raw);
                }
            }
        }

        match split {
            None => {
                nodes[id] = TreeNode {
                    id,
                    depth,
                    counts,
                    split: None,
                };
            }
            Some(raw) => {
                let (mut left_rows, mut right_rows) = (Vec::new(), Vec::new());
                for &r in &rows {
                    if ds.value(r, raw.feature) <= raw.threshold {
                        left_rows.push(r);
                    } else {
                        right_rows.push(r);
                    }
                }
                debug_assert_eq!(left_rows.len() as u64, raw.n_left);
                debug_assert_eq!(right_rows.len() as u64, raw.n_right);
                let left = nodes.len();
                let right = nodes.len() + 1;
                nodes.push(placeholder(left, depth + 1));
                nodes.push(placeholder(right, depth + 1));
                nodes[id] = TreeNode {
                    id,
                    depth,
                    counts,
                    split: Some(Split {
                        feature: raw.feature,
                        threshold: raw.threshold,
                        left,
                        right,
                    }),
                };
                queue.push_back((left, left_rows, depth + 1));
                queue.push_back((right, right_rows, depth + 1));
            }
        }
    }

    Ok(DecisionTree {
        n_features: d,
        n_train: sample.in_bag().len(),
        params: params.clone(),
        nodes,
    })
}

fn placeholder(id: usize, depth: u32) -> TreeNode {
    TreeNode {
        id,
        depth,
        counts: Vec::new(),
        split: None,
    }
}

impl DecisionTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    /// Routes `x` to a leaf, treating nodes for which `collapsed` returns
    /// true as leaves.
    pub(crate) fn leaf_where<F: Fn(usize) -> bool>(&self, x: &[f64], collapsed: F) -> usize {
        let mut id = 0;
        loop {
            let node = &self.nodes[id];
            match &node.split {
                None => return id,
                Some(_) if collapsed(id) => return id,
                Some(s) => {
                    id = if x[s.feature] <= s.threshold {
                        s.left
                    } else {
                        s.right
                    };
                }
            }
        }
    }

    /// Leaf reached by `x` in the full (unpruned) tree.
    pub fn leaf_for(&self, x: &[f64]) -> Result<usize> {
        self.check_dim(x)?;
        Ok(self.leaf_where(x, |_| false))
    }

    /// Root-to-leaf node ids visited by `x` in the full tree.
    pub fn path_for(&self, x: &[f64]) -> Vec<usize> {
        let mut id = 0;
        let mut path = vec![0];
        while let Some(s) = &self.nodes[id].split {
            id = if x[s.feature] <= s.threshold {
                s.left
            } else {
                s.right
            };
            path.push(id);
        }
        path
    }

    /// Class-probability vector of a leaf: `counts / n`.
    pub fn leaf_proba(&self, leaf: usize) -> Vec<f64> {
        let node = &self.nodes[leaf];
        let n = node.n() as f64;
        node.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Class probabilities for `x`: the count proportions of its leaf.
    pub fn predict_proba(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.leaf_proba(self.leaf_for(x)?))
    }

    /// Predicted class for `x` (majority of its leaf, lowest index on ties).
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(self.nodes[self.leaf_for(x)?].majority())
    }

    pub(crate) fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Leaf node ids of the branch rooted at `t`.
    pub fn branch_leaves(&self, t: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        let mut stack = vec![t];
        while let Some(id) = stack.pop() {
            match &self.nodes[id].split {
                None => leaves.push(id),
                Some(s) => {
                    stack.push(s.right);
                    stack.push(s.left);
                }
            }
        }
        leaves
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::bootstrap;

    fn one_dim(points: &[(f64, usize)]) -> Dataset {
        let rows: Vec<Vec<f64>> = points.iter().map(|&(x, _)| vec![x]).collect();
        let labels: Vec<usize> = points.iter().map(|&(_, y)| y).collect();
        Dataset::from_numeric(&rows, &labels).unwrap()
    }

    #[test]
    fn gini_examples() {
        assert_eq!(gini(&[10, 0, 0]), 0.0);
        assert_eq!(gini(&[5, 5]), 0.5);
        let diff = (gini(&[50, 50, 50]) - 2.0 / 3.0).abs();
        assert!(diff < 1e-15);
    }

    #[test]
    fn misclassification_examples() {
        assert!((misclassification_rate(&[7, 3]) - 0.3).abs() < 1e-15);
        assert_eq!(misclassification_rate(&[4, 0]), 0.0);
        assert!((misclassification_rate(&[2, 2, 2]) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(misclassified(&[7, 3]), 3);
    }

    #[test]
    fn best_split_simple_line() {
        let ds = one_dim(&[(1.0, 0), (2.0, 0), (3.0, 1), (4.0, 1)]);
        let rows: Vec<usize> = (0..4).collect();
        let split = best_split(&ds, &rows, &[0], SplitMode::Exact, 0).unwrap();
        assert_eq!(split.feature, 0);
        assert_eq!(split.threshold, 2.5);
        assert!((split.impurity_decrease - 0.5).abs() < 1e-15);
    }

    #[test]
    fn best_split_constant_feature_is_none() {
        let ds = one_dim(&[(3.0, 0), (3.0, 1), (3.0, 0)]);
        let rows: Vec<usize> = (0..3).collect();
        assert!(best_split(&ds, &rows, &[0], SplitMode::Exact, 0).is_none());
        assert!(best_split(&ds, &rows, &[0], SplitMode::RandomThreshold, 0).is_none());
    }

    #[test]
    fn best_split_prefers_separating_feature() {
        // Feature 0 constant, feature 1 separates the classes.
        let rows_data = vec![
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![1.0, 2.0],
            vec![1.0, 3.0],
        ];
        let ds = Dataset::from_numeric(&rows_data, &[0, 0, 1, 1]).unwrap();
        let rows: Vec<usize> = (0..4).collect();
        let split = best_split(&ds, &rows, &[0, 1], SplitMode::Exact, 0).unwrap();
        assert_eq!(split.feature, 1);
        assert_eq!(split.threshold, 1.5);
    }

    #[test]
    fn grow_pure_sample_is_single_leaf() {
        let ds = one_dim(&[(1.0, 0), (2.0, 0), (3.0, 0), (4.0, 1)]);
        // All in-bag rows share class 0.
        let sample = IndexSample::from_in_bag(vec![0, 1, 2, 2], 4).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 9);
        let tree = grow(&ds, &sample, &params).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(tree.root().counts, vec![4, 0]);
    }

    #[test]
    fn grow_is_deterministic() {
        let ds = one_dim(&[
            (0.3, 0),
            (1.2, 1),
            (2.0, 0),
            (3.7, 1),
            (4.4, 1),
            (5.0, 0),
        ]);
        let sample = bootstrap(6, 11);
        let params = GrowthParams::for_flavor(Flavor::Rf, 1, 77);
        let a = grow(&ds, &sample, &params).unwrap();
        let b = grow(&ds, &sample, &params).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn value_on_threshold_routes_left() {
        let ds = one_dim(&[(1.0, 0), (3.0, 1)]);
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(2), &params).unwrap();
        let split = tree.root().split.clone().unwrap();
        assert_eq!(split.threshold, 2.0);
        let leaf = tree.leaf_for(&[2.0]).unwrap();
        assert_eq!(leaf, split.left);
    }

    #[test]
    fn single_leaf_probabilities() {
        let ds = one_dim(&[(5.0, 0), (5.0, 0), (5.0, 0), (5.0, 1)]);
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(4), &params).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.predict_proba(&[1.0]).unwrap(), vec![0.75, 0.25]);
    }

    #[test]
    fn depth_two_counts() {
        // Two binary features, four classes: forces a full depth-2 tree.
        let rows = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        let ds = Dataset::from_numeric(&rows, &[0, 1, 2, 3]).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 2, 0);
        let tree = grow(&ds, &IndexSample::identity(4), &params).unwrap();
        assert_eq!(tree.node_count(), 7);
        assert_eq!(tree.leaf_count(), 4);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let ds = one_dim(&[(1.0, 0), (3.0, 1)]);
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(2), &params).unwrap();
        assert!(matches!(
            tree.predict_proba(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }
}
