//! Weakest-link cost-complexity pruning.
//!
//! For a tree T with training risk `R(T) = sum_{leaves} r(t) p(t)` the
//! penalized risk is `R_a(T) = R(T) + a * |leaves(T)|`. Collapsing the branch
//! at node t trades risk for size at rate
//!
//! ```text
//! g(t) = (R(t) - R(T_t)) / (|leaves(T_t)| - 1)
//! ```
//!
//! Repeatedly collapsing every node attaining the minimal g yields a nested
//! subtree family indexed by increasing alpha; the subtree recorded for each
//! alpha interval minimizes `R_a` over all pruned subtrees.
//!
//! Risks here are ratios of integers (misclassified counts over the training
//! size), so link strengths are kept as exact rationals ([`Alpha`]) and all
//! comparisons are integer cross-multiplications; `f64` appears only at the
//! API boundary.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::tree::{misclassified, DecisionTree, TreeNode};

/// Exact nonnegative rational used for cost-complexity parameters.
///
/// Stored normalized (gcd 1, positive denominator), so equal values have
/// equal representations and derived `Eq`/`Hash` are sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Alpha {
        assert!(den > 0, "alpha denominator must be positive");
        let g = gcd(num, den);
        if g == 0 {
            Alpha { num: 0, den: 1 }
        } else {
            Alpha {
                num: num / g,
                den: den / g,
            }
        }
    }

    pub fn zero() -> Alpha {
        Alpha { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact midpoint of two alphas.
    pub fn midpoint(a: Alpha, b: Alpha) -> Alpha {
        let num = a.num as u128 * b.den as u128 + b.num as u128 * a.den as u128;
        let den = 2 * a.den as u128 * b.den as u128;
        let g = gcd_u128(num, den);
        let (num, den) = (num / g, den / g);
        assert!(num <= u64::MAX as u128 && den <= u64::MAX as u128);
        Alpha {
            num: num as u64,
            den: den as u64,
        }
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// One pruning step: the nodes collapsed when alpha reaches `alpha`, plus the
/// size of the resulting subtree.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneStep {
    pub alpha: Alpha,
    /// Maximal node ids collapsed to leaves at this step (sorted). Empty for
    /// step 0 of a tree with no free collapses.
    pub collapsed: Vec<usize>,
    pub leaf_count: usize,
    pub node_count: usize,
}

/// The nested weakest-link subtree family of one tree.
///
/// Step 0 has alpha 0; later steps carry strictly increasing alphas and
/// strictly shrinking trees down to the root stump. The subtree at step `s`
/// is the base tree with every node collapsed in steps `<= s` turned into a
/// leaf. Subtrees are exposed as step indices against the base tree rather
/// than materialized copies.
#[derive(Debug, Clone, PartialEq)]
pub struct PrunedSequence {
    steps: Vec<PruneStep>,
    /// Per node: the step at which the node itself was collapsed.
    collapse_step: Vec<Option<u32>>,
    base_nodes: usize,
}

/// Training risk contribution of a single node: `r(t) * p(t)`.
pub fn node_risk(node: &TreeNode, n_train: usize) -> f64 {
    misclassified(&node.counts) as f64 / n_train as f64
}

/// Training risk of the branch rooted at `t`: sum of `node_risk` over its
/// leaves.
pub fn subtree_risk(tree: &DecisionTree, t: usize) -> Result<f64> {
    if t >= tree.nodes.len() {
        return Err(Error::UnknownNode(t));
    }
    let total: u64 = tree
        .branch_leaves(t)
        .into_iter()
        .map(|leaf| misclassified(&tree.nodes[leaf].counts))
        .sum();
    Ok(total as f64 / tree.n_train as f64)
}

/// Link strength `g(t) = (R(t) - R(T_t)) / (|leaves(T_t)| - 1)` of an
/// internal node; the weakest link is the node minimizing it.
pub fn link_strength(tree: &DecisionTree, t: usize) -> Result<f64> {
    if t >= tree.nodes.len() {
        return Err(Error::UnknownNode(t));
    }
    if tree.nodes[t].is_leaf() {
        return Err(Error::NotInternal(t));
    }
    let leaves = tree.branch_leaves(t);
    let branch_mis: u64 = leaves
        .iter()
        .map(|&leaf| misclassified(&tree.nodes[leaf].counts))
        .sum();
    let node_mis = misclassified(&tree.nodes[t].counts);
    let alpha = Alpha::new(
        node_mis - branch_mis,
        tree.n_train as u64 * (leaves.len() as u64 - 1),
    );
    Ok(alpha.to_f64())
}

/// Builds the weakest-link sequence of `tree`.
///
/// Every iteration collapses all internal nodes attaining the minimal link
/// strength (simultaneously, keeping the sequence canonical); iterations
/// whose minimum equals the previous step's alpha merge into that step, so
/// recorded alphas are strictly increasing. Zero-strength collapses merge
/// into step 0.
pub fn weakest_link_sequence(tree: &DecisionTree) -> PrunedSequence {
    let n_nodes = tree.nodes.len();
    let n_train = tree.n_train as u64;

    let mut parent: Vec<Option<usize>> = vec![None; n_nodes];
    for node in &tree.nodes {
        if let Some(s) = &node.split {
            parent[s.left] = Some(node.id);
            parent[s.right] = Some(node.id);
        }
    }

    let node_mis: Vec<u64> = tree.nodes.iter().map(|n| misclassified(&n.counts)).collect();

    // Per-branch statistics over the *current* pruned tree. Ids are in
    // breadth-first order, so a reverse scan visits children before parents.
    let mut branch_mis = vec![0u64; n_nodes];
    let mut branch_leaves = vec![0u64; n_nodes];
    let mut branch_nodes = vec![0u64; n_nodes];
    for id in (0..n_nodes).rev() {
        match &tree.nodes[id].split {
            None => {
                branch_mis[id] = node_mis[id];
                branch_leaves[id] = 1;
                branch_nodes[id] = 1;
            }
            Some(s) => {
                branch_mis[id] = branch_mis[s.left] + branch_mis[s.right];
                branch_leaves[id] = branch_leaves[s.left] + branch_leaves[s.right];
                branch_nodes[id] = 1 + branch_nodes[s.left] + branch_nodes[s.right];
            }
        }
    }

    let mut alive = vec![true; n_nodes];
    let mut collapsed = vec![false; n_nodes];
    let mut collapse_step: Vec<Option<u32>> = vec![None; n_nodes];

    let mut steps = vec![PruneStep {
        alpha: Alpha::zero(),
        collapsed: Vec::new(),
        leaf_count: branch_leaves[0] as usize,
        node_count: branch_nodes[0] as usize,
    }];

    loop {
        let candidates: Vec<usize> = (0..n_nodes)
            .filter(|&id| alive[id] && !collapsed[id] && !tree.nodes[id].is_leaf())
            .collect();
        if candidates.is_empty() {
            break;
        }

        let strength = |id: usize| -> Alpha {
            Alpha::new(
                node_mis[id] - branch_mis[id],
                n_train * (branch_leaves[id] - 1),
            )
        };
        let min_alpha = candidates.iter().map(|&id| strength(id)).min().unwrap();

        let mut is_minimizer = vec![false; n_nodes];
        for &id in &candidates {
            if strength(id) == min_alpha {
                is_minimizer[id] = true;
            }
        }
        // Keep only minimizers without a minimizing ancestor; collapsing the
        // ancestor subsumes the descendant.
        let maximal: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&id| {
                if !is_minimizer[id] {
                    return false;
                }
                let mut up = parent[id];
                while let Some(p) = up {
                    if is_minimizer[p] {
                        return false;
                    }
                    up = parent[p];
                }
                true
            })
            .collect();

        // Merge with the previous step when the minimum did not increase.
        let merge = steps.last().unwrap().alpha == min_alpha;
        debug_assert!(merge || min_alpha > steps.last().unwrap().alpha);
        let step_index = if merge { steps.len() - 1 } else { steps.len() } as u32;

        for &t in &maximal {
            collapsed[t] = true;
            collapse_step[t] = Some(step_index);
            // Everything strictly below t leaves the tree.
            let mut stack = vec![t];
            while let Some(id) = stack.pop() {
                if let Some(s) = &tree.nodes[id].split {
                    for child in [s.left, s.right] {
                        alive[child] = false;
                        stack.push(child);
                    }
                }
            }
            let d_mis = node_mis[t] as i64 - branch_mis[t] as i64;
            let d_leaves = 1 - branch_leaves[t] as i64;
            let d_nodes = 1 - branch_nodes[t] as i64;
            branch_mis[t] = node_mis[t];
            branch_leaves[t] = 1;
            branch_nodes[t] = 1;
            let mut up = parent[t];
            while let Some(p) = up {
                branch_mis[p] = (branch_mis[p] as i64 + d_mis) as u64;
                branch_leaves[p] = (branch_leaves[p] as i64 + d_leaves) as u64;
                branch_nodes[p] = (branch_nodes[p] as i64 + d_nodes) as u64;
                up = parent[p];
            }
        }

        let leaf_count = branch_leaves[0] as usize;
        let node_count = branch_nodes[0] as usize;
        if merge {
            let last = steps.last_mut().unwrap();
            last.collapsed.extend(maximal);
            last.collapsed.sort_unstable();
            last.leaf_count = leaf_count;
            last.node_count = node_count;
        } else {
            let mut ids = maximal;
            ids.sort_unstable();
            steps.push(PruneStep {
                alpha: min_alpha,
                collapsed: ids,
                leaf_count,
                node_count,
            });
        }
    }

    PrunedSequence {
        steps,
        collapse_step,
        base_nodes: n_nodes,
    }
}

impl PrunedSequence {
    pub fn steps(&self) -> &[PruneStep] {
        &self.steps
    }

    /// Number of steps; at least 1 (step 0 always exists).
    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn base_nodes(&self) -> usize {
        self.base_nodes
    }

    /// Largest step whose alpha is `<= threshold`. Step 0 has alpha 0, so
    /// this always exists for nonnegative thresholds.
    pub fn step_for_alpha(&self, threshold: Alpha) -> usize {
        self.steps.partition_point(|s| s.alpha <= threshold) - 1
    }

    /// Whether `node` is collapsed to a leaf in the subtree of `step`.
    pub fn is_collapsed_at(&self, node: usize, step: usize) -> bool {
        self.collapse_step[node].is_some_and(|s| s as usize <= step)
    }

    /// All node ids collapsed in the subtree at `step` (sorted).
    pub fn collapsed_union(&self, step: usize) -> Vec<usize> {
        (0..self.base_nodes)
            .filter(|&id| self.is_collapsed_at(id, step))
            .collect()
    }

    /// Leaf of `x` in the subtree at `step`.
    pub fn leaf_at_step(&self, tree: &DecisionTree, x: &[f64], step: usize) -> usize {
        tree.leaf_where(x, |id| self.is_collapsed_at(id, step))
    }

    /// Resolves a full-tree root-to-leaf path into the effective leaf as a
    /// function of the step index: returns `(step, leaf)` pairs ascending in
    /// step, where `leaf` is the effective leaf from that step until the
    /// next pair. The first pair always has step 0.
    pub fn path_transitions(&self, path: &[usize]) -> Vec<(u32, usize)> {
        let mut boundaries: Vec<(u32, usize)> = Vec::new();
        for (i, &id) in path.iter().enumerate() {
            let leafed_at = if i + 1 == path.len() {
                Some(0)
            } else {
                self.collapse_step[id]
            };
            if let Some(s) = leafed_at {
                boundaries.push((s, id));
                if s == 0 {
                    break;
                }
            }
        }
        // Ancestors collapse strictly later than descendants, so reversing
        // gives ascending steps starting at the deepest reachable node.
        boundaries.reverse();
        debug_assert_eq!(boundaries.first().map(|&(s, _)| s), Some(0));
        boundaries
    }

    /// 0/1 misclassification count of every step's subtree on the given
    /// validation rows.
    pub fn step_errors(&self, tree: &DecisionTree, ds: &Dataset, rows: &[usize]) -> Vec<u64> {
        let mut diff = vec![0i64; self.steps.len() + 1];
        for &row in rows {
            let path = tree.path_for(ds.row(row));
            let transitions = self.path_transitions(&path);
            for (i, &(from, leaf)) in transitions.iter().enumerate() {
                let wrong = tree.nodes[leaf].majority() != ds.label(row);
                if wrong {
                    let until = transitions
                        .get(i + 1)
                        .map_or(self.steps.len(), |&(s, _)| s as usize);
                    diff[from as usize] += 1;
                    diff[until] -= 1;
                }
            }
        }
        let mut errors = Vec::with_capacity(self.steps.len());
        let mut acc = 0i64;
        for s in 0..self.steps.len() {
            acc += diff[s];
            errors.push(acc as u64);
        }
        errors
    }
}

/// Picks the subtree with the fewest validation errors; ties go to the
/// largest alpha (smallest tree). Returns `(step index, error count)`.
pub fn select_best_subtree(
    seq: &PrunedSequence,
    tree: &DecisionTree,
    ds: &Dataset,
    val_rows: &[usize],
) -> Result<(usize, u64)> {
    if val_rows.is_empty() {
        return Err(Error::EmptyValidation);
    }
    let errors = seq.step_errors(tree, ds, val_rows);
    let mut best = 0;
    for (s, &e) in errors.iter().enumerate() {
        if e <= errors[best] {
            best = s;
        }
    }
    Ok((best, errors[best]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Dataset, IndexSample};
    use crate::tree::{grow, Flavor, GrowthParams};

    /// The 8-sample, 3-node tree: root counts [4,4], children [3,1] / [1,3].
    fn three_node_tree() -> (Dataset, DecisionTree) {
        let rows: Vec<Vec<f64>> = (0..8)
            .map(|i| vec![if i < 4 { 0.0 } else { 1.0 }])
            .collect();
        let labels = vec![0, 0, 0, 1, 0, 1, 1, 1];
        let ds = Dataset::from_numeric(&rows, &labels).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(8), &params).unwrap();
        assert_eq!(tree.node_count(), 3);
        assert_eq!(tree.root().counts, vec![4, 4]);
        (ds, tree)
    }

    #[test]
    fn alpha_ordering_and_normalization() {
        assert_eq!(Alpha::new(2, 8), Alpha::new(1, 4));
        assert!(Alpha::new(1, 4) < Alpha::new(1, 3));
        assert!(Alpha::zero() < Alpha::new(1, 1000));
        assert_eq!(Alpha::midpoint(Alpha::new(1, 4), Alpha::new(1, 2)), Alpha::new(3, 8));
        assert_eq!(Alpha::new(1, 2).to_f64(), 0.5);
    }

    #[test]
    fn risks_on_three_node_tree() {
        let (_, tree) = three_node_tree();
        assert_eq!(node_risk(tree.root(), 8), 0.5);
        assert_eq!(node_risk(&tree.nodes[1], 8), 0.125);
        assert_eq!(subtree_risk(&tree, 0).unwrap(), 0.25);
        assert_eq!(subtree_risk(&tree, 1).unwrap(), 0.125);
        assert_eq!(link_strength(&tree, 0).unwrap(), 0.25);
        assert!(matches!(link_strength(&tree, 1), Err(Error::NotInternal(1))));
        assert!(matches!(subtree_risk(&tree, 9), Err(Error::UnknownNode(9))));
    }

    #[test]
    fn pure_leaf_has_zero_risk() {
        let pure = TreeNode {
            id: 0,
            depth: 0,
            counts: vec![5, 0],
            split: None,
        };
        assert_eq!(node_risk(&pure, 8), 0.0);
    }

    #[test]
    fn sequence_of_three_node_tree() {
        let (_, tree) = three_node_tree();
        let seq = weakest_link_sequence(&tree);
        assert_eq!(seq.n_steps(), 2);
        assert_eq!(seq.steps()[0].alpha, Alpha::zero());
        assert_eq!(seq.steps()[0].node_count, 3);
        assert_eq!(seq.steps()[1].alpha, Alpha::new(1, 4));
        assert_eq!(seq.steps()[1].collapsed, vec![0]);
        assert_eq!(seq.steps()[1].node_count, 1);
        assert_eq!(seq.steps()[1].leaf_count, 1);
    }

    #[test]
    fn single_leaf_sequence() {
        let ds = Dataset::from_numeric(&[vec![1.0], vec![1.0]], &[0, 1]).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(2), &params).unwrap();
        assert_eq!(tree.node_count(), 1);
        let seq = weakest_link_sequence(&tree);
        assert_eq!(seq.n_steps(), 1);
        assert_eq!(seq.steps()[0].alpha, Alpha::zero());
        assert_eq!(seq.steps()[0].node_count, 1);
    }

    #[test]
    fn select_prefers_smallest_tree_on_ties() {
        let (ds, tree) = three_node_tree();
        let seq = weakest_link_sequence(&tree);
        // Rows 0 and 1 (x=0, class 0) are fit by the full tree and by the
        // stump alike; the stump (largest alpha) wins the tie.
        let (step, errors) = select_best_subtree(&seq, &tree, &ds, &[0, 1]).unwrap();
        assert_eq!(errors, 0);
        assert_eq!(step, seq.n_steps() - 1);
    }

    #[test]
    fn select_collapses_when_validation_contradicts_leaves() {
        // In-bag rows x=0 -> class 0, x=1 -> class 1; validation flipped.
        let rows: Vec<Vec<f64>> = vec![
            vec![0.0],
            vec![0.0],
            vec![0.0],
            vec![1.0],
            vec![1.0],
            vec![1.0],
            vec![0.0],
            vec![1.0],
        ];
        let labels = vec![0, 0, 0, 1, 1, 1, 1, 0];
        let ds = Dataset::from_numeric(&rows, &labels).unwrap();
        let sample = IndexSample::from_in_bag(vec![0, 1, 2, 3, 4, 5], 8).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &sample, &params).unwrap();
        assert_eq!(tree.node_count(), 3);
        let seq = weakest_link_sequence(&tree);
        // OOB rows 6 and 7 are labeled opposite to the leaves' majorities:
        // full tree errs on both, the stump only on one.
        let (step, errors) = select_best_subtree(&seq, &tree, &ds, &[6, 7]).unwrap();
        assert_eq!(step, seq.n_steps() - 1);
        assert_eq!(errors, 1);
    }

    #[test]
    fn select_single_step_sequence() {
        let ds = Dataset::from_numeric(&[vec![1.0], vec![1.0]], &[0, 1]).unwrap();
        let params = GrowthParams::for_flavor(Flavor::Bt, 1, 0);
        let tree = grow(&ds, &IndexSample::identity(2), &params).unwrap();
        let seq = weakest_link_sequence(&tree);
        let (step, _) = select_best_subtree(&seq, &tree, &ds, &[0, 1]).unwrap();
        assert_eq!(step, 0);
    }

    #[test]
    fn empty_validation_is_an_error() {
        let (ds, tree) = three_node_tree();
        let seq = weakest_link_sequence(&tree);
        assert!(matches!(
            select_best_subtree(&seq, &tree, &ds, &[]),
            Err(Error::EmptyValidation)
        ));
    }

    #[test]
    fn step_for_alpha_picks_largest_below_threshold() {
        let (_, tree) = three_node_tree();
        let seq = weakest_link_sequence(&tree);
        assert_eq!(seq.step_for_alpha(Alpha::zero()), 0);
        assert_eq!(seq.step_for_alpha(Alpha::new(1, 5)), 0);
        assert_eq!(seq.step_for_alpha(Alpha::new(1, 4)), 1);
        assert_eq!(seq.step_for_alpha(Alpha::new(1, 1)), 1);
    }
}
