//! The first-part γ tree and the s(k) count it yields.
//!
//! Starting from `(u)`, every stage splits only the *active* part, the
//! `u + d` child of the previous split, leaving the `(u/d)(u + d)` parts as
//! an untouched tail. The active part stays active even when a tail part is
//! numerically smaller (e.g. `(6) → (12,12)`): this is the reading under
//! which s(k) = Σ over stage-(k−1) leaves of σ_0(active) counts the tree.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactnum::{self, Natural, Ratio};
use crate::repr::Representation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub active: Natural,
    pub tail: Vec<Natural>,
    /// Index into the previous level; `None` at the root.
    pub parent: Option<usize>,
    /// Divisor used to reach this node from its parent.
    pub d: Option<Natural>,
}

impl TreeNode {
    pub fn representation(&self, target: &Ratio) -> Representation {
        let mut d = self.tail.clone();
        d.push(self.active.clone());
        d.sort();
        Representation::from_parts_unchecked(target.clone(), d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstPartTree {
    pub root: Natural,
    /// `levels[i]` holds the nodes with `i + 1` parts.
    pub levels: Vec<Vec<TreeNode>>,
}

impl FirstPartTree {
    /// Current stage, i.e. the part count of the deepest level.
    pub fn stage(&self) -> usize {
        self.levels.len()
    }

    pub fn leaves(&self) -> &[TreeNode] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone)]
pub struct FirstPartOutcome {
    pub tree: FirstPartTree,
    /// Distinct stage-k representations of `1/u`, sorted.
    pub representations: Vec<Representation>,
    /// Number of root-to-leaf paths, s(k).
    pub s_k: Natural,
    /// Representations reached by more than one path, with their multiplicity.
    pub collisions: Vec<(Representation, usize)>,
}

pub fn first_part_tree(u: &Natural, k: usize) -> Result<FirstPartOutcome> {
    if u.is_zero() {
        return Err(Error::Zero("first_part_tree"));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("first_part_tree needs k ≥ 2, got {k}")));
    }
    let target = Ratio::unit(u)?;
    let mut levels = vec![vec![TreeNode {
        active: u.clone(),
        tail: Vec::new(),
        parent: None,
        d: None,
    }]];
    for _ in 1..k {
        let prev = levels.last().expect("root level");
        let mut next = Vec::new();
        for (pi, node) in prev.iter().enumerate() {
            for d in exactnum::divisors(&node.active)? {
                let grown = &node.active + &d;
                let mut tail = node.tail.clone();
                tail.push(&(&node.active / &d) * &grown);
                next.push(TreeNode {
                    active: grown,
                    tail,
                    parent: Some(pi),
                    d: Some(d),
                });
            }
        }
        levels.push(next);
    }
    let tree = FirstPartTree {
        root: u.clone(),
        levels,
    };
    let all: Vec<Representation> = tree.leaves().iter().map(|n| n.representation(&target)).collect();
    let collisions = collisions(&all);
    let mut representations = all.clone();
    representations.sort();
    representations.dedup();
    Ok(FirstPartOutcome {
        s_k: Natural::from(all.len()),
        tree,
        representations,
        collisions,
    })
}

/// Entries occurring more than once, with their counts, in sorted order.
pub fn collisions(reps: &[Representation]) -> Vec<(Representation, usize)> {
    let mut seen: BTreeMap<&Representation, usize> = BTreeMap::new();
    for r in reps {
        *seen.entry(r).or_default() += 1;
    }
    seen.into_iter()
        .filter(|(_, c)| *c > 1)
        .map(|(r, c)| (r.clone(), c))
        .collect()
}

/// s(k) computed over active-part values only: a node with active value `f`
/// branches to `f + d` for every `d | f`, and s(k) is the number of paths
/// of length `k − 1` from `u`.
pub fn lower_bound_s(u: &Natural, k: usize) -> Result<Natural> {
    if u.is_zero() {
        return Err(Error::Zero("lower_bound_s"));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("lower_bound_s needs k ≥ 2, got {k}")));
    }
    let mut memo = HashMap::new();
    paths(u, k - 1, &mut memo)
}

fn paths(f: &Natural, steps: usize, memo: &mut HashMap<(Natural, usize), Natural>) -> Result<Natural> {
    if steps == 0 {
        return Ok(Natural::one());
    }
    if steps == 1 {
        return exactnum::divisor_count(f);
    }
    if let Some(v) = memo.get(&(f.clone(), steps)) {
        return Ok(v.clone());
    }
    let mut total = Natural::zero();
    for d in exactnum::divisors(f)? {
        total = total + paths(&(f + &d), steps - 1, memo)?;
    }
    memo.insert((f.clone(), steps), total.clone());
    Ok(total)
}
