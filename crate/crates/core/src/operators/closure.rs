//! Breadth-first closure of a representation under a set of operators,
//! reachability gaps against exhaustive enumeration, and coprime paths.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::gamma::{gamma_split, GammaChoice};
use super::oswap::{o_swap_at, OParams};
use crate::enumerate::{enumerate_reps, SearchBounds};
use crate::error::{Error, Result};
use crate::exactnum::{self, Natural};
use crate::repr::{Representation, RestrictionProfile};

/// Operators a closure may apply. γ may act on any part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OperatorSet {
    pub gamma: bool,
    pub o: bool,
}

impl OperatorSet {
    pub const GAMMA: OperatorSet = OperatorSet { gamma: true, o: false };
    pub const O: OperatorSet = OperatorSet { gamma: false, o: true };
    pub const ALL: OperatorSet = OperatorSet { gamma: true, o: true };
}

/// Comma-separated operator names: `gamma`, `o`.
impl FromStr for OperatorSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = OperatorSet::default();
        for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match name {
                "gamma" => out.gamma = true,
                "o" | "O" => out.o = true,
                other => return Err(Error::Parse(format!("unknown operator {other:?}"))),
            }
        }
        if !out.gamma && !out.o {
            return Err(Error::Parse("empty operator set".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.gamma, self.o) {
            (true, true) => f.write_str("gamma,o"),
            (true, false) => f.write_str("gamma"),
            (false, true) => f.write_str("o"),
            (false, false) => f.write_str(""),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Gamma(GammaChoice),
    O { params: OParams, pair_index: usize },
}

impl Operator {
    pub fn apply(&self, rep: &Representation) -> Result<Representation> {
        match self {
            Operator::Gamma(c) => gamma_split(rep, c),
            Operator::O { params, pair_index } => o_swap_at(rep, params, *pair_index),
        }
    }
}

/// One edge of a closure graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorApplication {
    pub op: Operator,
    pub from: Representation,
    pub to: Representation,
}

impl Ord for OperatorApplication {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.from, &self.to, &self.op).cmp(&(&other.from, &other.to, &other.op))
    }
}

impl PartialOrd for OperatorApplication {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every admissible single application to `rep`, in a fixed order: γ on each
/// distinct part value by ascending divisor, then O on each `(s, rs)` pair.
pub fn applications(
    rep: &Representation,
    ops: OperatorSet,
    max_parts: Option<usize>,
) -> Result<Vec<OperatorApplication>> {
    let d = rep.denoms();
    let mut out = Vec::new();
    if ops.gamma && max_parts.is_none_or(|m| rep.len() < m) {
        for (i, u) in d.iter().enumerate() {
            if i > 0 && d[i - 1] == *u {
                continue;
            }
            for div in exactnum::divisors(u)? {
                let op = Operator::Gamma(GammaChoice { part_index: i, d: div });
                out.push(OperatorApplication {
                    to: op.apply(rep)?,
                    op,
                    from: rep.clone(),
                });
            }
        }
    }
    if ops.o {
        let mut seen = HashSet::new();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                if !seen.insert((&d[i], &d[j])) {
                    continue;
                }
                if let Some(params) = OParams::for_pair(&d[i], &d[j]) {
                    let op = Operator::O { params, pair_index: 0 };
                    out.push(OperatorApplication {
                        to: op.apply(rep)?,
                        op,
                        from: rep.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureLimits {
    pub max_depth: usize,
    pub max_parts: Option<usize>,
    /// Cap on operator applications evaluated.
    pub node_budget: Option<u64>,
}

impl ClosureLimits {
    pub fn depth(max_depth: usize) -> Self {
        ClosureLimits {
            max_depth,
            max_parts: None,
            node_budget: None,
        }
    }

    pub fn with_max_parts(mut self, k: usize) -> Self {
        self.max_parts = Some(k);
        self
    }

    pub fn with_node_budget(mut self, n: u64) -> Self {
        self.node_budget = Some(n);
        self
    }
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// Seed included; sorted.
    pub reachable: Vec<Representation>,
    /// Sorted by `(from, to, op)`.
    pub edges: Vec<OperatorApplication>,
    /// A level produced nothing new: the closure is a fixpoint.
    pub frontier_exhausted: bool,
    /// Applications whose result had already been reached.
    pub duplicates_detected: u64,
    /// `false` when the node budget cut the closure short.
    pub complete: bool,
}

pub fn closure(seed: &Representation, ops: OperatorSet, limits: &ClosureLimits) -> Result<ClosureResult> {
    let mut visited: HashSet<Representation> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];
    let mut edges = Vec::new();
    let mut duplicates = 0u64;
    let mut evaluated = 0u64;
    let mut complete = true;

    'levels: for _ in 0..limits.max_depth {
        if frontier.is_empty() {
            break;
        }
        let expanded: Vec<Vec<OperatorApplication>> = frontier
            .par_iter()
            .map(|r| applications(r, ops, limits.max_parts))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for app in expanded.into_iter().flatten() {
            evaluated += 1;
            if limits.node_budget.is_some_and(|b| evaluated > b) {
                complete = false;
                break 'levels;
            }
            if visited.insert(app.to.clone()) {
                next.push(app.to.clone());
            } else {
                duplicates += 1;
            }
            edges.push(app);
        }
        frontier = next;
    }
    edges.sort();
    let mut reachable: Vec<Representation> = visited.into_iter().collect();
    reachable.sort();
    Ok(ClosureResult {
        reachable,
        edges,
        frontier_exhausted: complete && frontier.is_empty(),
        duplicates_detected: duplicates,
        complete,
    })
}

#[derive(Debug, Clone)]
pub struct GapReport {
    /// Representations of `1/u` with `k` parts the closure never reached.
    pub missing: Vec<Representation>,
    pub enumerated: u64,
    pub reached: u64,
    pub complete: bool,
}

/// S_u(k) minus the `k`-part representations reachable from `(u)`.
///
/// `limits.max_parts` is forced to `k`.
pub fn find_unreachable(
    u: &Natural,
    k: usize,
    ops: OperatorSet,
    limits: &ClosureLimits,
    bounds: &SearchBounds,
) -> Result<GapReport> {
    let seed = Representation::single(u.clone())?;
    let all = enumerate_reps(seed.target(), k, &RestrictionProfile::unrestricted(), bounds)?;
    let limits = ClosureLimits {
        max_parts: Some(k),
        ..*limits
    };
    let cl = closure(&seed, ops, &limits)?;
    let reached: HashSet<&Representation> = cl.reachable.iter().filter(|r| r.len() == k).collect();
    let missing = all.reps.iter().filter(|r| !reached.contains(r)).cloned().collect();
    Ok(GapReport {
        missing,
        enumerated: all.count,
        reached: reached.len() as u64,
        complete: all.complete && cl.complete,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimePath {
    pub steps: Vec<OperatorApplication>,
    /// Smallest denominator of the final representation coprime to every
    /// denominator of the seed.
    pub new_denominator: Natural,
}

/// Shallowest operator sequence from `seed` whose result holds a
/// denominator coprime to all of the seed's. `Ok(None)` if there is none
/// within `max_depth`.
pub fn coprime_path_search(
    seed: &Representation,
    ops: OperatorSet,
    max_depth: usize,
    node_budget: Option<u64>,
) -> Result<Option<CoprimePath>> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument("coprime_path_search needs max_depth ≥ 1".into()));
    }
    let coprime = |r: &Representation| -> Option<Natural> {
        r.denoms()
            .iter()
            .find(|v| seed.denoms().iter().all(|s| s.gcd(v).is_one()))
            .cloned()
    };
    let mut parent: HashMap<Representation, OperatorApplication> = HashMap::new();
    let mut visited: HashSet<Representation> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];
    let mut evaluated = 0u64;
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for rep in &frontier {
            for app in applications(rep, ops, None)? {
                evaluated += 1;
                if let Some(b) = node_budget {
                    if evaluated > b {
                        return Err(Error::BudgetExceeded { budget: b });
                    }
                }
                if !visited.insert(app.to.clone()) {
                    continue;
                }
                let found = coprime(&app.to);
                let to = app.to.clone();
                parent.insert(to.clone(), app);
                if let Some(new_denominator) = found {
                    return Ok(Some(CoprimePath {
                        steps: trace(&parent, seed, &to),
                        new_denominator,
                    }));
                }
                next.push(to);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

fn trace(
    parent: &HashMap<Representation, OperatorApplication>,
    seed: &Representation,
    end: &Representation,
) -> Vec<OperatorApplication> {
    let mut steps = Vec::new();
    let mut at = end;
    while at != seed {
        let app = &parent[at];
        steps.push(app.clone());
        at = &app.from;
    }
    steps.reverse();
    steps
}

/// `u²(u+1)² + u(u+1)`, the largest part two γ steps can produce from `(u)`.
pub fn two_step_ceiling(u: &Natural) -> Natural {
    let p = u * &(u + 1u64);
    &(&p * &p) + &p
}
