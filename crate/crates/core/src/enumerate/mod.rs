//! Exhaustive enumeration of S_u(k): every way to write a target ratio as a
//! sum of `k` unit fractions admitted by a [`RestrictionProfile`].
//!
//! [`enumerate_reps`] and [`count_reps`] run the pruned search in
//! [`search`]; [`naive_oracle`] is an independent nested-loop enumerator used
//! to cross-check it. Output is always in lexicographic order of the
//! denominator lists, whatever the degree of parallelism.

mod oracle;
mod search;
mod word;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

pub use oracle::{naive_oracle, ORACLE_MAX_PARTS};

use crate::error::{Error, Result};
use crate::exactnum::{Natural, Ratio};
use crate::repr::{Representation, RestrictionProfile};
use search::{Ctx, Rules, Shared, Walker};
use word::Word;

/// Safety limits for exploratory runs. `None` means unlimited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_denominator: Option<Natural>,
    pub max_results: Option<u64>,
    pub node_budget: Option<u64>,
}

impl SearchBounds {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_node_budget(mut self, n: u64) -> Self {
        self.node_budget = Some(n);
        self
    }

    pub fn with_max_results(mut self, n: u64) -> Self {
        self.max_results = Some(n);
        self
    }

    pub fn with_max_denominator(mut self, d: impl Into<Natural>) -> Self {
        self.max_denominator = Some(d.into());
        self
    }

    fn check(&self) -> Result<()> {
        if self.max_denominator.as_ref().is_some_and(Natural::is_zero)
            || self.max_results == Some(0)
            || self.node_budget == Some(0)
        {
            return Err(Error::InvalidArgument("search limits must be positive".into()));
        }
        Ok(())
    }
}

/// Which limit cut a search short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    NodeBudget,
    MaxResults,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::NodeBudget => "node_budget",
            Limit::MaxResults => "max_results",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub reps: Vec<Representation>,
    pub count: u64,
    /// `true` iff `reps` is exactly the admissible set.
    pub complete: bool,
    pub nodes_visited: u64,
    pub stopped_by: Option<Limit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Count {
    pub count: u64,
    pub complete: bool,
    pub nodes_visited: u64,
    pub stopped_by: Option<Limit>,
}

/// Periodic search status, delivered to a [`ProgressHook`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub nodes: u64,
    pub depth: usize,
    pub found: u64,
}

pub type ProgressHook = Arc<dyn Fn(&Progress) + Send + Sync>;

/// How a search runs, as opposed to what it computes.
#[derive(Clone, Default)]
pub struct Execution {
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub threads: usize,
    pub progress: Option<ProgressHook>,
    /// Nodes between progress reports.
    pub progress_every: u64,
}

impl Execution {
    pub fn sequential() -> Self {
        Self::default()
    }

    pub fn parallel(threads: usize) -> Self {
        Execution {
            threads,
            ..Self::default()
        }
    }

    pub fn with_progress(mut self, every: u64, hook: ProgressHook) -> Self {
        self.progress_every = every.max(1);
        self.progress = Some(hook);
        self
    }
}

impl fmt::Debug for Execution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Execution")
            .field("threads", &self.threads)
            .field("progress", &self.progress.is_some())
            .field("progress_every", &self.progress_every)
            .finish()
    }
}

pub fn enumerate_reps(
    target: &Ratio,
    k: usize,
    profile: &RestrictionProfile,
    bounds: &SearchBounds,
) -> Result<EnumerationResult> {
    enumerate_with(target, k, profile, bounds, &Execution::sequential())
}

pub fn count_reps(target: &Ratio, k: usize, profile: &RestrictionProfile, bounds: &SearchBounds) -> Result<Count> {
    count_with(target, k, profile, bounds, &Execution::sequential())
}

pub fn enumerate_with(
    target: &Ratio,
    k: usize,
    profile: &RestrictionProfile,
    bounds: &SearchBounds,
    exec: &Execution,
) -> Result<EnumerationResult> {
    let run = run_search(target, k, profile, bounds, exec, true)?;
    let reps = run
        .results
        .into_iter()
        .map(|d| Representation::from_parts_unchecked(target.clone(), d))
        .collect::<Vec<_>>();
    Ok(EnumerationResult {
        count: reps.len() as u64,
        reps,
        complete: run.stopped_by.is_none(),
        nodes_visited: run.nodes,
        stopped_by: run.stopped_by,
    })
}

pub fn count_with(
    target: &Ratio,
    k: usize,
    profile: &RestrictionProfile,
    bounds: &SearchBounds,
    exec: &Execution,
) -> Result<Count> {
    let run = run_search(target, k, profile, bounds, exec, false)?;
    Ok(Count {
        count: run.count,
        complete: run.stopped_by.is_none(),
        nodes_visited: run.nodes,
        stopped_by: run.stopped_by,
    })
}

struct Run {
    results: Vec<Vec<Natural>>,
    count: u64,
    nodes: u64,
    stopped_by: Option<Limit>,
}

/// Unexpanded subtree handed to a worker.
struct Task {
    a: u128,
    b: u128,
    m: usize,
    lo: u128,
    path: Vec<u128>,
}

fn run_search(
    target: &Ratio,
    k: usize,
    profile: &RestrictionProfile,
    bounds: &SearchBounds,
    exec: &Execution,
    collect: bool,
) -> Result<Run> {
    profile.check()?;
    bounds.check()?;
    if target.is_zero() {
        return Err(Error::InvalidArgument("target must be positive".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let empty = Run {
        results: Vec::new(),
        count: 0,
        nodes: 0,
        stopped_by: None,
    };
    if !profile.parts_parity.admits(k) {
        return Ok(empty);
    }

    let rules = Rules {
        distinct: profile.distinct,
        odd: profile.odd_only,
        max_den: bounds.max_denominator.clone(),
        target_den: target.denom().clone(),
    };
    let progress = exec.progress.clone().map(|h| (exec.progress_every.max(1), h));
    let shared = Shared::new(bounds.node_budget, progress);
    // One extra result tells a truncated run from an exact fit.
    let limit = bounds.max_results.map(|n| n + 1);
    let forbid = &profile.forbid_lcm_divisible_by[..];

    let mut lo = profile.min_denominator.clone();
    if profile.odd_only && lo.is_even() {
        lo = lo + 1u64;
    }

    let root = (
        u128::from_nat(target.numer()),
        u128::from_nat(target.denom()),
        u128::from_nat(&lo),
    );
    let (mut results, mut count) = match root {
        (Some(a), Some(b), Some(lo)) if exec.threads > 1 => {
            let tasks = split_frontier(&shared, &rules, forbid, a, b, k, lo, exec.threads * 16);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(exec.threads)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            let parts: Vec<(Vec<Vec<Natural>>, u64)> = pool.install(|| {
                tasks
                    .into_par_iter()
                    .map(|t| {
                        let mut ctx = Ctx::new(&shared, forbid, collect, limit);
                        Walker::<u128>::new(&mut ctx, &rules, t.path).node(&t.a, &t.b, t.m, &t.lo);
                        (ctx.results, ctx.count)
                    })
                    .collect()
            });
            let mut results = Vec::new();
            let mut count = 0;
            for (r, c) in parts {
                results.extend(r);
                count += c;
            }
            (results, count)
        }
        (Some(a), Some(b), Some(lo)) => {
            let mut ctx = Ctx::new(&shared, forbid, collect, limit);
            Walker::<u128>::new(&mut ctx, &rules, Vec::new()).node(&a, &b, k, &lo);
            (ctx.results, ctx.count)
        }
        _ => {
            let mut ctx = Ctx::new(&shared, forbid, collect, limit);
            Walker::<Natural>::new(&mut ctx, &rules, Vec::new()).node(target.numer(), target.denom(), k, &lo);
            (ctx.results, ctx.count)
        }
    };

    results.sort();
    let mut stopped_by = None;
    if shared.budget_hit.load(std::sync::atomic::Ordering::Relaxed) {
        stopped_by = Some(Limit::NodeBudget);
    }
    if let Some(max) = bounds.max_results {
        if count > max {
            results.truncate(max as usize);
            count = max;
            stopped_by.get_or_insert(Limit::MaxResults);
        }
    }
    Ok(Run {
        results,
        count,
        nodes: shared.nodes_visited(),
        stopped_by,
    })
}

/// Expands the top of the tree breadth-first, in order, until there are
/// enough independent subtrees to keep `want` workers busy. Every expanded
/// frame is counted as a visited node exactly as the sequential walk would.
#[allow(clippy::too_many_arguments)]
fn split_frontier(
    shared: &Shared,
    rules: &Rules,
    forbid: &[Natural],
    a: u128,
    b: u128,
    k: usize,
    lo: u128,
    want: usize,
) -> Vec<Task> {
    let mut tasks = vec![Task {
        a,
        b,
        m: k,
        lo,
        path: Vec::new(),
    }];
    let mut ctx = Ctx::new(shared, forbid, false, None);
    for _ in 0..4 {
        if tasks.len() >= want {
            break;
        }
        let mut next = Vec::with_capacity(tasks.len() * 4);
        let mut progressed = false;
        for t in tasks {
            match expand(rules, &t) {
                Some(children) if !ctx.halted => {
                    if ctx.tick(t.path.len()) {
                        progressed = true;
                        next.extend(children);
                    } else {
                        next.push(t);
                    }
                }
                _ => next.push(t),
            }
        }
        tasks = next;
        if !progressed {
            break;
        }
    }
    tasks
}

/// Children of a frame with at least three parts left, or `None` if it must
/// be left to a worker (too few parts, or arithmetic past `u128`).
fn expand(rules: &Rules, t: &Task) -> Option<Vec<Task>> {
    if t.m < 3 {
        return None;
    }
    if rules.odd && !search::odd_feasible(&t.a, &t.b, t.m) {
        return Some(Vec::new());
    }
    let step = if rules.odd { 2 } else { 1 };
    let max_den = rules.max_den.as_ref().and_then(Natural::to_u128);
    let (vmin, vmax) = match search::frame_range(rules, max_den.as_ref(), &t.a, &t.b, t.m, &t.lo) {
        Ok(Some(r)) => r,
        Ok(None) => return Some(Vec::new()),
        Err(_) => return None,
    };
    let mut out = Vec::new();
    let mut v = vmin;
    while v <= vmax {
        let num = t.a.checked_mul(v)? - t.b;
        let den = t.b.checked_mul(v)?;
        let g = Word::gcd(&num, &den);
        let mut path = t.path.clone();
        path.push(v);
        out.push(Task {
            a: num / g,
            b: den / g,
            m: t.m - 1,
            lo: if rules.distinct { v + 1 } else { v },
            path,
        });
        v += step;
    }
    Some(out)
}

#[cfg(test)]
mod tests;
