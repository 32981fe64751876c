//! Reference enumerator: plain nested loops over exact ratios, no pruning
//! beyond the forced bound `m/v ≥ r`, restrictions applied afterwards.
//! Slow on purpose; it shares no search code with the main enumerator.

use super::EnumerationResult;
use crate::error::{Error, Result};
use crate::exactnum::{Natural, Ratio};
use crate::repr::{validate, Representation, RestrictionProfile};

pub const ORACLE_MAX_PARTS: usize = 5;

pub fn naive_oracle(target: &Ratio, k: usize, profile: &RestrictionProfile) -> Result<EnumerationResult> {
    if k == 0 || k > ORACLE_MAX_PARTS {
        return Err(Error::InvalidArgument(format!(
            "naive oracle handles 1..={ORACLE_MAX_PARTS} parts, got {k}"
        )));
    }
    if target.is_zero() {
        return Err(Error::InvalidArgument("target must be positive".into()));
    }
    profile.check()?;
    let mut found = Vec::new();
    let mut path = Vec::with_capacity(k);
    let mut nodes = 0u64;
    let start = profile.min_denominator.clone().max(Natural::one());
    walk(target, k, &start, &mut path, &mut found, &mut nodes);

    let mut reps: Vec<Representation> = found
        .into_iter()
        .map(|d| Representation::canonicalize(target.clone(), d).expect("sum checked"))
        .filter(|r| validate(r, profile).is_empty())
        .collect();
    reps.sort();
    Ok(EnumerationResult {
        count: reps.len() as u64,
        reps,
        complete: true,
        nodes_visited: nodes,
        stopped_by: None,
    })
}

fn walk(
    rest: &Ratio,
    m: usize,
    from: &Natural,
    path: &mut Vec<Natural>,
    found: &mut Vec<Vec<Natural>>,
    nodes: &mut u64,
) {
    *nodes += 1;
    if m == 1 {
        if rest.is_unit_fraction() && rest.denom() >= from {
            path.push(rest.denom().clone());
            found.push(path.clone());
            path.pop();
        }
        return;
    }
    if rest.is_zero() {
        return;
    }
    // m parts each at most 1/v must reach `rest`: v ≤ m·b/a.
    let upper = (rest.denom() * m as u64) / rest.numer();
    let mut v = from.clone();
    while v <= upper {
        let unit = Ratio::unit(&v).expect("v ≥ 1");
        if let Some(next) = rest.checked_sub(&unit) {
            path.push(v.clone());
            walk(&next, m - 1, &v, path, found, nodes);
            path.pop();
        }
        v = v + 1u64;
    }
}
