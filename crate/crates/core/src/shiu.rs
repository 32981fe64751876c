//! Classification of 1 as a sum of distinct odd unit fractions with
//! denominators at least 3, and restriction filters over search output.

use std::time::{Duration, Instant};

use crate::enumerate::{count_with, enumerate_with, Execution, Limit, SearchBounds};
use crate::error::{Error, Result};
use crate::exactnum::{Natural, Ratio};
use crate::repr::{validate, Representation, RestrictionProfile, Violation};

/// Part count up to which the classification is known.
pub const AUTHORITATIVE_MAX_PARTS: usize = 9;

/// The five 9-part solutions, in their customary listing order.
pub const REFERENCE_SOLUTIONS: [[u64; 9]; 5] = [
    [3, 5, 7, 9, 11, 15, 35, 45, 231],
    [3, 5, 7, 9, 11, 15, 33, 45, 385],
    [3, 5, 7, 9, 11, 15, 21, 231, 315],
    [3, 5, 7, 9, 11, 15, 21, 165, 693],
    [3, 5, 7, 9, 11, 15, 21, 135, 10395],
];

/// The reference solutions as validated representations of 1.
pub fn reference_solutions() -> Vec<Representation> {
    REFERENCE_SOLUTIONS
        .iter()
        .map(|d| {
            Representation::canonicalize(Ratio::one(), d.iter().map(|&v| Natural::from(v)).collect())
                .expect("reference solution sums to 1")
        })
        .collect()
}

/// `1 = 1/3 + 1/5 + 1/7 + 1/9 + 1/11 + 1/15 + 1/35 + 1/45 + 1/231`.
pub fn seed_equation() -> Representation {
    reference_solutions().swap_remove(0)
}

#[derive(Debug, Clone)]
pub struct ShiuRow {
    pub parts: usize,
    pub count: u64,
    /// Kept for `parts ≤ 9`; above that only the count is tracked.
    pub solutions: Option<Vec<Representation>>,
    pub complete: bool,
    pub nodes_visited: u64,
    pub stopped_by: Option<Limit>,
    pub elapsed: Duration,
    /// `false` past the known classification.
    pub authoritative: bool,
}

/// Search output at 9 parts against [`REFERENCE_SOLUTIONS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceDiff {
    pub missing: Vec<Representation>,
    pub extra: Vec<Representation>,
}

impl ReferenceDiff {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct ShiuReport {
    pub rows: Vec<ShiuRow>,
    /// Present when 9 parts were searched to completion.
    pub reference: Option<ReferenceDiff>,
}

impl ShiuReport {
    pub fn row(&self, parts: usize) -> Option<&ShiuRow> {
        self.rows.iter().find(|r| r.parts == parts)
    }

    pub fn complete(&self) -> bool {
        self.rows.iter().all(|r| r.complete)
    }
}

/// Searches `parts = 3..=l_max` under [`RestrictionProfile::odd_distinct`].
/// The reference list is only read after the search, to diff against.
pub fn verify_shiu(l_max: usize, bounds: &SearchBounds, exec: &Execution) -> Result<ShiuReport> {
    verify_shiu_from(3, l_max, bounds, exec)
}

pub fn verify_shiu_from(l_min: usize, l_max: usize, bounds: &SearchBounds, exec: &Execution) -> Result<ShiuReport> {
    if l_min < 1 || l_min > l_max {
        return Err(Error::InvalidArgument(format!("empty part range {l_min}..={l_max}")));
    }
    let profile = RestrictionProfile::odd_distinct();
    let one = Ratio::one();
    let mut rows = Vec::new();
    for parts in l_min..=l_max {
        let start = Instant::now();
        let row = if parts <= AUTHORITATIVE_MAX_PARTS {
            let r = enumerate_with(&one, parts, &profile, bounds, exec)?;
            ShiuRow {
                parts,
                count: r.count,
                solutions: Some(r.reps),
                complete: r.complete,
                nodes_visited: r.nodes_visited,
                stopped_by: r.stopped_by,
                elapsed: start.elapsed(),
                authoritative: true,
            }
        } else {
            let c = count_with(&one, parts, &profile, bounds, exec)?;
            ShiuRow {
                parts,
                count: c.count,
                solutions: None,
                complete: c.complete,
                nodes_visited: c.nodes_visited,
                stopped_by: c.stopped_by,
                elapsed: start.elapsed(),
                authoritative: false,
            }
        };
        rows.push(row);
    }
    let reference = rows
        .iter()
        .find(|r| r.parts == AUTHORITATIVE_MAX_PARTS && r.complete)
        .and_then(|r| r.solutions.as_deref())
        .map(diff_against_reference);
    Ok(ShiuReport { rows, reference })
}

pub fn diff_against_reference(found: &[Representation]) -> ReferenceDiff {
    let reference = reference_solutions();
    ReferenceDiff {
        missing: reference.iter().filter(|r| !found.contains(r)).cloned().collect(),
        extra: found.iter().filter(|r| !reference.contains(r)).cloned().collect(),
    }
}

#[derive(Debug, Clone, Default)]
pub struct FilterOutcome {
    pub kept: Vec<Representation>,
    pub rejected: Vec<(Representation, Vec<Violation>)>,
}

/// Splits `reps` by whether they satisfy `profile`; each rejection lists
/// every rule it breaks.
pub fn opn_filter(reps: &[Representation], profile: &RestrictionProfile) -> FilterOutcome {
    let mut out = FilterOutcome::default();
    for r in reps {
        let v = validate(r, profile);
        if v.is_empty() {
            out.kept.push(r.clone());
        } else {
            out.rejected.push((r.clone(), v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{coverage, PartsParity, Rule};

    #[test]
    fn reference_solutions_are_valid() {
        for r in reference_solutions() {
            assert_eq!(Ratio::sum_of_units(r.denoms()).unwrap(), Ratio::one());
            assert!(r.is_strictly_increasing());
            assert!(validate(&r, &RestrictionProfile::odd_distinct()).is_empty());
        }
    }

    #[test]
    fn seed_equation_examples() {
        let s = seed_equation();
        assert_eq!(s.to_string(), "(3,5,7,9,11,15,35,45,231)");
        assert_eq!(coverage(&s).unwrap().n, 3465u64);
        assert!(validate(&s, &RestrictionProfile::odd_distinct()).is_empty());
        assert_eq!(reference_solutions()[4].to_string(), "(3,5,7,9,11,15,21,135,10395)");
    }

    #[test]
    fn small_part_counts_have_no_solutions() {
        let rep = verify_shiu(8, &SearchBounds::default(), &Execution::sequential()).unwrap();
        assert_eq!(rep.rows.len(), 6);
        for row in &rep.rows {
            assert_eq!(row.count, 0, "l = {}", row.parts);
            assert!(row.complete && row.authoritative);
        }
        assert!(rep.reference.is_none());
    }

    #[test]
    fn nine_parts_match_reference() {
        let rep = verify_shiu_from(9, 9, &SearchBounds::default(), &Execution::sequential()).unwrap();
        let row = rep.row(9).unwrap();
        assert!(row.complete);
        assert_eq!(row.count, 5);
        assert!(rep.reference.as_ref().unwrap().is_exact());
        for r in row.solutions.as_ref().unwrap() {
            assert!(validate(r, &RestrictionProfile::odd_distinct()).is_empty());
        }
    }

    #[test]
    fn budget_is_recorded_per_row() {
        let b = SearchBounds::default().with_node_budget(10);
        let rep = verify_shiu_from(9, 9, &b, &Execution::sequential()).unwrap();
        assert!(!rep.row(9).unwrap().complete);
        assert_eq!(rep.row(9).unwrap().stopped_by, Some(Limit::NodeBudget));
        assert!(rep.reference.is_none());
    }

    #[test]
    fn diff_reports_both_directions() {
        let mut found = reference_solutions();
        let dropped = found.pop().unwrap();
        found.push(Representation::canonicalize(Ratio::one(), vec![2u64.into(), 3u64.into(), 6u64.into()]).unwrap());
        let d = diff_against_reference(&found);
        assert_eq!(d.missing, vec![dropped]);
        assert_eq!(d.extra.len(), 1);
        assert!(!d.is_exact());
    }

    #[test]
    fn filter_examples() {
        let sols = reference_solutions();
        let out = opn_filter(&sols, &RestrictionProfile::default().forbid_lcm_divisible_by(105u32));
        assert!(out.kept.is_empty());
        assert!(out
            .rejected
            .iter()
            .all(|(_, v)| v.iter().any(|x| x.rule == Rule::ForbidLcmDivisibleBy)));

        let odd = RestrictionProfile::default().with_parts_parity(PartsParity::Odd);
        assert_eq!(opn_filter(&sols, &odd).kept.len(), 5);
        let r = Representation::canonicalize(Ratio::one(), vec![2u64.into(), 3u64.into(), 6u64.into()]).unwrap();
        assert_eq!(opn_filter(&[r], &odd).kept.len(), 1);
    }

    #[test]
    fn rejects_empty_range() {
        assert!(verify_shiu(2, &SearchBounds::default(), &Execution::sequential()).is_err());
    }
}
