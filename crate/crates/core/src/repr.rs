//! Representations of a rational as a sum of unit fractions, the restriction
//! profiles that select which of them are admissible, divisor coverage, and
//! the line-oriented record format shared by every tool in the workspace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{self, Natural, Ratio};

/// A target ratio together with a nondecreasing list of denominators whose
/// reciprocals sum to it exactly.
///
/// Ordering is lexicographic on the denominator list, then on the target.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representation {
    denoms: Vec<Natural>,
    target: Ratio,
}

impl Representation {
    /// Sorts `denoms` and checks that the reciprocal sum equals `target`.
    pub fn canonicalize(target: Ratio, mut denoms: Vec<Natural>) -> Result<Self> {
        if denoms.is_empty() {
            return Err(Error::EmptyInput("representation"));
        }
        if denoms.iter().any(Natural::is_zero) {
            return Err(Error::ZeroDenominator);
        }
        denoms.sort();
        let actual = Ratio::sum_of_units(&denoms)?;
        if actual != target {
            return Err(Error::SumMismatch { target, actual });
        }
        Ok(Representation { denoms, target })
    }

    /// Representation of `1/u` by the single part `u`.
    pub fn single(u: Natural) -> Result<Self> {
        let target = Ratio::unit(&u)?;
        Ok(Representation {
            denoms: vec![u],
            target,
        })
    }

    /// Builds from parts known to be sorted and to sum to `target`.
    pub(crate) fn from_parts_unchecked(target: Ratio, denoms: Vec<Natural>) -> Self {
        debug_assert!(denoms.windows(2).all(|w| w[0] <= w[1]));
        debug_assert_eq!(Ratio::sum_of_units(&denoms).ok().as_ref(), Some(&target));
        Representation { denoms, target }
    }

    pub fn target(&self) -> &Ratio {
        &self.target
    }

    pub fn denoms(&self) -> &[Natural] {
        &self.denoms
    }

    /// Number of parts, k.
    pub fn len(&self) -> usize {
        self.denoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denoms.is_empty()
    }

    pub fn lcm(&self) -> Natural {
        exactnum::gcd_lcm(&self.denoms)
            .map(|(_, l)| l)
            .expect("representation has positive parts")
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.denoms.windows(2).all(|w| w[0] < w[1])
    }

    /// For a target `1/u` with `k ≥ 2` parts, whether
    /// `u + 1 ≤ u_1 ≤ k·u ≤ u_k` holds. `None` for other shapes.
    pub fn unit_target_bounds_hold(&self) -> Option<bool> {
        if !self.target.is_unit_fraction() || self.len() < 2 {
            return None;
        }
        let u = self.target.denom();
        let ku = u * self.len() as u64;
        let first = &self.denoms[0];
        let last = &self.denoms[self.len() - 1];
        Some(&(u + 1u64) <= first && first <= &ku && &ku <= last)
    }

    pub fn to_record(&self) -> Record {
        Record {
            target: self.target.to_string(),
            denoms: self.denoms.iter().map(Natural::to_string).collect(),
        }
    }

    /// Single-line JSON record: `{"target":"1/1","denoms":["2","3","6"]}`.
    pub fn to_line(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let rec: Record = serde_json::from_str(line).map_err(|e| Error::Malformed {
            position: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        rec.into_representation()
    }

    pub const CSV_HEADER: &'static str = "target,denoms";

    /// `target,d1 d2 ...`, e.g. `1/1,2 3 6`.
    pub fn to_csv_row(&self) -> String {
        let d: Vec<String> = self.denoms.iter().map(Natural::to_string).collect();
        format!("{},{}", self.target, d.join(" "))
    }

    pub fn from_csv_row(row: &str) -> Result<Self> {
        let (target, denoms) = row.trim_end().split_once(',').ok_or_else(|| Error::Malformed {
            position: "column 1".into(),
            message: "expected `target,denoms`".into(),
        })?;
        Record {
            target: target.to_string(),
            denoms: denoms.split(' ').map(str::to_string).collect(),
        }
        .into_representation()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.denoms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.target, self)
    }
}

/// Wire form of a representation. Every integer is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub target: String,
    pub denoms: Vec<String>,
}

impl Record {
    /// Parses and checks a record. Unlike [`Representation::canonicalize`]
    /// this does not sort: out-of-order denominators are rejected.
    pub fn into_representation(self) -> Result<Representation> {
        let target: Ratio = self.target.parse().map_err(|e: Error| Error::Malformed {
            position: "target".into(),
            message: e.to_string(),
        })?;
        if self.denoms.is_empty() {
            return Err(Error::Malformed {
                position: "denoms".into(),
                message: "no denominators".into(),
            });
        }
        let mut denoms = Vec::with_capacity(self.denoms.len());
        for (i, s) in self.denoms.iter().enumerate() {
            let d: Natural = s.parse().map_err(|e: Error| Error::Malformed {
                position: format!("denoms[{i}]"),
                message: e.to_string(),
            })?;
            if d.is_zero() {
                return Err(Error::Malformed {
                    position: format!("denoms[{i}]"),
                    message: "zero denominator".into(),
                });
            }
            if let Some(prev) = denoms.last() {
                if &d < prev {
                    return Err(Error::Malformed {
                        position: format!("denoms[{i}]"),
                        message: format!("{d} follows {prev}; denominators must be nondecreasing"),
                    });
                }
            }
            denoms.push(d);
        }
        let actual = Ratio::sum_of_units(&denoms)?;
        if actual != target {
            return Err(Error::Malformed {
                position: "denoms".into(),
                message: format!("reciprocals sum to {actual}, not {target}"),
            });
        }
        Ok(Representation { denoms, target })
    }
}

/// Required parity of the part count k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PartsParity {
    #[default]
    Any,
    Odd,
    Even,
}

impl PartsParity {
    pub fn admits(self, k: usize) -> bool {
        match self {
            PartsParity::Any => true,
            PartsParity::Odd => k % 2 == 1,
            PartsParity::Even => k.is_multiple_of(2),
        }
    }
}

impl std::str::FromStr for PartsParity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(PartsParity::Any),
            "odd" => Ok(PartsParity::Odd),
            "even" => Ok(PartsParity::Even),
            _ => Err(Error::Parse(format!("parts parity must be any|odd|even, got {s:?}"))),
        }
    }
}

impl fmt::Display for PartsParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartsParity::Any => "any",
            PartsParity::Odd => "odd",
            PartsParity::Even => "even",
        })
    }
}

/// Which variant of S(k) is meant: the bundle of constraints a
/// representation must meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictionProfile {
    pub distinct: bool,
    pub odd_only: bool,
    pub min_denominator: Natural,
    pub parts_parity: PartsParity,
    pub forbid_lcm_divisible_by: Vec<Natural>,
}

impl Default for RestrictionProfile {
    fn default() -> Self {
        RestrictionProfile {
            distinct: false,
            odd_only: false,
            min_denominator: Natural::one(),
            parts_parity: PartsParity::Any,
            forbid_lcm_divisible_by: Vec::new(),
        }
    }
}

impl RestrictionProfile {
    pub fn unrestricted() -> Self {
        Self::default()
    }

    /// Distinct odd denominators, all at least 3.
    pub fn odd_distinct() -> Self {
        RestrictionProfile {
            distinct: true,
            odd_only: true,
            min_denominator: Natural::from(3u32),
            ..Self::default()
        }
    }

    pub fn with_distinct(mut self, on: bool) -> Self {
        self.distinct = on;
        self
    }

    pub fn with_odd_only(mut self, on: bool) -> Self {
        self.odd_only = on;
        self
    }

    pub fn with_min_denominator(mut self, m: impl Into<Natural>) -> Self {
        self.min_denominator = m.into();
        self
    }

    pub fn with_parts_parity(mut self, p: PartsParity) -> Self {
        self.parts_parity = p;
        self
    }

    pub fn forbid_lcm_divisible_by(mut self, f: impl Into<Natural>) -> Self {
        self.forbid_lcm_divisible_by.push(f.into());
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.min_denominator.is_zero() {
            return Err(Error::InvalidArgument("min_denominator must be at least 1".into()));
        }
        if let Some(f) = self.forbid_lcm_divisible_by.iter().find(|f| **f < 2u64.into()) {
            return Err(Error::InvalidArgument(format!(
                "forbidden lcm divisor must be at least 2, got {f}"
            )));
        }
        Ok(())
    }

    /// Whether every restriction `self` imposes is also imposed by `other`.
    pub fn is_weaker_or_equal(&self, other: &RestrictionProfile) -> bool {
        (!self.distinct || other.distinct)
            && (!self.odd_only || other.odd_only)
            && self.min_denominator <= other.min_denominator
            && (self.parts_parity == PartsParity::Any || self.parts_parity == other.parts_parity)
            && self
                .forbid_lcm_divisible_by
                .iter()
                .all(|f| other.forbid_lcm_divisible_by.contains(f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Distinct,
    OddOnly,
    MinDenominator,
    PartsParity,
    ForbidLcmDivisibleBy,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Distinct => "distinct",
            Rule::OddOnly => "odd_only",
            Rule::MinDenominator => "min_denominator",
            Rule::PartsParity => "parts_parity",
            Rule::ForbidLcmDivisibleBy => "forbid_lcm_divisible_by",
        })
    }
}

/// One broken restriction. `index` points into the denominator list when
/// the rule is about a particular part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub index: Option<usize>,
    pub value: Natural,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}: denoms[{}] = {}", self.rule, i, self.value),
            None => write!(f, "{}: {}", self.rule, self.value),
        }
    }
}

/// Every restriction of `profile` that `rep` breaks; empty when admissible.
pub fn validate(rep: &Representation, profile: &RestrictionProfile) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = rep.denoms();
    for (i, u) in d.iter().enumerate() {
        if profile.distinct && i > 0 && d[i - 1] == *u {
            out.push(Violation {
                rule: Rule::Distinct,
                index: Some(i),
                value: u.clone(),
            });
        }
        if profile.odd_only && u.is_even() {
            out.push(Violation {
                rule: Rule::OddOnly,
                index: Some(i),
                value: u.clone(),
            });
        }
        if *u < profile.min_denominator {
            out.push(Violation {
                rule: Rule::MinDenominator,
                index: Some(i),
                value: u.clone(),
            });
        }
    }
    if !profile.parts_parity.admits(rep.len()) {
        out.push(Violation {
            rule: Rule::PartsParity,
            index: None,
            value: Natural::from(rep.len()),
        });
    }
    if !profile.forbid_lcm_divisible_by.is_empty() {
        let l = rep.lcm();
        for f in &profile.forbid_lcm_divisible_by {
            if f.divides(&l) {
                out.push(Violation {
                    rule: Rule::ForbidLcmDivisibleBy,
                    index: None,
                    value: f.clone(),
                });
            }
        }
    }
    out
}

/// How the denominators of a representation of 1 sit inside the divisor
/// lattice of their lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    /// lcm of the denominators.
    pub n: Natural,
    pub divisor_count: Natural,
    /// Number of parts, k.
    pub used: Natural,
    pub missing_count: Natural,
    /// Divisors of `n` above 1 that are not denominators (`n` included).
    pub missing: Vec<Natural>,
    pub abundancy: Ratio,
}

pub fn coverage(rep: &Representation) -> Result<CoverageReport> {
    if *rep.target() != Ratio::one() {
        return Err(Error::NotApplicable(format!(
            "coverage needs target 1, got {}",
            rep.target()
        )));
    }
    if rep.denoms().iter().any(|d| d.is_one()) {
        return Err(Error::NotApplicable("coverage needs denominators of at least 2".into()));
    }
    if !rep.is_strictly_increasing() {
        return Err(Error::NotApplicable(
            "coverage needs pairwise distinct denominators".into(),
        ));
    }
    let n = rep.lcm();
    let divs = exactnum::divisors(&n)?;
    let missing: Vec<Natural> = divs
        .iter()
        .skip(1)
        .filter(|d| rep.denoms().binary_search(d).is_err())
        .cloned()
        .collect();
    let report = CoverageReport {
        divisor_count: Natural::from(divs.len()),
        used: Natural::from(rep.len()),
        missing_count: Natural::from(missing.len()),
        missing,
        abundancy: exactnum::abundancy(&n)?,
        n,
    };
    debug_assert_eq!(report.missing_count, &report.divisor_count - 1u64 - &report.used);
    Ok(report)
}

/// The representation of 1 by the reciprocals of the divisors of `n` above 1.
/// Exists exactly when `n` is perfect.
pub fn perfect_representation(n: &Natural) -> Result<Representation> {
    if *n < Natural::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "perfect_representation needs n ≥ 2, got {n}"
        )));
    }
    let denoms: Vec<Natural> = exactnum::divisors(n)?.into_iter().skip(1).collect();
    let sum = exactnum::abundancy(n)?
        .checked_sub(&Ratio::one())
        .expect("σ_{-1}(n) ≥ 1");
    if sum != Ratio::one() {
        return Err(Error::NotPerfect { n: n.clone(), sum });
    }
    Ok(Representation::from_parts_unchecked(Ratio::one(), denoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ns(v: &[u64]) -> Vec<Natural> {
        v.iter().copied().map(Natural::from).collect()
    }

    fn rep(target: &str, d: &[u64]) -> Representation {
        Representation::canonicalize(target.parse().unwrap(), ns(d)).unwrap()
    }

    const SEED: [u64; 9] = [3, 5, 7, 9, 11, 15, 35, 45, 231];

    #[test]
    fn canonicalize_sorts_and_checks() {
        assert_eq!(rep("1", &[6, 3, 2]).denoms(), ns(&[2, 3, 6]).as_slice());
        assert_eq!(rep("1", &[2, 2]).to_string(), "(2,2)");
        let err = Representation::canonicalize(Ratio::one(), ns(&[2, 3, 7])).unwrap_err();
        match err {
            Error::SumMismatch { actual, .. } => assert_eq!(actual, Ratio::new(41u8, 42u8).unwrap()),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            Representation::canonicalize(Ratio::one(), ns(&[0, 1])),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn validate_examples() {
        let seed = rep("1", &SEED);
        let shiu = RestrictionProfile::odd_distinct().with_parts_parity(PartsParity::Odd);
        assert!(validate(&seed, &shiu).is_empty());

        let v = validate(
            &rep("1", &[2, 3, 6]),
            &RestrictionProfile::default().with_odd_only(true),
        );
        assert_eq!(v.len(), 2);
        assert_eq!((v[0].index, v[0].value.to_u64()), (Some(0), Some(2)));
        assert_eq!((v[1].index, v[1].value.to_u64()), (Some(2), Some(6)));

        let v = validate(&seed, &RestrictionProfile::default().forbid_lcm_divisible_by(105u32));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::ForbidLcmDivisibleBy);
    }

    #[test]
    fn validate_flags_repeats_and_minimum() {
        let v = validate(
            &rep("1", &[2, 4, 4]),
            &RestrictionProfile::default()
                .with_distinct(true)
                .with_min_denominator(3u32),
        );
        let rules: Vec<Rule> = v.iter().map(|x| x.rule).collect();
        assert_eq!(rules, vec![Rule::MinDenominator, Rule::Distinct]);
    }

    #[test]
    fn coverage_examples() {
        let c = coverage(&rep("1", &SEED)).unwrap();
        assert_eq!(c.n, 3465u64);
        assert_eq!(c.divisor_count, 24u64);
        assert_eq!(c.missing_count, 14u64);
        assert!(c.missing.contains(&Natural::from(3465u32)));

        let c = coverage(&rep("1", &[2, 3, 6])).unwrap();
        assert_eq!(c.n, 6u64);
        assert_eq!(c.missing_count, 0u64);
        assert_eq!(c.abundancy, Ratio::integer(2u8));

        let c = coverage(&rep("1", &[2, 4, 6, 12])).unwrap();
        assert_eq!(c.n, 12u64);
        assert_eq!(c.divisor_count, 6u64);
        assert_eq!(c.missing, ns(&[3]));

        assert!(matches!(coverage(&rep("1", &[2, 4, 4])), Err(Error::NotApplicable(_))));
        assert!(matches!(coverage(&rep("1/6", &[10, 15])), Err(Error::NotApplicable(_))));
        assert!(matches!(coverage(&rep("1", &[1])), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn perfect_representation_examples() {
        assert_eq!(perfect_representation(&6u64.into()).unwrap(), rep("1", &[2, 3, 6]));
        assert_eq!(
            perfect_representation(&28u64.into()).unwrap(),
            rep("1", &[2, 4, 7, 14, 28])
        );
        match perfect_representation(&12u64.into()).unwrap_err() {
            Error::NotPerfect { sum, .. } => assert_eq!(sum, Ratio::new(4u8, 3u8).unwrap()),
            e => panic!("unexpected {e:?}"),
        }
        assert!(perfect_representation(&1u64.into()).is_err());
    }

    #[test]
    fn perfect_iff_sigma_is_twice_n() {
        for n in 2..=10_000u64 {
            let nn = Natural::from(n);
            let perfect = exactnum::divisor_sum(&nn).unwrap() == 2 * n;
            assert_eq!(perfect_representation(&nn).is_ok(), perfect, "n = {n}");
        }
    }

    #[test]
    fn line_format_examples() {
        assert_eq!(
            rep("1", &[2, 3, 6]).to_line(),
            r#"{"target":"1/1","denoms":["2","3","6"]}"#
        );
        assert_eq!(
            rep("1/6", &[10, 15]).to_line(),
            r#"{"target":"1/6","denoms":["10","15"]}"#
        );
        assert_eq!(
            Representation::from_line(r#"{"target":"1/6","denoms":["10","15"]}"#).unwrap(),
            rep("1/6", &[10, 15])
        );
    }

    #[test]
    fn malformed_lines_carry_position() {
        let e = Representation::from_line(r#"{"target":"1/1","denoms":["3","2","6"]}"#).unwrap_err();
        assert!(
            matches!(&e, Error::Malformed { position, .. } if position == "denoms[1]"),
            "{e}"
        );
        let e = Representation::from_line(r#"{"target":"1/1","denoms":["2","x"]}"#).unwrap_err();
        assert!(
            matches!(&e, Error::Malformed { position, .. } if position == "denoms[1]"),
            "{e}"
        );
        let e = Representation::from_line(r#"{"target":"1/1","denoms":[2,3,6]}"#).unwrap_err();
        assert!(
            matches!(&e, Error::Malformed { position, .. } if position.starts_with("line 1")),
            "{e}"
        );
        let e = Representation::from_line(r#"{"target":"1/1","denoms":["2","3","7"]}"#).unwrap_err();
        assert!(matches!(e, Error::Malformed { .. }));
        let e = Representation::from_line(r#"{"target":"1/1","denoms":[],"x":1}"#).unwrap_err();
        assert!(matches!(e, Error::Malformed { .. }));
    }

    #[test]
    fn csv_rows() {
        let r = rep("1", &[2, 3, 6]);
        assert_eq!(r.to_csv_row(), "1/1,2 3 6");
        assert_eq!(Representation::from_csv_row("1/1,2 3 6").unwrap(), r);
        assert!(Representation::from_csv_row("1/1").is_err());
    }

    #[test]
    fn trivial_bounds_on_s2_of_six() {
        for d in [[7u64, 42], [8, 24], [9, 18], [10, 15], [12, 12]] {
            assert_eq!(rep("1/6", &d).unit_target_bounds_hold(), Some(true));
        }
        assert_eq!(rep("1", &[1]).unit_target_bounds_hold(), None);
    }

    #[test]
    fn profile_check() {
        assert!(RestrictionProfile::default().check().is_ok());
        assert!(RestrictionProfile::default()
            .with_min_denominator(0u32)
            .check()
            .is_err());
        assert!(RestrictionProfile::default()
            .forbid_lcm_divisible_by(1u32)
            .check()
            .is_err());
    }

    proptest! {
        // Any multiset of parts defines a valid representation of its own sum.
        #[test]
        fn line_and_csv_round_trip(parts in proptest::collection::vec(1u64..100_000, 1..8)) {
            let d = ns(&parts);
            let target = Ratio::sum_of_units(&d).unwrap();
            let r = Representation::canonicalize(target, d).unwrap();
            prop_assert_eq!(Representation::from_line(&r.to_line()).unwrap(), r.clone());
            prop_assert_eq!(Representation::from_csv_row(&r.to_csv_row()).unwrap(), r);
        }
    }
}
