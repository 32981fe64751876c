use std::sync::atomic::{AtomicU64, Ordering};

use super::*;
use crate::exactnum::Natural;
use crate::repr::{coverage, validate, PartsParity};

fn unit(u: u64) -> Ratio {
    Ratio::unit(&Natural::from(u)).unwrap()
}

fn strs(reps: &[Representation]) -> Vec<String> {
    reps.iter().map(|r| r.to_string()).collect()
}

fn all(target: &Ratio, k: usize, profile: &RestrictionProfile) -> EnumerationResult {
    enumerate_reps(target, k, profile, &SearchBounds::default()).unwrap()
}

#[test]
fn table_for_one() {
    let p = RestrictionProfile::unrestricted();
    assert_eq!(strs(&all(&Ratio::one(), 1, &p).reps), ["(1)"]);
    assert_eq!(strs(&all(&Ratio::one(), 2, &p).reps), ["(2,2)"]);
    assert_eq!(strs(&all(&Ratio::one(), 3, &p).reps), ["(2,3,6)", "(2,4,4)", "(3,3,3)"]);
    assert_eq!(all(&Ratio::one(), 4, &p).count, 14);
}

#[test]
fn two_parts_of_one_sixth() {
    let r = all(&unit(6), 2, &RestrictionProfile::unrestricted());
    assert_eq!(strs(&r.reps), ["(7,42)", "(8,24)", "(9,18)", "(10,15)", "(12,12)"]);
    assert!(r.complete);
    assert_eq!(r.stopped_by, None);
}

#[test]
fn counts_match_known_table() {
    let p = RestrictionProfile::unrestricted();
    let counts: Vec<u64> = (1..=6)
        .map(|k| {
            count_reps(&Ratio::one(), k, &p, &SearchBounds::default())
                .unwrap()
                .count
        })
        .collect();
    assert_eq!(counts, [1, 1, 3, 14, 147, 3462]);
}

#[test]
fn five_parts_of_one_agree_with_oracle() {
    let p = RestrictionProfile::unrestricted();
    let oracle = naive_oracle(&Ratio::one(), 5, &p).unwrap();
    assert_eq!(oracle.count, 147);
    assert_eq!(all(&Ratio::one(), 5, &p).reps, oracle.reps);
}

#[test]
fn oracle_examples() {
    let p = RestrictionProfile::unrestricted();
    assert_eq!(naive_oracle(&Ratio::one(), 3, &p).unwrap().count, 3);
    assert_eq!(naive_oracle(&unit(6), 2, &p).unwrap().count, 5);
    assert_eq!(
        naive_oracle(&Ratio::one(), 3, &RestrictionProfile::odd_distinct())
            .unwrap()
            .count,
        0
    );
    assert!(naive_oracle(&Ratio::one(), 6, &p).is_err());
    assert!(naive_oracle(&Ratio::one(), 0, &p).is_err());
}

#[test]
fn matches_oracle_on_small_unit_targets() {
    for profile in [RestrictionProfile::unrestricted(), RestrictionProfile::odd_distinct()] {
        for u in 1..=6 {
            for k in 1..=4 {
                let t = unit(u);
                let fast = all(&t, k, &profile);
                let slow = naive_oracle(&t, k, &profile).unwrap();
                assert!(fast.complete);
                assert_eq!(fast.reps, slow.reps, "u={u} k={k} {profile:?}");
            }
        }
    }
}

#[test]
fn matches_oracle_on_non_unit_targets() {
    let profiles = [
        RestrictionProfile::unrestricted(),
        RestrictionProfile::default().with_distinct(true),
        RestrictionProfile::default().with_odd_only(true),
        RestrictionProfile::default().with_min_denominator(4u32),
    ];
    for (a, b) in [(2u64, 3u64), (3, 4), (5, 6), (4, 5), (2, 7), (3, 2)] {
        let t = Ratio::new(a, b).unwrap();
        for p in &profiles {
            for k in 1..=3 {
                assert_eq!(
                    all(&t, k, p).reps,
                    naive_oracle(&t, k, p).unwrap().reps,
                    "{t} k={k} {p:?}"
                );
            }
        }
    }
}

#[test]
fn outputs_are_canonical_valid_and_exact() {
    let profile = RestrictionProfile::default().with_distinct(true);
    for u in 1..=5 {
        let t = unit(u);
        let r = all(&t, 4, &profile);
        assert!(r.reps.windows(2).all(|w| w[0] < w[1]));
        for rep in &r.reps {
            assert_eq!(Ratio::sum_of_units(rep.denoms()).unwrap(), t);
            assert!(validate(rep, &profile).is_empty());
        }
    }
}

#[test]
fn unit_target_bounds() {
    for u in 1..=8 {
        for k in 2..=4 {
            for rep in all(&unit(u), k, &RestrictionProfile::unrestricted()).reps {
                assert_eq!(rep.unit_target_bounds_hold(), Some(true), "{rep:?}");
            }
        }
    }
}

#[test]
fn stricter_profiles_nest() {
    let chain = [
        RestrictionProfile::unrestricted(),
        RestrictionProfile::default().with_odd_only(true),
        RestrictionProfile::default().with_odd_only(true).with_distinct(true),
        RestrictionProfile::odd_distinct(),
    ];
    for u in [1u64, 3, 5] {
        for k in 2..=5 {
            let sets: Vec<Vec<Representation>> = chain.iter().map(|p| all(&unit(u), k, p).reps).collect();
            for (i, w) in sets.windows(2).enumerate() {
                assert!(chain[i].is_weaker_or_equal(&chain[i + 1]));
                assert!(w[1].iter().all(|r| w[0].contains(r)), "u={u} k={k} step {i}");
            }
        }
    }
}

#[test]
fn parallel_runs_are_identical() {
    for (t, k, p) in [
        (Ratio::one(), 6, RestrictionProfile::unrestricted()),
        (unit(2), 5, RestrictionProfile::default().with_distinct(true)),
        (Ratio::one(), 9, RestrictionProfile::odd_distinct()),
    ] {
        let seq = all(&t, k, &p);
        for threads in [2, 3, 8] {
            let par = enumerate_with(&t, k, &p, &SearchBounds::default(), &Execution::parallel(threads)).unwrap();
            assert_eq!(par, seq, "{t} k={k} threads={threads}");
        }
        let again = all(&t, k, &p);
        assert_eq!(again, seq);
    }
}

#[test]
fn count_agrees_with_enumerate() {
    for k in 1..=5 {
        let p = RestrictionProfile::default().with_odd_only(true);
        let e = all(&Ratio::one(), k, &p);
        let c = count_with(&Ratio::one(), k, &p, &SearchBounds::default(), &Execution::parallel(4)).unwrap();
        assert_eq!(
            (c.count, c.complete, c.nodes_visited),
            (e.count, e.complete, e.nodes_visited)
        );
    }
}

#[test]
fn node_budget_flags_incomplete() {
    let b = SearchBounds::default().with_node_budget(50);
    let r = enumerate_reps(&Ratio::one(), 6, &RestrictionProfile::unrestricted(), &b).unwrap();
    assert!(!r.complete);
    assert_eq!(r.stopped_by, Some(Limit::NodeBudget));
    assert!(r.nodes_visited <= 50);
    assert!(r.count < 3462);
    // Whatever was found is still correct.
    for rep in &r.reps {
        assert_eq!(Ratio::sum_of_units(rep.denoms()).unwrap(), Ratio::one());
    }
    let c = count_with(
        &Ratio::one(),
        6,
        &RestrictionProfile::unrestricted(),
        &b,
        &Execution::parallel(4),
    )
    .unwrap();
    assert!(!c.complete);
}

#[test]
fn max_results_truncates_deterministically() {
    let p = RestrictionProfile::unrestricted();
    let full = all(&Ratio::one(), 5, &p);
    let b = SearchBounds::default().with_max_results(10);
    let seq = enumerate_reps(&Ratio::one(), 5, &p, &b).unwrap();
    assert_eq!(seq.count, 10);
    assert!(!seq.complete);
    assert_eq!(seq.stopped_by, Some(Limit::MaxResults));
    assert!(seq.reps.iter().all(|r| full.reps.contains(r)));
    for threads in [2, 4] {
        let par = enumerate_with(&Ratio::one(), 5, &p, &b, &Execution::parallel(threads)).unwrap();
        assert_eq!(par.reps, seq.reps);
    }
    // An exact fit is not a truncation.
    let exact = enumerate_reps(&Ratio::one(), 3, &p, &SearchBounds::default().with_max_results(3)).unwrap();
    assert!(exact.complete);
}

#[test]
fn max_denominator_caps_parts() {
    let p = RestrictionProfile::unrestricted();
    let r = enumerate_reps(&unit(6), 2, &p, &SearchBounds::default().with_max_denominator(24u32)).unwrap();
    assert_eq!(strs(&r.reps), ["(8,24)", "(9,18)", "(10,15)", "(12,12)"]);
    let full = all(&Ratio::one(), 4, &p);
    let capped = enumerate_reps(
        &Ratio::one(),
        4,
        &p,
        &SearchBounds::default().with_max_denominator(12u32),
    )
    .unwrap();
    let expect: Vec<_> = full
        .reps
        .iter()
        .filter(|r| r.denoms().iter().all(|d| *d <= Natural::from(12u32)))
        .cloned()
        .collect();
    assert_eq!(capped.reps, expect);
}

#[test]
fn forbid_and_parity_filters() {
    let p = RestrictionProfile::unrestricted().forbid_lcm_divisible_by(4u32);
    let r = all(&Ratio::one(), 3, &p);
    assert_eq!(strs(&r.reps), ["(2,3,6)", "(3,3,3)"]);
    let even = RestrictionProfile::default().with_parts_parity(PartsParity::Even);
    assert_eq!(all(&Ratio::one(), 3, &even).count, 0);
    assert_eq!(all(&Ratio::one(), 4, &even).count, 14);
}

#[test]
fn invalid_arguments() {
    let p = RestrictionProfile::unrestricted();
    let b = SearchBounds::default();
    assert!(enumerate_reps(&Ratio::zero(), 2, &p, &b).is_err());
    assert!(enumerate_reps(&Ratio::one(), 0, &p, &b).is_err());
    assert!(enumerate_reps(&Ratio::one(), 2, &p, &SearchBounds::default().with_node_budget(0)).is_err());
}

#[test]
fn wide_targets_use_arbitrary_precision() {
    // 1/(2^130): every part exceeds u128.
    let u = Natural::from(2u32).pow(130);
    let t = Ratio::unit(&u).unwrap();
    let r = all(&t, 2, &RestrictionProfile::unrestricted());
    // Pairs of 1/n: (d + n, n²/d + n) for d | n², d ≤ n, so σ_0(n²) halved up.
    assert_eq!(r.count, 131);
    for rep in &r.reps {
        assert_eq!(Ratio::sum_of_units(rep.denoms()).unwrap(), t);
    }
}

#[test]
fn overflow_mid_search_widens() {
    // Fits u128 at the root; the two-part solve squares the denominator.
    let b = Natural::from(2u32).pow(70);
    let mut found = 0;
    for (x, y, n) in [(2u64, 3u64, &b + 1u64), (3, 5, &b + 3u64), (2, 5, b.clone())] {
        let d = vec![Natural::from(x), Natural::from(y), n];
        let t = Ratio::sum_of_units(&d).unwrap();
        for k in 2..=3 {
            let fast = all(&t, k, &RestrictionProfile::unrestricted());
            let slow = naive_oracle(&t, k, &RestrictionProfile::unrestricted()).unwrap();
            assert_eq!(fast.reps, slow.reps, "{t} k={k}");
            found += fast.count;
        }
    }
    assert!(found > 0);
    // (σ_0(2^140) + 1)/2 two-part splits.
    let t = Ratio::new(1u32, b).unwrap();
    assert_eq!(all(&t, 2, &RestrictionProfile::unrestricted()).count, 71);
}

#[test]
fn coverage_identity_on_search_output() {
    let p = RestrictionProfile::default()
        .with_distinct(true)
        .with_min_denominator(2u32);
    for k in 3..=5 {
        for rep in all(&Ratio::one(), k, &p).reps {
            let c = coverage(&rep).unwrap();
            assert_eq!(c.missing_count, &(&c.divisor_count - 1u64) - &c.used);
        }
    }
}

#[test]
fn progress_reports_arrive() {
    let seen = std::sync::Arc::new(AtomicU64::new(0));
    let s = seen.clone();
    let exec = Execution::sequential().with_progress(
        10,
        std::sync::Arc::new(move |p: &Progress| {
            assert!(p.nodes > 0);
            s.fetch_add(1, Ordering::Relaxed);
        }),
    );
    let r = enumerate_with(
        &Ratio::one(),
        6,
        &RestrictionProfile::unrestricted(),
        &SearchBounds::default(),
        &exec,
    )
    .unwrap();
    assert!(r.nodes_visited >= 10);
    assert_eq!(seen.load(Ordering::Relaxed), r.nodes_visited / 10);
}
