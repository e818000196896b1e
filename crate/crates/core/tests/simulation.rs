use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use banach_coupling::analysis::stats::{correlation, sample_variance};
use banach_coupling::analysis::{ks_critical_value_99, ks_statistic, EmpiricalSample, LawSpec};
use banach_coupling::parallel::{map_replicates, map_replicates_sequential, with_threads};
use banach_coupling::simulation::{sample_first_passage, sample_paths, RngPolicy, TimeGrid};

fn bundle_hash(k: usize, grid: &TimeGrid, policy: RngPolicy, replicate: u64) -> u64 {
    let b = sample_paths(k, grid, policy, replicate).unwrap();
    let mut h = DefaultHasher::new();
    for v in b.values() {
        v.to_bits().hash(&mut h);
    }
    h.finish()
}

#[test]
fn terminal_variance_is_time() {
    let grid = TimeGrid::uniform(1.0, 8).unwrap();
    let policy = RngPolicy::new(100);
    let n = 10_000;
    for k in 0..3 {
        let ends: Vec<f64> = (0..n)
            .map(|r| sample_paths(3, &grid, policy, r).unwrap().value(k, 8))
            .collect();
        let v = sample_variance(&ends);
        assert!((0.94..=1.06).contains(&v), "coefficient {k}: {v}");
    }
}

#[test]
fn increments_are_uncorrelated_across_coefficients() {
    let grid = TimeGrid::new(vec![0.0, 0.3, 1.0]).unwrap();
    let policy = RngPolicy::new(55);
    let n = 10_000;
    let (mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for r in 0..n as u64 {
        let bundle = sample_paths(2, &grid, policy, r).unwrap();
        a.push(bundle.value(0, 2) - bundle.value(0, 1));
        b.push(bundle.value(1, 2) - bundle.value(1, 1));
    }
    assert!(correlation(&a, &b).abs() <= 3.0 / (n as f64).sqrt());
}

#[test]
fn paths_do_not_depend_on_scheduling() {
    let grid = TimeGrid::with_step(1.0, 0.01).unwrap();
    let policy = RngPolicy::new(8);
    let serial = map_replicates_sequential(64, |r| bundle_hash(4, &grid, policy, r));
    let threaded = with_threads(Some(4), || map_replicates(64, |r| bundle_hash(4, &grid, policy, r)));
    assert_eq!(serial, threaded);
    // Interleaved order: reverse and odd-then-even.
    let mut reversed: Vec<u64> = (0..64).rev().map(|r| bundle_hash(4, &grid, policy, r)).collect();
    reversed.reverse();
    assert_eq!(serial, reversed);
    for r in (1..64).step_by(2).chain((0..64).step_by(2)) {
        assert_eq!(bundle_hash(4, &grid, policy, r), serial[r as usize]);
    }
}

#[test]
fn first_passage_ks() {
    let policy = RngPolicy::new(2);
    let n = 10_000;
    let draws = (0..n).map(|r| sample_first_passage(2.0, policy, r).unwrap()).collect();
    let law = LawSpec::first_passage(2.0).unwrap();
    let out = ks_statistic(&EmpiricalSample::new(draws), &law).unwrap();
    assert!(out.statistic <= 0.02, "{out:?}");
}

#[test]
fn first_passage_scaling() {
    // Level 2a draws divided by 4 follow the level-a law.
    let policy = RngPolicy::new(77);
    let n = 10_000;
    let draws = (0..n)
        .map(|r| sample_first_passage(1.4, policy, r).unwrap() / 4.0)
        .collect();
    let law = LawSpec::first_passage(0.7).unwrap();
    let out = ks_statistic(&EmpiricalSample::new(draws), &law).unwrap();
    assert!(out.statistic <= ks_critical_value_99(n as usize));
}
