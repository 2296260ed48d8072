//! Integration tests for the verification campaign: frozen enumeration
//! censuses, determinism across runs and thread pools, and a moderate
//! end-to-end campaign.
//!
//! Every frozen number here was produced by this library and then pinned, so
//! these tests are regression locks on the enumeration and dedup logic, not
//! independent oracles (those live in the unit tests and the acceptance
//! suite).

use std::collections::BTreeMap;

use toric_core::{
    enumerate_box_polygons, generate_surfaces, pentagon_property_sweep, run_campaign,
    visit_box_polygons, CampaignConfig,
};

#[test]
fn default_generation_matches_the_frozen_census() {
    let cfg = CampaignConfig::default();
    let surfaces = generate_surfaces(&cfg).expect("default generation");
    assert_eq!(surfaces.len(), 60);
    let mut census: BTreeMap<String, u64> = BTreeMap::new();
    for s in &surfaces {
        *census
            .entry(format!("{}+{}", s.seed_name, s.depth))
            .or_default() += 1;
    }
    let expected: BTreeMap<String, u64> = [
        ("p2+0", 1),
        ("p1xp1+0", 1),
        ("p1xp1+1", 1),
        ("p1xp1+2", 3),
        ("p1xp1+3", 6),
        ("f1+0", 1),
        ("f1+1", 1),
        ("f1+2", 3),
        ("f1+3", 7),
        ("f2+0", 1),
        ("f2+1", 1),
        ("f2+2", 3),
        ("f2+3", 7),
        ("f3+0", 1),
        ("f3+1", 1),
        ("f3+2", 3),
        ("f3+3", 7),
        ("f4+0", 1),
        ("f4+1", 1),
        ("f4+2", 3),
        ("f4+3", 7),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    assert_eq!(census, expected);
}

#[test]
fn box_class_counts_are_frozen() {
    assert_eq!(enumerate_box_polygons(4).unwrap().len(), 1517);
    assert_eq!(enumerate_box_polygons(5).unwrap().len(), 15359);
}

#[test]
fn pentagon_sweep_counts_are_frozen() {
    let four = pentagon_property_sweep(4).unwrap();
    assert!(four.passed(), "violations: {four:?}");
    assert_eq!(
        (four.visited, four.with_edge_length_4, four.with_longer_edge),
        (14566, 1052, 0)
    );

    let five = pentagon_property_sweep(5).unwrap();
    assert!(five.passed(), "violations: {five:?}");
    assert_eq!(
        (five.visited, five.with_edge_length_4, five.with_longer_edge),
        (166222, 23396, 5588)
    );

    // The sweep and the polygon visitor walk the same systems.
    let mut raw = 0u64;
    visit_box_polygons(4, 5, |_| raw += 1).unwrap();
    assert_eq!(raw, four.visited);
}

/// Mirrors the documented moderate run (`verify --max-blowups 2
/// --max-degree 50 --box 5`): green, and byte-identical when repeated.
#[test]
fn moderate_campaign_is_green_and_deterministic() {
    let cfg = CampaignConfig {
        max_blowups: 2,
        max_hirzebruch_r: 4,
        max_degree: 50,
        box_size: 5,
        ..CampaignConfig::default()
    };
    let first = run_campaign(&cfg).expect("campaign runs");
    assert!(first.passed, "summary:\n{}", first.summary());
    assert!(first.counterexamples.is_empty());
    assert_eq!(first.totals.polygons, 15359);

    let again = run_campaign(&cfg).expect("campaign runs");
    assert_eq!(first.to_json(), again.to_json());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .expect("pool");
    let pooled = pool.install(|| run_campaign(&cfg).expect("campaign runs"));
    assert_eq!(first.to_json(), pooled.to_json());
}
