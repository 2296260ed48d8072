//! Acceptance suite: eight numbered criteria, one printed pass/fail line
//! each (visible with `--nocapture`; always printed on failure).
//!
//! Criteria 2–8 share one default verification campaign (box 6, blowup depth
//! 3, degree bound 100) computed once; criterion 5 additionally runs the
//! box-8 streaming sweep and a randomized Pick check, and criterion 8 re-runs
//! the campaign under different thread pools to pin down determinism.

use std::sync::OnceLock;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::{
    classify, convex_hull, count_points, normalized_volume, pentagon_property_sweep,
    run_campaign, CampaignConfig, CompleteFan, LatticePoint, Surface, VerificationReport,
};

fn report() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        run_campaign(&CampaignConfig::default()).expect("default campaign runs")
    })
}

/// `(pass, fail)` tally of a named check in the shared default campaign.
fn tally(name: &str) -> (u64, u64) {
    report()
        .checks
        .get(name)
        .map(|s| (s.pass, s.fail))
        .unwrap_or((0, 0))
}

fn verdict(criterion: usize, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status} — {detail}");
    assert!(pass, "criterion {criterion}: {status} — {detail}");
}

/// Criterion 1: the ruled-surface pairing table for r in 1..=5 matches the
/// classical values exactly: the two fibers square to 0, the two sections to
/// -r and r, cyclically adjacent curves meet once, opposite curves never.
#[test]
fn criterion_1_ruled_surface_golden_table() {
    let mut pass = true;
    let mut detail = String::new();
    for r in 1..=5i64 {
        let surface = Surface::new(CompleteFan::hirzebruch(r).unwrap()).unwrap();
        let expected = vec![
            vec![0, 1, 0, 1],
            vec![1, -r, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, r],
        ];
        if surface.table() != expected.as_slice() {
            pass = false;
            detail = format!("r={r}: table {:?} != {:?}", surface.table(), expected);
            break;
        }
    }
    if pass {
        detail = "pairing tables for r=1..5 match the golden values exactly".into();
    }
    verdict(1, pass, &detail);
}

/// Criterion 2: on every campaign surface the canonical degree identity
/// K·D_i = b_i − 2 holds on both computation paths, and the two adjoint
/// evaluations agree on every polarization.
#[test]
fn criterion_2_canonical_degrees_and_adjoint_paths() {
    let k_degree = tally("structural:k_degree");
    let degree_paths = tally("structural:degree_paths");
    let adjoint_paths = tally("structural:adjoint_paths");
    let pass = k_degree == (60, 0) && degree_paths == (6195, 0) && adjoint_paths == (6195, 0);
    verdict(
        2,
        pass,
        &format!(
            "K·D identity on {} surfaces ({} failures); degree paths {:?}, adjoint paths {:?} over 6195 polarizations",
            k_degree.0, k_degree.1, degree_paths, adjoint_paths
        ),
    );
}

/// Criterion 3: both directions of the witness criterion hold on every
/// campaign pair away from the plane, the plane's degree-1 polarization
/// genuinely breaks the basepoint-freeness direction, and the sweep finishes
/// inside five minutes.
#[test]
fn criterion_3_witness_criterion_biconditionals() {
    let part1 = tally("proposition_part1");
    let part2 = tally("proposition_part2");

    let plane = Surface::new(CompleteFan::projective_plane()).unwrap();
    let line = plane.divisor(vec![0, 0, 1]).unwrap();
    let plane_report = classify(&line).unwrap();
    let plane_exception = plane_report.excluded_surface
        && !plane_report.criterion_agrees
        && !plane_report.adjoint_nef
        && plane_report.witnesses.is_empty();

    let elapsed = report().elapsed;
    let in_time = elapsed < Duration::from_secs(300);
    let pass = part1 == (6185, 0) && part2 == (6185, 0) && plane_exception && in_time;
    verdict(
        3,
        pass,
        &format!(
            "nef direction {part1:?}, ample direction {part2:?}, plane O(1) breaks part 1 as expected: {plane_exception}, campaign took {elapsed:?}"
        ),
    );
}

/// Criterion 4: for every campaign pair with L² >= 10, no (3,1) witness
/// fires and removing that pair from the obstruction list flips no verdict.
#[test]
fn criterion_4_high_degree_refinement() {
    let refinement = tally("refinement_L2ge10");
    let pass = refinement == (6169, 0);
    verdict(
        4,
        pass,
        &format!("(3,1)-free and verdict-stable on {} pairs with L² ≥ 10 ({} failures)", refinement.0, refinement.1),
    );
}

/// Criterion 5: the Pick identity is exact on the full box-6 enumeration,
/// on every campaign polytope, and on 1000 random hulls; the interior-point
/// and volume lemmas for >= 5 vertices hold across the box-8 sweep; and the
/// degree bound L² >= L·D_i + 4 holds on every campaign pair with >= 5 rays.
#[test]
fn criterion_5_lattice_lemmas() {
    let pick = tally("pick");
    let box6 = report().totals.polygons == 144_544 && pick == (150_739, 0);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hulls = 0u32;
    let mut random_ok = true;
    while hulls < 1000 {
        let n = rng.gen_range(3..=12);
        let pts: Vec<LatticePoint> = (0..n)
            .map(|_| LatticePoint::new(rng.gen_range(-30..=30), rng.gen_range(-30..=30)))
            .collect();
        let Ok(hull) = convex_hull(&pts) else { continue };
        hulls += 1;
        let c = count_points(&hull);
        if normalized_volume(&hull) != c.boundary + 2 * c.interior - 2 {
            random_ok = false;
            break;
        }
    }

    let sweep = pentagon_property_sweep(8).expect("box-8 sweep runs");
    let sweep_ok = sweep.passed()
        && sweep.visited == 100_650_129
        && sweep.with_edge_length_4 == 21_314_586
        && sweep.with_longer_edge == 16_163_182;

    let lemma31 = tally("lemma31");
    let lemma33 = tally("lemma33");
    let lemma34 = tally("lemma34");
    let campaign_ok =
        lemma31 == (142_758, 0) && lemma33 == (42_079, 0) && lemma34 == (5_589, 0);

    let pass = box6 && random_ok && sweep_ok && campaign_ok;
    verdict(
        5,
        pass,
        &format!(
            "Pick exact on {} box-6/campaign polygons and 1000 random hulls ({random_ok}); box-8 sweep visited {} systems with zero interior/volume violations ({sweep_ok}); degree bound on {} pairs ({} failures)",
            pick.0, sweep.visited, lemma34.0, lemma34.1
        ),
    );
}

/// Criterion 6: the index inequality (L·D)² >= L²·D² holds for every ray on
/// every campaign pair.
#[test]
fn criterion_6_index_inequality() {
    let hodge = tally("hodge");
    let pass = hodge == (6195, 0);
    verdict(
        6,
        pass,
        &format!("(L·D)² ≥ L²·D² on all rays of {} pairs ({} violations)", hodge.0, hodge.1),
    );
}

/// Criterion 7: the degree guarantees — min L·D >= 2 forces the adjoint nef;
/// L² >= 10 with min >= 3 forces it ample; and K+2A is nef and K+4A ample
/// for every enumerated ample A.
#[test]
fn criterion_7_degree_guarantees() {
    let bpf = tally("fujita_bpf");
    let vample = tally("fujita_vample");
    let multiples = tally("fujita_2A_4A");
    let pass = bpf == (6185, 0) && vample == (6185, 0) && multiples == (6185, 0);
    verdict(
        7,
        pass,
        &format!("nef guarantee {bpf:?}, ample guarantee {vample:?}, K+2A/K+4A {multiples:?}"),
    );
}

/// Criterion 8: re-running the identical campaign, sequentially and under a
/// different thread pool, reproduces the shared report byte for byte.
#[test]
fn criterion_8_byte_identical_reports() {
    let base = report().to_json();
    let sequential = run_campaign(&CampaignConfig::default())
        .expect("campaign runs")
        .to_json();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(2)
        .build()
        .expect("pool");
    let pooled = pool
        .install(|| run_campaign(&CampaignConfig::default()).expect("campaign runs"))
        .to_json();
    let pass = base == sequential && base == pooled;
    verdict(
        8,
        pass,
        &format!(
            "three runs (shared, sequential, 2-thread pool) produced {} bytes each, byte-identical: {pass}",
            base.len()
        ),
    );
}
