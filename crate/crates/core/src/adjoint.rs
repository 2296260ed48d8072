//! Numerical classification of adjoint divisors `K + L` for an ample `L` on
//! a smooth complete toric surface.
//!
//! The criterion implemented here is a witness search over the prime
//! invariant divisors: `K + L` fails to be basepoint free exactly when some
//! invariant curve has `(L·D, D²) = (1, 0)`, and fails to be ample exactly
//! when some invariant curve realizes one of the four pairs
//! `(1,-1), (1,0), (2,0), (3,1)` — with the projective plane (the unique
//! three-ray surface) excluded from the "exactly when" direction. When
//! `L² >= 10` the `(3,1)` pair can never occur (its presence would violate
//! the Hodge-index inequality `9 = (L·D)² >= L²·D² = L²`), so dropping it
//! changes no verdict; the verification campaign replays that refinement.
//!
//! [`classify`] cross-checks the witness search against the direct adjoint
//! computation `(L+K)·D_i = L·D_i - D_i² - 2` and reports both, plus enough
//! per-ray data for a reader to re-derive every verdict by hand.

use serde::Serialize;

use crate::error::Error;
use crate::intersection::TorusDivisor;
use crate::lattice::LatticePoint;

/// The `(L·D, D²)` pairs that obstruct ampleness of `K + L`. The `(1, 0)`
/// pair is simultaneously the basepoint-freeness obstruction.
pub const AMPLE_OBSTRUCTION_PAIRS: [(i64, i64); 4] = [(1, -1), (1, 0), (2, 0), (3, 1)];

/// Which question a [`Witness`] answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    /// `(L·D, D²) = (1, 0)`: the adjoint divisor is not basepoint free
    /// (hence also not ample).
    BpfObstruction,
    /// One of the remaining pairs `(1,-1), (2,0), (3,1)`: the adjoint divisor
    /// is not ample, though it may still be basepoint free.
    AmpleObstruction,
}

/// A prime invariant divisor certifying a negative verdict about `K + L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    /// Ray index of the certifying curve.
    pub ray: usize,
    /// `L·D` for that curve.
    pub degree: i64,
    /// `D²` for that curve.
    pub self_intersection: i64,
    pub kind: WitnessKind,
}

/// Per-ray data sufficient to hand-check a classification: the degree, the
/// self-intersection, and the adjoint number `L·D_i - D_i² - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RayAnalysis {
    pub ray: usize,
    pub degree: i64,
    pub self_intersection: i64,
    pub adjoint_number: i64,
}

/// Everything [`classify`] knows about one polarized surface `(X, L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjointReport {
    /// Rotation/reflection-invariant surface label (ray count plus the
    /// canonical wall sequence).
    pub surface_id: String,
    /// Coefficients of `L` in the prime invariant divisors.
    pub l_coeffs: Vec<i64>,
    /// `L²`.
    pub l_squared: i64,
    /// Whether `K + L` is nef (equivalently, basepoint free here).
    pub adjoint_nef: bool,
    /// Whether `K + L` is ample (equivalently, very ample here).
    pub adjoint_ample: bool,
    /// Certifying curves: `(1,0)` rays as [`WitnessKind::BpfObstruction`],
    /// the remaining obstruction pairs as [`WitnessKind::AmpleObstruction`];
    /// each ray appears at most once, under its strongest verdict.
    pub witnesses: Vec<Witness>,
    /// Whether the witness search and the direct adjoint-number computation
    /// reach the same two verdicts. Guaranteed on every surface except the
    /// projective plane, where the "no witness" direction genuinely fails.
    pub criterion_agrees: bool,
    /// True exactly on the projective plane (the unique three-ray surface).
    pub excluded_surface: bool,
    /// Degree / self-intersection / adjoint number for every ray.
    pub per_ray: Vec<RayAnalysis>,
    /// Vertices of the polytope of `L`, counterclockwise.
    pub polytope_vertices: Vec<LatticePoint>,
}

/// Guarantees from the minimum invariant-curve degree of `L` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FujitaGuarantees {
    /// `min_i L·D_i >= 2`: the adjoint divisor is guaranteed nef.
    pub bpf_guarantee: bool,
    /// `L² >= 10` and `min_i L·D_i >= 3`: the adjoint divisor is guaranteed
    /// ample (hence very ample).
    pub vample_guarantee: bool,
}

fn witnesses_matching(
    l: &TorusDivisor<'_>,
    pairs: &[(i64, i64)],
    kind: WitnessKind,
) -> Result<Vec<Witness>, Error> {
    l.require_ample()?;
    let b = l.surface().walls().b();
    let mut out = Vec::new();
    for (ray, degree) in l.degrees()?.into_iter().enumerate() {
        let self_intersection = -b[ray];
        if pairs.contains(&(degree, self_intersection)) {
            out.push(Witness {
                ray,
                degree,
                self_intersection,
                kind,
            });
        }
    }
    Ok(out)
}

/// All prime invariant divisors with `(L·D, D²) = (1, 0)`; nonempty exactly
/// when `K + L` is not basepoint free (surfaces other than the plane).
///
/// Errors with [`Error::NotAmple`] when `L` is not ample.
pub fn bpf_witnesses(l: &TorusDivisor<'_>) -> Result<Vec<Witness>, Error> {
    witnesses_matching(l, &[(1, 0)], WitnessKind::BpfObstruction)
}

/// All prime invariant divisors whose `(L·D, D²)` pair lies in
/// [`AMPLE_OBSTRUCTION_PAIRS`]; nonempty exactly when `K + L` is not ample
/// (surfaces other than the plane).
///
/// When `L² >= 10` a `(3, 1)` pair is impossible (it would contradict the
/// Hodge-index inequality), which is asserted in debug builds and replayed
/// as a campaign check in release runs.
///
/// Errors with [`Error::NotAmple`] when `L` is not ample.
pub fn ample_witnesses(l: &TorusDivisor<'_>) -> Result<Vec<Witness>, Error> {
    let out = witnesses_matching(l, &AMPLE_OBSTRUCTION_PAIRS, WitnessKind::AmpleObstruction)?;
    debug_assert!(
        l.self_intersection()? < 10
            || out
                .iter()
                .all(|w| (w.degree, w.self_intersection) != (3, 1)),
        "a (3,1) witness with L^2 >= 10 contradicts the Hodge-index inequality"
    );
    Ok(out)
}

/// Full adjoint classification of a polarized surface `(X, L)`.
///
/// Runs both computation paths — the witness search over invariant curves
/// and the direct minimum of the adjoint numbers — and records whether they
/// agree. Agreement is a theorem away from the projective plane; the plane
/// (flagged `excluded_surface`) genuinely breaks the basepoint-freeness
/// biconditional (e.g. the degree-1 polarization has negative adjoint
/// numbers but no `(1,0)` curve, since every curve there has `D² = 1`).
///
/// Errors with [`Error::NotAmple`] when `L` is not ample.
pub fn classify(l: &TorusDivisor<'_>) -> Result<AdjointReport, Error> {
    l.require_ample()?;
    let s = l.surface();
    let n = s.n_rays();
    let degrees = l.degrees()?;
    let adjoint = l.adjoint_numbers()?;
    let min_adjoint = adjoint.min();
    let adjoint_nef = min_adjoint >= 0;
    let adjoint_ample = min_adjoint > 0;

    let bpf = bpf_witnesses(l)?;
    let amp = ample_witnesses(l)?;
    let part1 = !adjoint_nef == !bpf.is_empty();
    let part2 = !adjoint_ample == !amp.is_empty();

    let mut witnesses = bpf;
    witnesses.extend(
        amp.into_iter()
            .filter(|w| (w.degree, w.self_intersection) != (1, 0)),
    );
    witnesses.sort_by_key(|w| w.ray);

    let b = s.walls().b();
    let per_ray = (0..n)
        .map(|ray| RayAnalysis {
            ray,
            degree: degrees[ray],
            self_intersection: -b[ray],
            adjoint_number: adjoint.values()[ray],
        })
        .collect();

    let polytope = l.polytope_of_divisor()?;
    let polytope_vertices = polytope.vertex_list();

    let invariant = s
        .fan()
        .cyclic_b_invariant()
        .expect("surface fans are smooth");
    Ok(AdjointReport {
        surface_id: format!("n={n} b={invariant:?}"),
        l_coeffs: l.coeffs().to_vec(),
        l_squared: l.self_intersection()?,
        adjoint_nef,
        adjoint_ample,
        witnesses,
        criterion_agrees: part1 && part2,
        excluded_surface: n == 3,
        per_ray,
        polytope_vertices,
    })
}

/// Degree-based guarantees for the adjoint divisor: minimum invariant-curve
/// degree at least 2 forces `K + L` nef, and `L² >= 10` with minimum degree
/// at least 3 forces `K + L` ample.
///
/// Errors with [`Error::NotAmple`] when `L` is not ample and with
/// [`Error::ExcludedSurface`] on the projective plane, where the guarantees
/// are false (its degree-2 polarization has minimum degree 2 yet a negative
/// adjoint number).
pub fn fujita_check(l: &TorusDivisor<'_>) -> Result<FujitaGuarantees, Error> {
    l.require_ample()?;
    if l.surface().n_rays() == 3 {
        return Err(Error::ExcludedSurface(
            "adjoint degree guarantees exclude the projective plane".into(),
        ));
    }
    let min = l
        .degrees()?
        .into_iter()
        .min()
        .expect("fan has at least 3 rays");
    let l2 = l.self_intersection()?;
    Ok(FujitaGuarantees {
        bpf_guarantee: min >= 2,
        vample_guarantee: l2 >= 10 && min >= 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::CompleteFan;
    use crate::intersection::Surface;
    use crate::lattice::LatticePoint;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn surface(fan: CompleteFan) -> Surface {
        Surface::new(fan).expect("fan is smooth")
    }

    fn pair_set(ws: &[Witness]) -> Vec<(usize, i64, i64)> {
        ws.iter()
            .map(|w| (w.ray, w.degree, w.self_intersection))
            .collect()
    }

    #[test]
    fn bpf_witness_examples() {
        let s = surface(CompleteFan::p1_cross_p1());
        // Unit square: every ray has degree 1 on a flat wall.
        let unit = s.divisor(vec![0, 0, 1, 1]).unwrap();
        let ws = bpf_witnesses(&unit).unwrap();
        assert_eq!(pair_set(&ws), vec![(0, 1, 0), (1, 1, 0), (2, 1, 0), (3, 1, 0)]);
        assert!(ws.iter().all(|w| w.kind == WitnessKind::BpfObstruction));
        // 3x3 square: no degree-1 curve at all.
        let three = s.divisor(vec![0, 0, 3, 3]).unwrap();
        assert!(bpf_witnesses(&three).unwrap().is_empty());

        // Ruled surfaces: the section with c·(fiber class) + section class
        // keeps two flat rays at degree 1.
        for r in 1..=3 {
            for c in 1..=3 {
                let s = surface(CompleteFan::hirzebruch(r).unwrap());
                let l = s.divisor(vec![0, 0, c, 1]).unwrap();
                let ws = bpf_witnesses(&l).unwrap();
                assert_eq!(
                    pair_set(&ws),
                    vec![(0, 1, 0), (2, 1, 0)],
                    "r = {r}, c = {c}"
                );
            }
        }
    }

    #[test]
    fn ample_witness_examples() {
        let s = surface(CompleteFan::p1_cross_p1());
        let two = s.divisor(vec![0, 0, 2, 2]).unwrap();
        let ws = ample_witnesses(&two).unwrap();
        assert_eq!(pair_set(&ws), vec![(0, 2, 0), (1, 2, 0), (2, 2, 0), (3, 2, 0)]);
        assert!(ws.iter().all(|w| w.kind == WitnessKind::AmpleObstruction));
        let three = s.divisor(vec![0, 0, 3, 3]).unwrap();
        assert!(ample_witnesses(&three).unwrap().is_empty());

        // First ruled surface, one fiber plus c sections: the -1-curve is a
        // (1,-1) witness for every c.
        for c in 1..=3 {
            let s = surface(CompleteFan::hirzebruch(1).unwrap());
            let l = s.divisor(vec![0, 0, 1, c]).unwrap();
            let ws = ample_witnesses(&l).unwrap();
            assert!(
                ws.iter().any(|w| w.ray == 1 && w.degree == 1 && w.self_intersection == -1),
                "c = {c}"
            );
        }
    }

    #[test]
    fn the_three_one_pair_is_realizable_below_degree_ten() {
        // First ruled surface, L with degrees (2,1,2,3): the positive wall
        // carries (L·D, D²) = (3, 1) while L² = 8 < 10 — the pair the
        // refinement rules out for L² >= 10 does occur below it.
        let s = surface(CompleteFan::hirzebruch(1).unwrap());
        let l = s.divisor(vec![0, 0, 1, 2]).unwrap();
        assert_eq!(l.self_intersection().unwrap(), 8);
        assert_eq!(l.degrees().unwrap(), vec![2, 1, 2, 3]);
        let ws = ample_witnesses(&l).unwrap();
        assert_eq!(
            pair_set(&ws),
            vec![(0, 2, 0), (1, 1, -1), (2, 2, 0), (3, 3, 1)]
        );
    }

    #[test]
    fn witness_search_requires_ample() {
        let s = surface(CompleteFan::p1_cross_p1());
        let fiber = s.divisor(vec![0, 0, 1, 0]).unwrap();
        assert_eq!(
            bpf_witnesses(&fiber),
            Err(Error::NotAmple { ray: 0, degree: 0 })
        );
        assert_eq!(
            ample_witnesses(&fiber),
            Err(Error::NotAmple { ray: 0, degree: 0 })
        );
        assert!(matches!(classify(&fiber), Err(Error::NotAmple { .. })));
        assert!(matches!(fujita_check(&fiber), Err(Error::NotAmple { .. })));
    }

    #[test]
    fn classify_unit_square() {
        let s = surface(CompleteFan::p1_cross_p1());
        let unit = s.divisor(vec![0, 0, 1, 1]).unwrap();
        let report = classify(&unit).unwrap();
        assert!(!report.adjoint_nef);
        assert!(!report.adjoint_ample);
        assert!(!report.excluded_surface);
        assert!(report.criterion_agrees);
        assert_eq!(report.l_squared, 2);
        assert_eq!(report.witnesses.len(), 4);
        assert!(report
            .witnesses
            .iter()
            .all(|w| w.kind == WitnessKind::BpfObstruction));
        assert_eq!(report.surface_id, "n=4 b=[0, 0, 0, 0]");
        assert_eq!(
            report.polytope_vertices,
            vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]
        );
        assert_eq!(
            report.per_ray[0],
            RayAnalysis {
                ray: 0,
                degree: 1,
                self_intersection: 0,
                adjoint_number: -1
            }
        );
    }

    #[test]
    fn classify_two_by_three_rectangle() {
        let s = surface(CompleteFan::p1_cross_p1());
        let l = s.divisor(vec![0, 0, 2, 3]).unwrap();
        let report = classify(&l).unwrap();
        assert!(report.adjoint_nef);
        assert!(!report.adjoint_ample);
        assert!(report.criterion_agrees);
        // Exactly the two short-direction rays obstruct ampleness.
        assert_eq!(
            pair_set(&report.witnesses),
            vec![(1, 2, 0), (3, 2, 0)]
        );
        assert!(report
            .witnesses
            .iter()
            .all(|w| w.kind == WitnessKind::AmpleObstruction));
    }

    #[test]
    fn classify_plane_is_the_expected_exception() {
        let s = surface(CompleteFan::projective_plane());
        // Degree 1: adjoint numbers -2, yet no (1,0) curve exists (every
        // curve has self-intersection 1), so the biconditional fails — and
        // the report flags the surface as excluded.
        let o1 = s.divisor(vec![0, 0, 1]).unwrap();
        let report = classify(&o1).unwrap();
        assert!(report.excluded_surface);
        assert!(!report.adjoint_nef);
        assert!(report.witnesses.is_empty());
        assert!(!report.criterion_agrees);

        // Degree 2 breaks the same direction.
        let o2 = s.divisor(vec![0, 0, 2]).unwrap();
        let report = classify(&o2).unwrap();
        assert!(!report.adjoint_nef);
        assert!(!report.criterion_agrees);

        // Degree 3 happens to agree: adjoint nef but not ample, and all
        // three curves show the (3,1) pair.
        let o3 = s.divisor(vec![0, 0, 3]).unwrap();
        let report = classify(&o3).unwrap();
        assert!(report.adjoint_nef);
        assert!(!report.adjoint_ample);
        assert!(report.criterion_agrees);
        assert_eq!(
            pair_set(&report.witnesses),
            vec![(0, 3, 1), (1, 3, 1), (2, 3, 1)]
        );
    }

    #[test]
    fn classify_ruled_surface_degree_one_fiber() {
        // Second ruled surface: one section plus c fibers leaves the
        // degree-1 flat rays, so the adjoint divisor is not basepoint free.
        for c in 1..=3 {
            let s = surface(CompleteFan::hirzebruch(2).unwrap());
            let l = s.divisor(vec![0, 0, c, 1]).unwrap();
            let report = classify(&l).unwrap();
            assert!(!report.adjoint_nef, "c = {c}");
            assert!(report.criterion_agrees, "c = {c}");
            assert!(
                report
                    .witnesses
                    .iter()
                    .any(|w| w.ray == 2
                        && w.degree == 1
                        && w.self_intersection == 0
                        && w.kind == WitnessKind::BpfObstruction),
                "c = {c}"
            );
        }
    }

    #[test]
    fn every_witness_certifies_its_verdict() {
        // Soundness: a bpf witness pins adjoint number -1 at its ray; any
        // obstruction witness pins adjoint number <= 0 at its ray.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        let fans = vec![
            CompleteFan::projective_plane(),
            CompleteFan::p1_cross_p1(),
            CompleteFan::hirzebruch(1).unwrap(),
            CompleteFan::hirzebruch(3).unwrap(),
            CompleteFan::p1_cross_p1().blow_up(2).unwrap(),
        ];
        for fan in fans {
            let s = surface(fan);
            let n = s.n_rays();
            let mut found = 0;
            for _ in 0..400 {
                let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
                let l = s.divisor(coeffs).unwrap();
                if !l.is_ample().unwrap() {
                    continue;
                }
                found += 1;
                let adjoint = l.adjoint_numbers().unwrap();
                for w in bpf_witnesses(&l).unwrap() {
                    assert_eq!(adjoint.values()[w.ray], -1);
                }
                for w in ample_witnesses(&l).unwrap() {
                    assert!(adjoint.values()[w.ray] <= 0);
                }
            }
            assert!(found > 0, "sample found no ample divisor");
        }
    }

    #[test]
    fn biconditionals_hold_on_small_sweeps_away_from_the_plane() {
        // Exhaustive little sweep over normalized polarizations of the
        // products and ruled surfaces: the witness search and the adjoint
        // numbers must reach identical verdicts.
        let mut fans = vec![CompleteFan::p1_cross_p1()];
        for r in 1..=4 {
            fans.push(CompleteFan::hirzebruch(r).unwrap());
        }
        for fan in fans {
            let s = surface(fan);
            for c in 1..=6 {
                for d in 1..=6 {
                    let l = s.divisor(vec![0, 0, c, d]).unwrap();
                    if !l.is_ample().unwrap() {
                        continue;
                    }
                    let report = classify(&l).unwrap();
                    assert!(
                        report.criterion_agrees,
                        "disagreement at c={c} d={d} on {}",
                        report.surface_id
                    );
                }
            }
        }
    }

    #[test]
    fn fujita_guarantee_examples() {
        let s = surface(CompleteFan::p1_cross_p1());
        let two = s.divisor(vec![0, 0, 2, 2]).unwrap();
        let g = fujita_check(&two).unwrap();
        assert!(g.bpf_guarantee);
        assert!(!g.vample_guarantee); // L² = 8 < 10
        assert!(classify(&two).unwrap().adjoint_nef);

        let three = s.divisor(vec![0, 0, 3, 3]).unwrap();
        let g = fujita_check(&three).unwrap();
        assert!(g.bpf_guarantee);
        assert!(g.vample_guarantee); // L² = 18, min degree 3
        assert!(classify(&three).unwrap().adjoint_ample);

        let four = s.divisor(vec![0, 0, 4, 4]).unwrap();
        let g = fujita_check(&four).unwrap();
        assert!(g.vample_guarantee); // L² = 32, min degree 4
        assert!(classify(&four).unwrap().adjoint_ample);

        let unit = s.divisor(vec![0, 0, 1, 1]).unwrap();
        let g = fujita_check(&unit).unwrap();
        assert!(!g.bpf_guarantee);
        assert!(!g.vample_guarantee);

        // The plane is excluded: its degree-2 polarization would fake a
        // bpf guarantee (minimum degree 2) against adjoint number -1.
        let plane = surface(CompleteFan::projective_plane());
        let o2 = plane.divisor(vec![0, 0, 2]).unwrap();
        assert!(matches!(
            fujita_check(&o2),
            Err(Error::ExcludedSurface(_))
        ));
    }

    #[test]
    fn doubled_and_quadrupled_polarizations_on_seeded_samples() {
        // For ample A away from the plane, 2A guarantees a nef adjoint and
        // 4A an ample one; verify both the guarantee flags and the verdicts.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let fans = vec![
            CompleteFan::p1_cross_p1(),
            CompleteFan::hirzebruch(2).unwrap(),
            CompleteFan::hirzebruch(1).unwrap().blow_up(0).unwrap(),
        ];
        for fan in fans {
            let s = surface(fan);
            let n = s.n_rays();
            let mut found = 0;
            for _ in 0..400 {
                let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
                let a = s.divisor(coeffs.clone()).unwrap();
                if !a.is_ample().unwrap() {
                    continue;
                }
                found += 1;
                let twice = s.divisor(coeffs.iter().map(|x| 2 * x).collect()).unwrap();
                let four = s.divisor(coeffs.iter().map(|x| 4 * x).collect()).unwrap();
                assert!(fujita_check(&twice).unwrap().bpf_guarantee);
                assert!(classify(&twice).unwrap().adjoint_nef);
                assert!(fujita_check(&four).unwrap().vample_guarantee);
                assert!(classify(&four).unwrap().adjoint_ample);
            }
            assert!(found > 0, "sample found no ample divisor");
        }
    }
}
