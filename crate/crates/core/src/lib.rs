//! Exact intersection theory on smooth projective toric surfaces.
//!
//! Everything here is integer arithmetic: lattice polygons and their point
//! counts, smooth complete fans in the plane, the intersection pairing of
//! toric prime divisors, nef/ample tests, and the numerical classification of
//! adjoint divisors `K + L` for an ample `L`. On top of the primitives sits a
//! verification layer that enumerates surfaces (seed fans plus blowups),
//! polarizations, and small lattice polygons, and replays every claimed
//! identity and criterion against brute-force oracles, reporting
//! counterexamples as data.
//!
//! Design rules:
//!
//! * No floating point anywhere. All predicates are exact sign computations
//!   on `i64` (with `i128` intermediates where products could overflow).
//! * Inputs are bounded (coordinates beyond ±10^6 are rejected) so that every
//!   intermediate value provably fits.
//! * Failures of mathematical claims are returned as counterexample records,
//!   never asserted away.

pub mod adjoint;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod intersection;
pub mod lattice;

pub use adjoint::{
    ample_witnesses, bpf_witnesses, classify, fujita_check, AdjointReport, FujitaGuarantees,
    RayAnalysis, Witness, WitnessKind, AMPLE_OBSTRUCTION_PAIRS,
};
pub use enumerate::{
    enumerate_ample, enumerate_box_polygons, generate_surfaces, pentagon_property_sweep,
    run_campaign, surface_counterexamples, visit_box_polygons, CampaignConfig, Check,
    CheckStats, Counterexample, GeneratedSurface, PentagonSweepOutcome, Totals,
    VerificationReport, BOX_CAP, MAX_BLOWUPS_CAP, MAX_HIRZEBRUCH_CAP,
};
pub use error::Error;
pub use fan::{normal_fan, CompleteFan, WallData};
pub use intersection::{hodge_check, AdjointNumbers, DivisorPolytope, Surface, TorusDivisor};
pub use lattice::{
    canonical_form, convex_hull, count_points, find_extra_lattice_point, lattice_length,
    normalized_volume, LatticePoint, LatticePolygon, PointCounts, COORD_BOUND,
};
