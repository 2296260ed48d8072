//! Error type shared by every module in the crate.

use thiserror::Error;

use crate::lattice::COORD_BOUND;

/// Errors produced by lattice, fan, intersection, and enumeration routines.
///
/// The library never panics on user input; any violated precondition comes
/// back through one of these variants. The CLI maps them onto its exit-code
/// contract (2 for malformed input, 3 for violated mathematical
/// preconditions).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that does not span a two-dimensional object (fewer than three
    /// distinct points, all points collinear, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A coordinate exceeds the ±`COORD_BOUND` range inside which all
    /// intermediate products provably fit in 64-bit integers.
    #[error("input too large: |{0}| exceeds the coordinate bound {}", COORD_BOUND)]
    InputTooLarge(i64),

    /// The fan has a maximal cone whose ray pair is not a lattice basis.
    #[error("fan is not smooth: cone {cone} (rays {cone} and {next}) has determinant {det}")]
    NotSmooth { cone: usize, next: usize, det: i64 },

    /// A cone or ray index outside `0..n`.
    #[error("index {index} out of range: fan has {len} rays")]
    IndexOutOfRange { index: usize, len: usize },

    /// A parameter outside its documented range (non-positive bound,
    /// non-primitive ray, coefficient list of the wrong length, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two divisors that were expected to live on the same fan do not.
    #[error("divisors live on different fans")]
    FanMismatch,

    /// The divisor fails nefness where a nef divisor is required.
    #[error("divisor is not nef: degree {degree} on ray {ray}")]
    NotNef { ray: usize, degree: i64 },

    /// The divisor fails ampleness where an ample divisor is required.
    #[error("divisor is not ample: degree {degree} on ray {ray}")]
    NotAmple { ray: usize, degree: i64 },

    /// Requested box size beyond the hard enumeration cap.
    #[error("box size {got} exceeds the hard cap {cap}")]
    BoxTooLarge { got: i64, cap: i64 },

    /// The operation is stated only away from this surface (the projective
    /// plane is excluded from the adjoint degree guarantees).
    #[error("surface excluded from this criterion: {0}")]
    ExcludedSurface(String),

    /// A pairing or degree computation left the 64-bit range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
