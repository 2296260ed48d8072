//! Lattice points and convex lattice polygons with exact integer predicates.
//!
//! Conventions used throughout the crate:
//!
//! * polygons are strictly convex and stored counterclockwise (no three
//!   consecutive vertices collinear), rotated so the lexicographically
//!   smallest vertex comes first;
//! * all predicates are sign computations on cross products, evaluated in
//!   `i128` so they are exact for any `i64` input;
//! * "normalized volume" means twice the Euclidean area, which is an integer
//!   for lattice polygons;
//! * point counting iterates the integer bounding box with exact
//!   point-in-polygon predicates. It is deliberately naive: it is the oracle
//!   that everything faster is checked against.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest coordinate magnitude accepted by the validating constructors.
///
/// With coordinates in `±COORD_BOUND`, every cross product fits in 63 bits
/// and every polygon volume fits comfortably in `i64`.
pub const COORD_BOUND: i64 = 1_000_000;

/// A point of the integer lattice (also used as an integer vector).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Cross product `self.x * other.y - self.y * other.x`, exact in `i128`.
    pub fn cross(self, other: Self) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// Dot product, exact in `i128`.
    pub fn dot(self, other: Self) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Greatest common divisor of the coordinates (0 only for the zero vector).
    pub fn content(self) -> i64 {
        self.x.abs().gcd(&self.y.abs())
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Whether the coordinates are coprime.
    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// The primitive vector in the same direction. Zero stays zero.
    pub fn primitive(self) -> Self {
        let g = self.content();
        if g == 0 {
            self
        } else {
            Self::new(self.x / g, self.y / g)
        }
    }

    fn in_bounds(self) -> Result<(), Error> {
        for c in [self.x, self.y] {
            if c.abs() > COORD_BOUND {
                return Err(Error::InputTooLarge(c));
            }
        }
        Ok(())
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(a: [i64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl std::ops::Add for LatticePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for LatticePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Neg for LatticePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Counterclockwise angular order around the origin, starting at the
/// positive x-axis. Parallel vectors pointing the same way compare equal;
/// opposite vectors are half a turn apart. Both arguments must be nonzero.
pub fn ccw_angular_cmp(a: LatticePoint, b: LatticePoint) -> Ordering {
    debug_assert!(!a.is_zero() && !b.is_zero());
    // Half-plane 0 covers angles [0, pi), half-plane 1 covers [pi, 2*pi).
    let half = |v: LatticePoint| -> u8 { u8::from(!(v.y > 0 || (v.y == 0 && v.x > 0))) };
    half(a).cmp(&half(b)).then_with(|| match a.cross(b) {
        c if c > 0 => Ordering::Less,
        c if c < 0 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Number of lattice points on the open segment `(a, b)` plus one; i.e. the
/// lattice length `gcd(|dx|, |dy|)`. Degenerate segments have length 0.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> i64 {
    (b - a).content()
}

/// Result of [`count_points`]: boundary and interior lattice point counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCounts {
    pub boundary: i64,
    pub interior: i64,
}

/// A strictly convex lattice polygon, counterclockwise, with at least three
/// vertices. Construction validates convexity, orientation, a winding number
/// of one, and the coordinate bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Validating constructor. The vertex list must walk the polygon once
    /// counterclockwise with a strict left turn at every vertex.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self, Error> {
        for v in &vertices {
            v.in_bounds()?;
        }
        Self::from_raw(vertices)
    }

    /// Same validation as [`LatticePolygon::new`] minus the coordinate bound.
    /// Used internally where exactness is guaranteed by `i128` arithmetic
    /// (canonical forms and divisor polytopes may legitimately leave the
    /// input coordinate range).
    pub(crate) fn from_raw(vertices: Vec<LatticePoint>) -> Result<Self, Error> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegenerateInput(format!(
                "a polygon needs at least 3 vertices, got {n}"
            )));
        }
        let dir = |i: usize| vertices[(i + 1) % n] - vertices[i];
        for i in 0..n {
            if dir(i).is_zero() {
                return Err(Error::DegenerateInput(format!(
                    "repeated vertex at position {i}"
                )));
            }
        }
        for i in 0..n {
            let c = dir(i).cross(dir((i + 1) % n));
            if c <= 0 {
                return Err(Error::DegenerateInput(format!(
                    "vertices must make a strict left turn at every corner; \
                     turn after vertex {} has cross product {c}",
                    (i + 1) % n
                )));
            }
        }
        // Strict left turns alone admit locally convex curves that wind more
        // than once; demand exactly one wrap in the angular order of edges.
        let wraps = (0..n)
            .filter(|&i| ccw_angular_cmp(dir(i), dir((i + 1) % n)) == Ordering::Greater)
            .count();
        if wraps != 1 {
            return Err(Error::DegenerateInput(format!(
                "edge directions wind around the origin {wraps} times, expected once"
            )));
        }
        // Normalize the starting vertex so equal polygons compare equal.
        let start = (0..n)
            .min_by_key(|&i| vertices[i])
            .expect("nonempty vertex list");
        let mut vertices = vertices;
        vertices.rotate_left(start);
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false // a valid polygon always has at least 3 vertices
    }

    /// Exact membership test (boundary counts as inside).
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.edge_signs(p).all(|c| c >= 0)
    }

    /// Exact strict-interior test.
    pub fn contains_interior(&self, p: LatticePoint) -> bool {
        self.edge_signs(p).all(|c| c > 0)
    }

    fn edge_signs(&self, p: LatticePoint) -> impl Iterator<Item = i128> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (b - a).cross(p - a)
        })
    }

    /// Axis-aligned bounding box `((min_x, min_y), (max_x, max_y))`.
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Lattice lengths of the edges, edge `i` running from vertex `i` to
    /// vertex `i + 1`.
    pub fn edge_lengths(&self) -> Vec<i64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| lattice_length(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Applies an integer matrix with determinant ±1 (rows `m[0]`, `m[1]`)
    /// followed by a translation. Orientation is restored by reversing the
    /// vertex order when the determinant is negative.
    pub fn unimodular_image(&self, m: [[i64; 2]; 2], shift: LatticePoint) -> Result<Self, Error> {
        let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
        if det != 1 && det != -1 {
            return Err(Error::InvalidParameter(format!(
                "matrix must have determinant ±1, got {det}"
            )));
        }
        let mut mapped: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|v| {
                LatticePoint::new(
                    m[0][0] * v.x + m[0][1] * v.y + shift.x,
                    m[1][0] * v.x + m[1][1] * v.y + shift.y,
                )
            })
            .collect();
        if det == -1 {
            mapped.reverse();
        }
        Self::new(mapped)
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Convex hull of a point set: the strictly convex counterclockwise polygon
/// spanned by the points. Collinear and duplicate points are dropped.
/// Fails with [`Error::DegenerateInput`] when the hull is not two-dimensional.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolygon, Error> {
    for p in points {
        p.in_bounds()?;
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "convex hull needs at least 3 distinct points, got {}",
            pts.len()
        )));
    }
    // Monotone chain; popping on cross <= 0 discards collinear points.
    let chain = |iter: &mut dyn Iterator<Item = LatticePoint>| -> Vec<LatticePoint> {
        let mut out: Vec<LatticePoint> = Vec::new();
        for p in iter {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if (b - a).cross(p - b) <= 0 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        out
    };
    let lower = chain(&mut pts.iter().copied());
    let upper = chain(&mut pts.iter().rev().copied());
    let mut hull = lower;
    hull.pop();
    hull.extend(upper.iter().take(upper.len() - 1));
    if hull.len() < 3 {
        return Err(Error::DegenerateInput(
            "all points are collinear".to_string(),
        ));
    }
    LatticePolygon::new(hull)
}

/// Twice the area of the polygon (a positive integer), via the shoelace sum.
pub fn normalized_volume(polygon: &LatticePolygon) -> i64 {
    let v = polygon.vertices();
    let n = v.len();
    let total: i128 = (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum();
    debug_assert!(total > 0, "counterclockwise polygons have positive area");
    i64::try_from(total).expect("volume of a bounded polygon fits in i64")
}

/// Exact boundary/interior lattice point counts by iterating the bounding
/// box with exact predicates. Cost is proportional to the bounding box area;
/// this is the desk-scale oracle, not a clever counter.
pub fn count_points(polygon: &LatticePolygon) -> PointCounts {
    let (lo, hi) = polygon.bounding_box();
    let mut counts = PointCounts {
        boundary: 0,
        interior: 0,
    };
    for y in lo.y..=hi.y {
        for x in lo.x..=hi.x {
            let p = LatticePoint::new(x, y);
            let mut inside = true;
            let mut on_edge = false;
            for c in polygon.edge_signs(p) {
                if c < 0 {
                    inside = false;
                    break;
                }
                if c == 0 {
                    on_edge = true;
                }
            }
            if inside {
                if on_edge {
                    counts.boundary += 1;
                } else {
                    counts.interior += 1;
                }
            }
        }
    }
    counts
}

/// Given five lattice points with no three collinear, returns a lattice point
/// of their convex hull distinct from all five: among the five points two
/// must share their coordinate parities (four parity classes), and the
/// midpoint of the first such pair (scanning pairs `(i, j)` in lexicographic
/// index order) is a lattice point. The witness may lie on the hull boundary.
pub fn find_extra_lattice_point(points: &[LatticePoint; 5]) -> Result<LatticePoint, Error> {
    for p in points {
        p.in_bounds()?;
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            if points[i] == points[j] {
                return Err(Error::PreconditionViolated(format!(
                    "points {i} and {j} coincide at {}",
                    points[i]
                )));
            }
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                if (points[j] - points[i]).cross(points[k] - points[i]) == 0 {
                    return Err(Error::PreconditionViolated(format!(
                        "points {i}, {j}, {k} are collinear"
                    )));
                }
            }
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            let (a, b) = (points[i], points[j]);
            if (a.x - b.x) % 2 == 0 && (a.y - b.y) % 2 == 0 {
                return Ok(LatticePoint::new((a.x + b.x) / 2, (a.y + b.y) / 2));
            }
        }
    }
    unreachable!("five points occupy at most four parity classes")
}

/// Canonical representative of the polygon's orbit under unimodular maps and
/// translations: equal outputs exactly characterize unimodular equivalence.
///
/// For each choice of starting vertex and orientation, there is a unique
/// lattice-preserving affine map sending that vertex to the origin, its
/// outgoing edge onto the positive x-axis, and the x-coordinate of the next
/// vertex into `[0, height)`; the canonical form is the lexicographically
/// least of the resulting vertex lists. Output coordinates may leave the
/// input coordinate range (long thin polygons straighten out); volume and
/// all lattice data are preserved.
pub fn canonical_form(polygon: &LatticePolygon) -> LatticePolygon {
    let mut best: Option<Vec<LatticePoint>> = None;
    for flip in [false, true] {
        let verts: Vec<LatticePoint> = if flip {
            // Swap coordinates (determinant -1), reversing to restore ccw.
            polygon
                .vertices()
                .iter()
                .rev()
                .map(|v| LatticePoint::new(v.y, v.x))
                .collect()
        } else {
            polygon.vertices().to_vec()
        };
        let n = verts.len();
        for start in 0..n {
            let rel: Vec<LatticePoint> = (0..n)
                .map(|j| verts[(start + j) % n] - verts[start])
                .collect();
            let candidate = normalize_frame(&rel);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    LatticePolygon::from_raw(best.expect("polygon has vertices"))
        .expect("unimodular image of a valid polygon is valid")
}

/// Maps `rel` (a ccw vertex list starting at the origin) by the unique
/// unimodular matrix taking the first edge direction to `(1, 0)` and the
/// x-coordinate of `rel[2]`'s image into `[0, its height)`.
fn normalize_frame(rel: &[LatticePoint]) -> Vec<LatticePoint> {
    let e = (rel[1] - rel[0]).primitive();
    let egcd = e.x.extended_gcd(&e.y);
    debug_assert_eq!(egcd.gcd, 1, "edge directions are primitive");
    // Rows of the base map: (x, y) from Bezout, and (-e.y, e.x); det = 1.
    let top = (egcd.x as i128, egcd.y as i128);
    let bot = (-(e.y as i128), e.x as i128);
    let apply = |r: (i128, i128), v: LatticePoint| r.0 * v.x as i128 + r.1 * v.y as i128;
    // Shear x -> x + k*y fixing (1, 0); pick k putting x(rel[2]) in [0, y).
    let x2 = apply(top, rel[2]);
    let y2 = apply(bot, rel[2]);
    debug_assert!(y2 > 0, "third vertex lies strictly left of the first edge");
    let k = -x2.div_euclid(y2);
    rel.iter()
        .map(|&v| {
            let x = apply(top, v) + k * apply(bot, v);
            let y = apply(bot, v);
            LatticePoint::new(
                i64::try_from(x).expect("canonical coordinates fit in i64"),
                i64::try_from(y).expect("canonical coordinates fit in i64"),
            )
        })
        .collect()
}
