//! Complete fans in the plane: the combinatorial skeleton of a compact toric
//! surface.
//!
//! A fan is stored as its primitive ray generators in strictly increasing
//! counterclockwise order winding exactly once around the origin; the maximal
//! cones are the pairs of cyclically adjacent rays. Cone `i` is spanned by
//! rays `i` and `i + 1 (mod n)`. The fan is smooth when every such pair is a
//! lattice basis (`det = 1`), which for surfaces is equivalent to the toric
//! variety being nonsingular.
//!
//! For a smooth complete fan, each ray `u_i` satisfies the wall relation
//! `u_{i-1} + u_{i+1} = b_i * u_i` with integer `b_i`; the `b_i` determine
//! the whole intersection theory (see [`crate::intersection`]) and satisfy
//! `sum b_i = 3n - 12`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::Error;
use crate::lattice::{ccw_angular_cmp, LatticePoint, LatticePolygon};

/// Largest ray coordinate magnitude accepted. Twice the polygon bound, so
/// the normal fan of any valid polygon is always representable.
pub const RAY_BOUND: i64 = 2_000_000;

/// A complete fan in the plane, determined by its primitive rays in
/// counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CompleteFan {
    rays: Vec<LatticePoint>,
}

impl CompleteFan {
    /// Validating constructor: at least three nonzero primitive rays in
    /// strictly increasing counterclockwise order, winding exactly once.
    pub fn new(rays: Vec<LatticePoint>) -> Result<Self, Error> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::DegenerateInput(format!(
                "a complete fan needs at least 3 rays, got {n}"
            )));
        }
        for (i, u) in rays.iter().enumerate() {
            if u.is_zero() {
                return Err(Error::InvalidParameter(format!("ray {i} is zero")));
            }
            for c in [u.x, u.y] {
                if c.abs() > RAY_BOUND {
                    return Err(Error::InputTooLarge(c));
                }
            }
            if !u.is_primitive() {
                return Err(Error::InvalidParameter(format!(
                    "ray {i} = {u} is not primitive"
                )));
            }
        }
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            if a.cross(b) <= 0 {
                return Err(Error::InvalidParameter(format!(
                    "rays {i} and {} are not in strict counterclockwise order \
                     (cross product {})",
                    (i + 1) % n,
                    a.cross(b)
                )));
            }
        }
        let wraps = (0..n)
            .filter(|&i| ccw_angular_cmp(rays[i], rays[(i + 1) % n]) == Ordering::Greater)
            .count();
        if wraps != 1 {
            return Err(Error::InvalidParameter(format!(
                "rays wind around the origin {wraps} times, expected once"
            )));
        }
        Ok(Self { rays })
    }

    /// Builds a fan from rays in arbitrary order, sorting counterclockwise
    /// starting from the positive x-axis. Returns the fan together with the
    /// permutation applied, so parallel data (divisor coefficients) can be
    /// permuted the same way: `fan.rays()[k] == rays[perm[k]]`.
    pub fn from_unsorted(rays: &[LatticePoint]) -> Result<(Self, Vec<usize>), Error> {
        for (i, u) in rays.iter().enumerate() {
            if u.is_zero() {
                return Err(Error::InvalidParameter(format!("ray {i} is zero")));
            }
        }
        let mut perm: Vec<usize> = (0..rays.len()).collect();
        perm.sort_by(|&i, &j| ccw_angular_cmp(rays[i], rays[j]));
        for w in perm.windows(2) {
            if ccw_angular_cmp(rays[w[0]], rays[w[1]]) == Ordering::Equal {
                return Err(Error::InvalidParameter(format!(
                    "rays {} and {} point in the same direction",
                    w[0], w[1]
                )));
            }
        }
        let fan = Self::new(perm.iter().map(|&i| rays[i]).collect())?;
        Ok((fan, perm))
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> LatticePoint {
        self.rays[i % self.rays.len()]
    }

    /// First maximal cone whose rays are not a lattice basis, with its
    /// determinant, or `None` when the fan is smooth.
    pub fn smoothness_violation(&self) -> Option<(usize, i64)> {
        let n = self.rays.len();
        (0..n).find_map(|i| {
            let d = self.rays[i].cross(self.rays[(i + 1) % n]);
            (d != 1).then_some((i, i64::try_from(d).expect("ray cross products are small")))
        })
    }

    /// Whether every maximal cone is spanned by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.smoothness_violation().is_none()
    }

    /// Wall relations of a smooth complete fan: `b[i]` is the unique integer
    /// with `u_{i-1} + u_{i+1} = b[i] * u_i`. Fails with [`Error::NotSmooth`]
    /// when some cone is not unimodular (the relation then has no integer
    /// solution in general).
    pub fn wall_data(&self) -> Result<WallData, Error> {
        if let Some((cone, det)) = self.smoothness_violation() {
            let n = self.rays.len();
            return Err(Error::NotSmooth {
                cone,
                next: (cone + 1) % n,
                det,
            });
        }
        let n = self.rays.len();
        let b = (0..n)
            .map(|i| {
                let s = self.rays[(i + n - 1) % n] + self.rays[(i + 1) % n];
                let u = self.rays[i];
                let b = if u.x != 0 { s.x / u.x } else { s.y / u.y };
                debug_assert!(
                    b * u.x == s.x && b * u.y == s.y,
                    "wall relation must have an integer solution on a smooth fan"
                );
                b
            })
            .collect();
        Ok(WallData { b })
    }

    /// Star subdivision of cone `i`: inserts the primitive ray
    /// `u_i + u_{i+1}` between rays `i` and `i + 1`. The result is again
    /// smooth and complete; it is the fan of the blowup of the surface at the
    /// torus-fixed point of cone `i`.
    pub fn blow_up(&self, cone: usize) -> Result<CompleteFan, Error> {
        if let Some((cone, det)) = self.smoothness_violation() {
            let n = self.rays.len();
            return Err(Error::NotSmooth {
                cone,
                next: (cone + 1) % n,
                det,
            });
        }
        let n = self.rays.len();
        if cone >= n {
            return Err(Error::IndexOutOfRange {
                index: cone,
                len: n,
            });
        }
        let mut rays = self.rays.clone();
        rays.insert(cone + 1, self.rays[cone] + self.rays[(cone + 1) % n]);
        Self::new(rays)
    }

    /// Cyclic rotation-and-reflection invariant of the wall data: the
    /// lexicographically least rotation of `b` or of `b` reversed. Two smooth
    /// complete fans have equal invariants exactly when some unimodular map
    /// (orientation preserving or not) carries one onto the other, since the
    /// rays satisfy `u_{i+1} = b_i u_i - u_{i-1}` and any two adjacent rays
    /// form a lattice basis.
    pub fn cyclic_b_invariant(&self) -> Result<Vec<i64>, Error> {
        let b = self.wall_data()?.b;
        let mut best: Option<Vec<i64>> = None;
        let mut reversed = b.clone();
        reversed.reverse();
        for word in [&b, &reversed] {
            for k in 0..word.len() {
                let mut rotated = word.clone();
                rotated.rotate_left(k);
                if best.as_ref().is_none_or(|current| rotated < *current) {
                    best = Some(rotated);
                }
            }
        }
        Ok(best.expect("fan has rays"))
    }

    /// Offset `k` such that `other.rays()[j] == self.rays()[(j + k) % n]`
    /// for all `j`, if the two fans agree up to cyclic relabeling.
    pub fn cyclic_match(&self, other: &CompleteFan) -> Option<usize> {
        let n = self.rays.len();
        if other.rays.len() != n {
            return None;
        }
        (0..n).find(|&k| (0..n).all(|j| other.rays[j] == self.rays[(j + k) % n]))
    }

    /// Fan of the projective plane: rays `(1,0), (0,1), (-1,-1)`.
    pub fn projective_plane() -> Self {
        Self::new(vec![
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
            LatticePoint::new(-1, -1),
        ])
        .expect("seed fan is valid")
    }

    /// Fan of a product of two projective lines: rays
    /// `(1,0), (0,1), (-1,0), (0,-1)`.
    pub fn p1_cross_p1() -> Self {
        Self::new(vec![
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
            LatticePoint::new(-1, 0),
            LatticePoint::new(0, -1),
        ])
        .expect("seed fan is valid")
    }

    /// Fan of the Hirzebruch surface with parameter `r >= 1`: rays
    /// `(1,0), (0,1), (-1,r), (0,-1)`.
    pub fn hirzebruch(r: i64) -> Result<Self, Error> {
        if r < 1 {
            return Err(Error::InvalidParameter(format!(
                "Hirzebruch parameter must be at least 1, got {r}"
            )));
        }
        Self::new(vec![
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
            LatticePoint::new(-1, r),
            LatticePoint::new(0, -1),
        ])
    }
}

/// Wall relations `u_{i-1} + u_{i+1} = b_i * u_i` of a smooth complete fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallData {
    b: Vec<i64>,
}

impl WallData {
    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn sum(&self) -> i64 {
        self.b.iter().sum()
    }
}

/// Inner normal fan of a polygon, with the divisor coefficients that recover
/// the polygon: ray `i` is the primitive inward normal of edge `i` (from
/// vertex `i` to vertex `i + 1`), and `a[i] = -min <m, u_i>` over the
/// polygon, so that `P = { m : <m, u_i> >= -a[i] for all i }`.
pub fn normal_fan(polygon: &LatticePolygon) -> (CompleteFan, Vec<i64>) {
    let v = polygon.vertices();
    let n = v.len();
    let mut rays = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let w = (v[(i + 1) % n] - v[i]).primitive();
        let u = LatticePoint::new(-w.y, w.x);
        rays.push(u);
        let a = -v[i].dot(u);
        coeffs.push(i64::try_from(a).expect("coefficients of bounded polygons fit in i64"));
    }
    let fan = CompleteFan::new(rays)
        .expect("edge normals of a convex polygon form a complete fan");
    (fan, coeffs)
}
