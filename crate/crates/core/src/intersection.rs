//! Divisor arithmetic and the intersection pairing on a smooth complete
//! toric surface.
//!
//! A [`Surface`] bundles a smooth [`CompleteFan`] with its wall data and the
//! full pairing table of the torus-invariant prime divisors `D_i`: cyclically
//! adjacent invariant curves meet once, non-adjacent ones are disjoint, and
//! the self-intersection is read off the wall relation (`D_i^2 = -b_i`).
//! On three rays every pair of distinct rays is adjacent, which gives the
//! consistent table with all off-diagonal entries 1.
//!
//! Everything else in this module — degrees on invariant curves, adjoint
//! numbers, nef/ample tests, divisor polytopes, the Hodge-index inequality —
//! is exact integer arithmetic over that table. Intermediates are computed in
//! 128 bits; any value that leaves the 64-bit range surfaces as
//! [`Error::Overflow`] instead of wrapping.

use serde::Serialize;

use crate::error::Error;
use crate::fan::{CompleteFan, WallData};
use crate::lattice::{LatticePoint, LatticePolygon};

fn narrow(v: i128, what: &'static str) -> Result<i64, Error> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// A smooth complete toric surface: validated fan, wall relations, and the
/// symmetric pairing table of its prime invariant divisors.
///
/// The table is computed once at construction and is immutable afterwards
/// (except through the explicitly-labelled fault-injection hook used by the
/// verification harness to test itself), so concurrent reads are safe.
#[derive(Clone, Debug)]
pub struct Surface {
    fan: CompleteFan,
    walls: WallData,
    table: Vec<Vec<i64>>,
}

impl Surface {
    /// Builds the intersection data for a smooth complete fan.
    ///
    /// Errors with [`Error::NotSmooth`] when some maximal cone is not spanned
    /// by a lattice basis; the offending cone index is reported.
    pub fn new(fan: CompleteFan) -> Result<Self, Error> {
        let walls = fan.wall_data()?;
        let n = fan.n_rays();
        let mut table = vec![vec![0i64; n]; n];
        for i in 0..n {
            table[i][i] = -walls.b()[i];
            table[i][(i + 1) % n] = 1;
            table[i][(i + n - 1) % n] = 1;
        }
        Ok(Self { fan, walls, table })
    }

    pub fn fan(&self) -> &CompleteFan {
        &self.fan
    }

    pub fn walls(&self) -> &WallData {
        &self.walls
    }

    pub fn n_rays(&self) -> usize {
        self.fan.n_rays()
    }

    /// Pairing `D_i · D_j` of two prime invariant divisors.
    pub fn pairing(&self, i: usize, j: usize) -> Result<i64, Error> {
        let n = self.n_rays();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, len: n });
            }
        }
        Ok(self.table[i][j])
    }

    /// Read-only view of the full pairing table (row `i` holds `D_i · D_j`).
    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }

    /// Deliberately corrupts one pairing entry (kept symmetric) by `delta`.
    ///
    /// This exists solely so the verification harness can demonstrate that it
    /// detects broken intersection arithmetic; it must never be used in
    /// ordinary computation. Degrees computed through the wall relation are
    /// unaffected, which is exactly what lets the two-path agreement checks
    /// catch the corruption.
    pub fn inject_pairing_fault(&mut self, i: usize, j: usize, delta: i64) -> Result<(), Error> {
        let n = self.n_rays();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, len: n });
            }
        }
        self.table[i][j] += delta;
        if i != j {
            self.table[j][i] += delta;
        }
        Ok(())
    }

    /// Wraps a coefficient vector `a` as the divisor `Σ a_i D_i`.
    pub fn divisor(&self, coeffs: Vec<i64>) -> Result<TorusDivisor<'_>, Error> {
        if coeffs.len() != self.n_rays() {
            return Err(Error::PreconditionViolated(format!(
                "divisor has {} coefficients but the fan has {} rays",
                coeffs.len(),
                self.n_rays()
            )));
        }
        Ok(TorusDivisor {
            surface: self,
            coeffs,
        })
    }

    /// The prime invariant divisor `D_i` itself.
    pub fn prime_divisor(&self, i: usize) -> Result<TorusDivisor<'_>, Error> {
        let n = self.n_rays();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        Ok(TorusDivisor {
            surface: self,
            coeffs,
        })
    }

    /// The canonical divisor `K = -Σ D_i`; satisfies `K·D_i = b_i - 2`.
    pub fn canonical_divisor(&self) -> TorusDivisor<'_> {
        TorusDivisor {
            surface: self,
            coeffs: vec![-1; self.n_rays()],
        }
    }

    /// The divisor of the character `m`: coefficients `⟨m, u_i⟩`. Such
    /// divisors are numerically trivial (pairing zero with every `D_i`),
    /// which is what makes two coefficient vectors differing by one
    /// equivalent for every question asked in this crate.
    pub fn principal_divisor(&self, m: LatticePoint) -> Result<TorusDivisor<'_>, Error> {
        let coeffs = self
            .fan
            .rays()
            .iter()
            .map(|&u| narrow(m.dot(u), "principal divisor coefficient"))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TorusDivisor {
            surface: self,
            coeffs,
        })
    }
}

/// Per-ray adjoint numbers `(D + K)·D_i` of a divisor `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjointNumbers {
    values: Vec<i64>,
}

impl AdjointNumbers {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Smallest adjoint number; the adjoint divisor is nef iff this is `>= 0`
    /// and ample iff it is `> 0`.
    pub fn min(&self) -> i64 {
        *self.values.iter().min().expect("fan has at least 3 rays")
    }
}

/// The support polytope of a nef divisor. Ample divisors give a polygon with
/// one edge per ray; nef-but-not-ample divisors may collapse to a segment or
/// a single point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DivisorPolytope {
    Point(LatticePoint),
    Segment([LatticePoint; 2]),
    Polygon(LatticePolygon),
}

impl DivisorPolytope {
    pub fn dimension(&self) -> usize {
        match self {
            DivisorPolytope::Point(_) => 0,
            DivisorPolytope::Segment(_) => 1,
            DivisorPolytope::Polygon(_) => 2,
        }
    }

    pub fn as_polygon(&self) -> Option<&LatticePolygon> {
        match self {
            DivisorPolytope::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// The vertices, in counterclockwise order for the polygon case.
    pub fn vertex_list(&self) -> Vec<LatticePoint> {
        match self {
            DivisorPolytope::Point(p) => vec![*p],
            DivisorPolytope::Segment(s) => s.to_vec(),
            DivisorPolytope::Polygon(p) => p.vertices().to_vec(),
        }
    }
}

/// An integer combination `D = Σ a_i D_i` of the prime invariant divisors of
/// one fixed surface.
#[derive(Clone, Debug)]
pub struct TorusDivisor<'a> {
    surface: &'a Surface,
    coeffs: Vec<i64>,
}

impl<'a> TorusDivisor<'a> {
    pub fn surface(&self) -> &'a Surface {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn check_same_surface(&self, other: &TorusDivisor<'_>) -> Result<(), Error> {
        if std::ptr::eq(self.surface, other.surface) || self.surface.fan == other.surface.fan {
            Ok(())
        } else {
            Err(Error::FanMismatch)
        }
    }

    /// Bilinear intersection number `D·E` over the pairing table.
    pub fn intersect(&self, other: &TorusDivisor<'_>) -> Result<i64, Error> {
        self.check_same_surface(other)?;
        let mut total: i128 = 0;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &c) in other.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let t = self.surface.table[i][j];
                if t == 0 {
                    continue;
                }
                let term = (a as i128)
                    .checked_mul(c as i128)
                    .and_then(|p| p.checked_mul(t as i128))
                    .ok_or(Error::Overflow("intersection pairing"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("intersection pairing"))?;
            }
        }
        narrow(total, "intersection pairing")
    }

    /// `D·D`, i.e. the degree `L^2` when `D` is a polarization.
    pub fn self_intersection(&self) -> Result<i64, Error> {
        self.intersect(self)
    }

    /// Degree on the `i`-th invariant curve via the wall relation:
    /// `D·D_i = a_{i-1} - b_i a_i + a_{i+1}`.
    ///
    /// This path never touches the pairing table, so it stays correct under
    /// [`Surface::inject_pairing_fault`]; the verification harness exploits
    /// the redundancy.
    pub fn degree_on_curve(&self, i: usize) -> Result<i64, Error> {
        let n = self.surface.n_rays();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let a = &self.coeffs;
        let b = self.surface.walls.b()[i] as i128;
        let v = a[(i + n - 1) % n] as i128 - b * a[i] as i128 + a[(i + 1) % n] as i128;
        narrow(v, "degree on invariant curve")
    }

    /// All degrees `D·D_i`, via the wall relation.
    pub fn degrees(&self) -> Result<Vec<i64>, Error> {
        (0..self.surface.n_rays())
            .map(|i| self.degree_on_curve(i))
            .collect()
    }

    /// All degrees `D·D_i`, via the pairing table. Must agree with
    /// [`TorusDivisor::degrees`] on an uncorrupted surface.
    pub fn degrees_direct(&self) -> Result<Vec<i64>, Error> {
        (0..self.surface.n_rays())
            .map(|i| self.intersect(&self.surface.prime_divisor(i)?))
            .collect()
    }

    /// Adjoint numbers `(D + K)·D_i` by the degree formula
    /// `D·D_i - D_i^2 - 2 = D·D_i + b_i - 2` (wall-relation path).
    pub fn adjoint_numbers(&self) -> Result<AdjointNumbers, Error> {
        let b = self.surface.walls.b();
        let values = (0..self.surface.n_rays())
            .map(|i| {
                let d = self.degree_on_curve(i)? as i128;
                narrow(d + b[i] as i128 - 2, "adjoint number")
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AdjointNumbers { values })
    }

    /// Adjoint numbers by literally pairing `D + K` with each `D_i` over the
    /// table. Must agree with [`TorusDivisor::adjoint_numbers`] on an
    /// uncorrupted surface.
    pub fn adjoint_numbers_direct(&self) -> Result<AdjointNumbers, Error> {
        let adj_coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_sub(1).ok_or(Error::Overflow("adjoint coefficient")))
            .collect::<Result<Vec<_>, _>>()?;
        let adjoint = self.surface.divisor(adj_coeffs)?;
        let values = adjoint.degrees_direct()?;
        Ok(AdjointNumbers { values })
    }

    /// Nef test: nonnegative degree on every invariant curve. On smooth
    /// complete toric surfaces this is also the globally-generated
    /// (basepoint-free) test.
    pub fn is_nef(&self) -> Result<bool, Error> {
        Ok(self.nef_violation()?.is_none())
    }

    /// Ample test: strictly positive degree on every invariant curve. On
    /// smooth complete toric surfaces ample coincides with very ample.
    pub fn is_ample(&self) -> Result<bool, Error> {
        Ok(self.ample_violation()?.is_none())
    }

    /// First ray with negative degree, if any.
    pub fn nef_violation(&self) -> Result<Option<(usize, i64)>, Error> {
        for (ray, d) in self.degrees()?.into_iter().enumerate() {
            if d < 0 {
                return Ok(Some((ray, d)));
            }
        }
        Ok(None)
    }

    /// First ray with non-positive degree, if any.
    pub fn ample_violation(&self) -> Result<Option<(usize, i64)>, Error> {
        for (ray, d) in self.degrees()?.into_iter().enumerate() {
            if d <= 0 {
                return Ok(Some((ray, d)));
            }
        }
        Ok(None)
    }

    /// Errors with [`Error::NotAmple`] (first offending ray) unless ample.
    pub fn require_ample(&self) -> Result<(), Error> {
        match self.ample_violation()? {
            Some((ray, degree)) => Err(Error::NotAmple { ray, degree }),
            None => Ok(()),
        }
    }

    /// The polytope `{ m : ⟨m, u_i⟩ >= -a_i }` of a nef divisor.
    ///
    /// Each maximal cone `(u_j, u_{j+1})` contributes the unique solution of
    /// its two tight facet equations; walking the cones counterclockwise
    /// traverses the polytope boundary, so deduplicating consecutive repeats
    /// yields the vertex cycle. For ample divisors the result is a polygon
    /// whose edge perpendicular to `u_i` has lattice length `D·D_i`; nef
    /// divisors with some zero degrees may degenerate to a segment or point.
    ///
    /// Errors with [`Error::NotNef`] when some degree is negative; vertex
    /// coordinates may exceed the input coordinate bound (they are exact
    /// 64-bit values computed through 128-bit intermediates).
    pub fn polytope_of_divisor(&self) -> Result<DivisorPolytope, Error> {
        if let Some((ray, degree)) = self.nef_violation()? {
            return Err(Error::NotNef { ray, degree });
        }
        let n = self.surface.n_rays();
        let mut corners: Vec<LatticePoint> = Vec::with_capacity(n);
        for j in 0..n {
            let u = self.surface.fan.ray(j);
            let w = self.surface.fan.ray((j + 1) % n);
            let (p, q) = (u.x as i128, u.y as i128);
            let (r, s) = (w.x as i128, w.y as i128);
            debug_assert_eq!(p * s - q * r, 1, "maximal cone is a lattice basis");
            let (aj, ak) = (
                self.coeffs[j] as i128,
                self.coeffs[(j + 1) % n] as i128,
            );
            // Solve ⟨m,u⟩ = -a_j, ⟨m,w⟩ = -a_{j+1}; determinant is 1.
            let mx = narrow(-aj * s + ak * q, "polytope vertex")?;
            let my = narrow(aj * r - ak * p, "polytope vertex")?;
            corners.push(LatticePoint::new(mx, my));
        }
        corners.dedup();
        while corners.len() > 1 && corners.first() == corners.last() {
            corners.pop();
        }
        match corners.len() {
            1 => Ok(DivisorPolytope::Point(corners[0])),
            2 => Ok(DivisorPolytope::Segment([corners[0], corners[1]])),
            _ => Ok(DivisorPolytope::Polygon(LatticePolygon::from_raw(corners)?)),
        }
    }
}

/// Hodge-index inequality `(L·D)^2 >= L^2 · D^2` for `L` ample.
///
/// Errors with [`Error::NotAmple`] when `L` is not ample. A `false` return
/// contradicts the Hodge index theorem on a smooth projective surface, so the
/// verification harness treats it as a fatal arithmetic defect, never as a
/// mathematical discovery.
pub fn hodge_check(l: &TorusDivisor<'_>, d: &TorusDivisor<'_>) -> Result<bool, Error> {
    l.require_ample()?;
    let ld = l.intersect(d)? as i128;
    let l2 = l.self_intersection()? as i128;
    let d2 = d.self_intersection()? as i128;
    Ok(ld * ld >= l2 * d2)
}
