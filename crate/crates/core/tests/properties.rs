//! Randomized law checks: lattice identities under random inputs and
//! intersection-form laws on randomly blown-up surfaces.

use proptest::prelude::*;
use toric_core::{
    canonical_form, convex_hull, count_points, normalized_volume, CompleteFan, LatticePoint,
    LatticePolygon, Surface,
};

fn points() -> impl Strategy<Value = Vec<LatticePoint>> {
    prop::collection::vec((-20i64..=20, -20i64..=20).prop_map(|(x, y)| LatticePoint::new(x, y)), 3..24)
}

/// Integer matrices of determinant ±1: a rotation power times two shears,
/// optionally composed with a reflection.
fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    (0usize..4, -4i64..=4, -4i64..=4, any::<bool>()).prop_map(|(rot, p, q, flip)| {
        let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ]
        };
        let mut m = [[1, p], [0, 1]];
        m = mul(m, [[1, 0], [q, 1]]);
        for _ in 0..rot {
            m = mul([[0, -1], [1, 0]], m);
        }
        if flip {
            m = mul([[1, 0], [0, -1]], m);
        }
        m
    })
}

/// Random smooth complete fan: a seed surface followed by a few blow-ups.
fn fans() -> impl Strategy<Value = CompleteFan> {
    (0usize..5, prop::collection::vec(0usize..64, 0..5)).prop_map(|(seed, cuts)| {
        let mut fan = match seed {
            0 => CompleteFan::projective_plane(),
            1 => CompleteFan::p1_cross_p1(),
            k => CompleteFan::hirzebruch(k as i64 - 1).expect("small parameter"),
        };
        for c in cuts {
            fan = fan.blow_up(c % fan.n_rays()).expect("blow-up of a smooth fan");
        }
        fan
    })
}

fn hull_of(pts: &[LatticePoint]) -> Option<LatticePolygon> {
    convex_hull(pts).ok()
}

proptest! {
    /// Area from the shoelace formula matches the lattice-point census:
    /// normalized volume = boundary + 2·interior − 2.
    #[test]
    fn pick_identity_on_random_hulls(pts in points()) {
        if let Some(poly) = hull_of(&pts) {
            let c = count_points(&poly);
            prop_assert_eq!(normalized_volume(&poly), c.boundary + 2 * c.interior - 2);
        }
    }

    /// Volume and point counts are invariant under lattice symmetries.
    #[test]
    fn point_counts_are_unimodular_invariants(
        pts in points(),
        m in unimodular(),
        sx in -50i64..=50,
        sy in -50i64..=50,
    ) {
        if let Some(poly) = hull_of(&pts) {
            let image = poly.unimodular_image(m, LatticePoint::new(sx, sy)).unwrap();
            prop_assert_eq!(normalized_volume(&poly), normalized_volume(&image));
            prop_assert_eq!(count_points(&poly), count_points(&image));
            {
                let mut a = poly.edge_lengths();
                let mut b = image.edge_lengths();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
        }
    }

    /// The canonical form names the orbit: every image canonicalizes to the
    /// same polygon, and canonicalizing twice changes nothing.
    #[test]
    fn canonical_form_names_the_orbit(
        pts in points(),
        m in unimodular(),
        sx in -50i64..=50,
        sy in -50i64..=50,
    ) {
        if let Some(poly) = hull_of(&pts) {
            let image = poly.unimodular_image(m, LatticePoint::new(sx, sy)).unwrap();
            let canon = canonical_form(&poly);
            prop_assert_eq!(&canon, &canonical_form(&image));
            prop_assert_eq!(&canon, &canonical_form(&canon));
        }
    }

    /// Applying a matrix and then its inverse is the identity.
    #[test]
    fn unimodular_maps_invert(
        pts in points(),
        m in unimodular(),
        sx in -50i64..=50,
        sy in -50i64..=50,
    ) {
        if let Some(poly) = hull_of(&pts) {
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            let inv = [
                [det * m[1][1], -det * m[0][1]],
                [-det * m[1][0], det * m[0][0]],
            ];
            let t = LatticePoint::new(sx, sy);
            let back = poly
                .unimodular_image(m, t)
                .unwrap()
                .unimodular_image(
                    inv,
                    LatticePoint::new(
                        -(inv[0][0] * t.x + inv[0][1] * t.y),
                        -(inv[1][0] * t.x + inv[1][1] * t.y),
                    ),
                )
                .unwrap();
            prop_assert_eq!(poly, back);
        }
    }

    /// The intersection pairing is symmetric and additive in each slot, and
    /// principal divisors pair to zero with everything.
    #[test]
    fn pairing_laws_on_random_surfaces(
        fan in fans(),
        raw in prop::collection::vec(-9i64..=9, 3 * 9),
        mx in -5i64..=5,
        my in -5i64..=5,
    ) {
        let surface = Surface::new(fan).unwrap();
        let n = surface.n_rays();
        let d = surface.divisor(raw[..n].to_vec()).unwrap();
        let e = surface.divisor(raw[9..9 + n].to_vec()).unwrap();
        let f = surface.divisor(raw[18..18 + n].to_vec()).unwrap();
        prop_assert_eq!(d.intersect(&e).unwrap(), e.intersect(&d).unwrap());
        let sum: Vec<i64> = (0..n).map(|i| d.coeffs()[i] + e.coeffs()[i]).collect();
        let de = surface.divisor(sum).unwrap();
        prop_assert_eq!(
            de.intersect(&f).unwrap(),
            d.intersect(&f).unwrap() + e.intersect(&f).unwrap()
        );
        let principal = surface.principal_divisor(LatticePoint::new(mx, my)).unwrap();
        prop_assert_eq!(principal.intersect(&d).unwrap(), 0);
        prop_assert_eq!(principal.self_intersection().unwrap(), 0);
    }

    /// The two-parameter nef-cone description printed by the CLI catalog:
    /// on the ruled surface with rays (1,0),(0,1),(-1,r),(0,-1), the divisor
    /// a·D_2 + b·D_3 is nef iff a, b >= 0 and ample iff a, b > 0.
    #[test]
    fn ruled_surface_nef_cone_description(
        r in 1i64..=6,
        a in -5i64..=5,
        b in -5i64..=5,
    ) {
        let surface = Surface::new(CompleteFan::hirzebruch(r).unwrap()).unwrap();
        let d = surface.divisor(vec![0, 0, a, b]).unwrap();
        prop_assert_eq!(d.is_nef().unwrap(), a >= 0 && b >= 0);
        prop_assert_eq!(d.is_ample().unwrap(), a > 0 && b > 0);
    }

    /// The wall-formula degree path and the pairing-table path agree on
    /// arbitrary (not necessarily nef) divisors, and so do the two adjoint
    /// evaluations built on them.
    #[test]
    fn degree_paths_agree_on_random_divisors(
        fan in fans(),
        raw in prop::collection::vec(-9i64..=9, 9),
    ) {
        let surface = Surface::new(fan).unwrap();
        let n = surface.n_rays();
        let d = surface.divisor(raw[..n].to_vec()).unwrap();
        prop_assert_eq!(d.degrees().unwrap(), d.degrees_direct().unwrap());
        let via_walls = d.adjoint_numbers().unwrap();
        let via_table = d.adjoint_numbers_direct().unwrap();
        prop_assert_eq!(via_walls.values(), via_table.values());
    }
}
