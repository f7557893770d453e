//! Property tests over randomized small inputs: geometric invariants,
//! formula integrality and normalization, cross-kernel agreement, and the
//! parity relation between plain and symmetric counts.

use lozenge_core::counting::{
    count_matchings_dual, count_symmetric_tilings, count_tilings, enumerate_tilings,
};
use lozenge_core::formulas::{ratio_to_count, s_value, theorem1_rhs, theorem2_rhs, ExactRatio};
use lozenge_core::geometry::{reflect_cell, Orient, SymCenter, TriCell};
use lozenge_core::region::{
    build_fern_cored, build_fern_cored_prime, build_hexagon, build_multi_fern, build_semihexagon,
    build_trapezoid, semihexagon_trapezoid_params, FernSpec,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn arb_cell() -> impl Strategy<Value = TriCell> {
    (-12i64..12, -12i64..12, prop::bool::ANY).prop_map(|(p, q, up)| TriCell {
        p,
        q,
        orient: if up { Orient::Up } else { Orient::Down },
    })
}

fn arb_center() -> impl Strategy<Value = SymCenter> {
    (-12i64..12, -12i64..12).prop_map(|(a, b)| SymCenter::new(a, b))
}

proptest! {
    #[test]
    fn reflection_involution_and_flip(t in arb_cell(), c in arb_center()) {
        let r = reflect_cell(t, c);
        prop_assert_eq!(reflect_cell(r, c), t);
        prop_assert_ne!(r.orient, t.orient);
        for n in t.neighbors() {
            prop_assert!(r.is_adjacent(&reflect_cell(n, c)));
        }
    }

    #[test]
    fn hexagon_balance_and_symmetry(x in 0i64..5, y in 0i64..5, z in 0i64..5) {
        let h = build_hexagon(x, y, z).unwrap();
        prop_assert_eq!(h.up_count(), (x * y + y * z + z * x) as usize);
        prop_assert!(h.is_balanced());
        if !h.is_empty() {
            prop_assert!(h.is_centrally_symmetric().unwrap());
        }
    }

    #[test]
    fn symmetric_fern_cored_regions_balance(
        x in 0i64..3, y in 0i64..3, z in 0i64..3,
        a1 in 0i64..3, a2 in 0i64..3,
    ) {
        let region = build_fern_cored(
            2 * x, 2 * y, 2 * z,
            &FernSpec::symmetric_double(&[a1, a2]),
        ).unwrap();
        prop_assert!(region.is_balanced());
        prop_assert!(region.center.is_some());
        prop_assert!(region.is_centrally_symmetric().unwrap());
    }

    #[test]
    fn s_value_is_a_nonnegative_integer(b in prop::collection::vec(0i64..5, 1..6)) {
        let v = s_value(&b).unwrap();
        prop_assert!(ratio_to_count(&v).is_ok(), "s({:?}) = {}", b, v);
    }

    #[test]
    fn s_value_even_length_collapse(b in prop::collection::vec(0i64..5, 2..6)) {
        // the even-length list reduces to the list without its last entry
        let even = &b[..(b.len() / 2) * 2];
        prop_assert_eq!(s_value(even).unwrap(), s_value(&even[..even.len() - 1]).unwrap());
    }

    #[test]
    fn semihexagon_equals_induced_trapezoid(b in prop::collection::vec(0i64..4, 1..5)) {
        let s = build_semihexagon(&b).unwrap();
        let (m, n, pos) = semihexagon_trapezoid_params(&b);
        let t = build_trapezoid(m, n, &pos).unwrap();
        prop_assert_eq!(s.cells, t.cells);
    }

    #[test]
    fn theorem1_rhs_is_one_for_single_lobes(
        x in 0i64..4, y in 0i64..4, z in 0i64..4, a in 0i64..5,
    ) {
        let v = theorem1_rhs(2 * x, 2 * y, 2 * z, &[a]).unwrap();
        prop_assert_eq!(v, ExactRatio::from(BigInt::from(1)));
    }

    #[test]
    fn theorem2_rhs_is_one_for_single_lobes(
        x in -1i64..4, dy in 0i64..3, dz in 0i64..3, a in 0i64..5,
    ) {
        let y = x.rem_euclid(2) + 2 * dy;
        let z = x.rem_euclid(2) + 2 * dz;
        let v = theorem2_rhs(x, y, z, &[a]).unwrap();
        prop_assert_eq!(v, ExactRatio::from(BigInt::from(1)));
    }

    #[test]
    fn kernels_agree(
        x in 0i64..3, y in 0i64..3, z in 0i64..3,
        a1 in 0i64..3, a2 in 0i64..2,
    ) {
        let region = build_fern_cored(x, y, z, &FernSpec::new(vec![a1, a2])).unwrap();
        prop_assert_eq!(
            count_tilings(&region).unwrap(),
            count_matchings_dual(&region).unwrap()
        );
    }

    #[test]
    fn plain_and_symmetric_counts_share_parity(
        x in 0i64..2, y in 0i64..2, z in 0i64..2,
        a1 in 0i64..3, a2 in 0i64..2,
    ) {
        let region = build_fern_cored(
            2 * x, 2 * y, 2 * z,
            &FernSpec::symmetric_double(&[a1, a2]),
        ).unwrap();
        let m = count_tilings(&region).unwrap();
        let ms = count_symmetric_tilings(&region).unwrap();
        prop_assert!(ms <= m);
        prop_assert_eq!((m - ms) % 2u32, BigUint::from(0u32));
    }

    #[test]
    fn primed_region_matches_unit_gap_system(
        x in 0i64..3, d in 0i64..2, a1 in 0i64..3, a2 in 0i64..3,
    ) {
        // FC' and the two-fern system with unit gap have identical cells
        let y = x.rem_euclid(2) + 2 * d;
        let z = y;
        let half = vec![a1, a2];
        let prime = build_fern_cored_prime(x, y, z, &FernSpec::new(half.clone())).unwrap();
        let mirror: Vec<i64> = half.iter().rev().copied().collect();
        let mf = build_multi_fern(
            x, y, z,
            &[1],
            &[FernSpec::new(half), FernSpec::new(mirror)],
        ).unwrap();
        prop_assert_eq!(prime.cells, mf.cells);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_matches_count(
        x in 0i64..3, y in 0i64..3, z in 0i64..2, a in 0i64..3,
    ) {
        let region = build_fern_cored(x, y, z, &FernSpec::new(vec![a])).unwrap();
        let count = count_tilings(&region).unwrap();
        if count <= BigUint::from(2000u32) {
            let all = enumerate_tilings(&region, 2000).unwrap();
            prop_assert_eq!(BigUint::from(all.len()), count);
            // each tiling covers the region exactly
            for t in all.iter().take(5) {
                let mut covered = std::collections::BTreeSet::new();
                for l in &t.lozenges {
                    for c in l.cells() {
                        prop_assert!(covered.insert(c));
                    }
                }
                prop_assert_eq!(covered, region.cells.clone());
            }
        }
    }

    #[test]
    fn symmetric_count_equals_filtered_enumeration(
        x in 0i64..2, y in 0i64..2, z in 0i64..2, a in 0i64..3,
    ) {
        let region = build_fern_cored(
            2 * x, 2 * y, 2 * z,
            &FernSpec::symmetric_double(&[a]),
        ).unwrap();
        let count = count_tilings(&region).unwrap();
        if count <= BigUint::from(3000u32) {
            let c = region.center.unwrap();
            let all = enumerate_tilings(&region, 3000).unwrap();
            let filtered = all.iter().filter(|t| t.is_symmetric(c)).count();
            prop_assert_eq!(
                count_symmetric_tilings(&region).unwrap(),
                BigUint::from(filtered)
            );
        }
    }
}
