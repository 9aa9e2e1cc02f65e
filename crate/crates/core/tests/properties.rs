mod common;

use common::dense_hom_dim;
use ghilb::ggraph::{brute_force_fixed_points, enumerate_fixed_points};
use ghilb::group::age;
use ghilb::homcalc::{expected_hom_matrix, hom_matrix};
use ghilb::koszul::{
    build_rep, cpxnil_homology, is_equivariant, koszul_homology, sample_chart_points, verify_adhm,
    ChartPoint,
};
use ghilb::toric::{chart_cones, check_fan, check_smooth, lattices};
use ghilb::{build_group, AbelianGroup, GroupSpec};
use num::rational::Rational64;
use proptest::prelude::*;

/// `1/r (w1, w2, w3)` with `w1 + w2 + w3 ≡ 0`.
fn cyclic() -> impl Strategy<Value = AbelianGroup> {
    (2u32..=9)
        .prop_flat_map(|r| (Just(r), 1..r, 0..r))
        .prop_map(|(r, w1, w2)| {
            let w3 = (3 * r - w1 - w2) % r;
            build_group(&GroupSpec::cyclic(r, [w1, w2, w3]).unwrap()).unwrap()
        })
}

fn exponent() -> impl Strategy<Value = [i64; 3]> {
    [-6i64..7, -6i64..7, -6i64..7]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn characters_multiply(g in cyclic(), e in exponent(), f in exponent()) {
        let sum = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
        prop_assert_eq!(
            g.char_index(&sum),
            g.char_product(g.char_index(&e), g.char_index(&f))
        );
        prop_assert!(g.is_invariant(&[1, 1, 1]));
    }

    #[test]
    fn ages_pair_up(g in cyclic()) {
        for e in g.elements() {
            let inv = g.negate(e);
            let nonzero = e.0.iter().filter(|&&v| v != 0).count() as i64;
            prop_assert_eq!(age(&g, e) + age(&g, &inv), Rational64::from_integer(nonzero));
        }
    }

    #[test]
    fn fixed_points_are_regular(g in cyclic()) {
        let fp = enumerate_fixed_points(&g).unwrap();
        prop_assert_eq!(fp.len(), g.order());
        prop_assert_eq!(&fp, &brute_force_fixed_points(&g, 16).unwrap());
        let pair = lattices(&g).unwrap();
        let cones = chart_cones(&g, &fp).unwrap();
        prop_assert!(cones.iter().all(|c| check_smooth(&pair, c)));
        prop_assert!(check_fan(&g, &cones).passed());
    }

    #[test]
    fn hom_matches_dense_oracle(g in cyclic()) {
        let fp = enumerate_fixed_points(&g).unwrap();
        let hom = hom_matrix(&g, &fp).unwrap();
        prop_assert_eq!(&hom, &expected_hom_matrix(fp.len()));
        let n = fp.len();
        for (i, j) in [(0, 0), (0, n - 1), (n - 1, 0), (n / 2, n / 3)] {
            prop_assert_eq!(dense_hom_dim(&g, &fp[i], &fp[j]), hom[i][j]);
        }
    }

    #[test]
    fn chart_points_are_modules(g in cyclic(), seed in any::<u64>()) {
        let fp = enumerate_fixed_points(&g).unwrap();
        for (k, gg) in fp.iter().enumerate() {
            let pts = sample_chart_points(gg, 2, seed, k as u64);
            let r0 = build_rep(&g, &pts[0]).unwrap();
            let r1 = build_rep(&g, &pts[1]).unwrap();
            prop_assert!(verify_adhm(&r0) && is_equivariant(&g, &r0));
            prop_assert_eq!(cpxnil_homology(&r0), [0, 0, 0, 0]);
            prop_assert_eq!(koszul_homology(&g, &r0, &r0).unwrap(), [1, 3, 3, 1]);
            if pts[0].coords != pts[1].coords {
                prop_assert_eq!(koszul_homology(&g, &r0, &r1).unwrap(), [0, 0, 0, 0]);
            }
            let fixed = build_rep(&g, &ChartPoint::fixed(gg)).unwrap();
            let h = cpxnil_homology(&fixed);
            prop_assert_eq!(h[0] + h[2], h[1] + h[3]);
        }
    }
}
