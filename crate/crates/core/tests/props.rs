//! Property tests over random exact-rational inputs.

use merminpoly::linalg::Mat;
use merminpoly::mermin::{dist_from_expectations, expectations_from_dist, ExpectationPoint};
use merminpoly::scenario::BetaAssignment;
use merminpoly::Rat;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn unit_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 6i64..=9).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(
        rows in prop::collection::vec(prop::collection::vec(small_rat(), 4), 1..6)
    ) {
        let m = Mat::from_rows(rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_bounded_by_dimensions(
        rows in prop::collection::vec(prop::collection::vec(small_rat(), 3), 1..7)
    ) {
        let m = Mat::from_rows(rows);
        prop_assert!(m.rank() <= m.nrows().min(m.ncols()));
    }

    #[test]
    fn distribution_expectation_roundtrip(coords in prop::collection::vec(unit_rat(), 9)) {
        let e = ExpectationPoint::from_vec(&coords).unwrap();
        for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
            let d = dist_from_expectations(&e, &beta);
            prop_assert_eq!(expectations_from_dist(&d).unwrap(), e.clone());
        }
    }

    #[test]
    fn third_marginal_follows_the_parity_rule(coords in prop::collection::vec(unit_rat(), 9)) {
        // p_z^0 collects the even pair outcomes when the context parity is
        // zero and the odd ones when it is one
        let e = ExpectationPoint::from_vec(&coords).unwrap();
        for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
            let d = dist_from_expectations(&e, &beta);
            for c in merminpoly::scenario::all_ctx() {
                let t = d.table(c);
                let [_, _, z] = merminpoly::scenario::ctx_members(c);
                let want = if beta.get(c) == 0 {
                    t[0].clone() + t[3].clone()
                } else {
                    t[1].clone() + t[2].clone()
                };
                prop_assert_eq!(d.marginal_in_ctx(c, z), want);
            }
        }
    }
}
