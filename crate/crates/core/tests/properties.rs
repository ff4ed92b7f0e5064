mod common;

use mopdom_core::constructor::construct_bounded_2dd;
use mopdom_core::format::{parse_records, write_records};
use mopdom_core::generators::{canonical_form, random_mop};
use mopdom_core::solvers::{exact_2dd, exact_gamma, greedy_2dd, is_2dd_set, is_dominating_set};
use mopdom_core::{bound, Mop};
use proptest::prelude::*;

fn mop(lo: usize, hi: usize) -> impl Strategy<Value = Mop> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| random_mop(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_valid(m in mop(3, 60)) {
        prop_assert!(m.validate().is_valid());
        prop_assert_eq!(m.diagonals().len(), m.n() - 3);
    }

    #[test]
    fn degree_two_count_tracks_internal_triangles(m in mop(4, 40)) {
        prop_assert_eq!(m.degree_two_count(), m.internal_triangle_count() + 2);
    }

    #[test]
    fn internal_triangles_match_brute_force(m in mop(4, 14)) {
        prop_assert_eq!(m.internal_triangle_count(), common::brute_internal_triangles(&m));
    }

    #[test]
    fn contraction_of_any_outer_edge_is_a_mop(m in mop(4, 30), i in any::<usize>()) {
        let n = m.n();
        let a = i % n;
        let c = m.contract_outer_edge((a, (a + 1) % n)).unwrap();
        prop_assert_eq!(c.mop.n(), n - 1);
        prop_assert!(c.mop.validate().is_valid());
    }

    #[test]
    fn distances_agree_with_floyd_warshall(m in mop(3, 25)) {
        let d = common::distances(&m);
        for (u, row) in d.iter().enumerate() {
            prop_assert_eq!(&m.bfs(u), row);
        }
    }

    #[test]
    fn exact_values_match_brute_force(m in mop(3, 13)) {
        let s = exact_2dd(&m).unwrap();
        prop_assert_eq!(s.size, common::brute_2dd(&m));
        prop_assert!(common::covers_2dd(&common::distances(&m), &s.witness));
        let g = exact_gamma(&m).unwrap();
        prop_assert_eq!(g.size, common::brute_gamma(&m));
    }

    #[test]
    fn solver_ordering(m in mop(5, 18)) {
        let d2 = exact_2dd(&m).unwrap();
        let g = exact_gamma(&m).unwrap();
        let gr = greedy_2dd(&m);
        prop_assert!(is_2dd_set(&m, &gr));
        prop_assert!(is_dominating_set(&m, &g.witness));
        prop_assert!(d2.size <= gr.len());
        prop_assert!(d2.size <= g.size);
    }

    #[test]
    fn format_round_trips(ms in prop::collection::vec(mop(3, 20), 1..5)) {
        let text = write_records(&ms);
        let back: Vec<Mop> = parse_records(&text).unwrap().into_iter().map(|r| r.mop).collect();
        prop_assert_eq!(back, ms);
    }

    #[test]
    fn canonical_form_is_dihedral_invariant(m in mop(3, 25), r in any::<usize>(), flip in any::<bool>()) {
        let n = m.n();
        let r = r % n;
        let perm: Vec<usize> = (0..n).map(|v| if flip { (r + n - v) % n } else { (v + r) % n }).collect();
        let image = m.relabel(&perm);
        prop_assert!(image.validate().is_valid());
        prop_assert_eq!(canonical_form(&image), canonical_form(&m));
    }

    #[test]
    fn constructor_output_verifies(m in mop(7, 70)) {
        let t = construct_bounded_2dd(&m).unwrap();
        prop_assert!(is_2dd_set(&m, &t.final_set));
        prop_assert!(common::covers_2dd(&common::distances(&m), &t.final_set));
        prop_assert_eq!(t.bound, bound(m.n(), m.degree_two_count()));
        prop_assert_eq!(t.replay(), t.final_set.clone());
        for a in &t.steps {
            let s = &a.step;
            prop_assert!(s.reduced.validate().is_valid());
            prop_assert_eq!(s.reduced.n(), s.n_after);
            prop_assert_eq!(s.reduced.degree_two_count(), s.k_after);
        }
    }

    #[test]
    fn constructor_meets_bound_for_small_orders(m in mop(7, 20)) {
        let t = construct_bounded_2dd(&m).unwrap();
        prop_assert!(t.within_bound());
    }
}
