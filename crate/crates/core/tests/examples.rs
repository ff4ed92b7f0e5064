mod common;

use std::collections::VecDeque;

use mopdom_core::constructor::{construct_bounded_2dd, construct_small, find_applicable_reduction};
use mopdom_core::dual::{build_dual, match_maximal_subtree, root_at_diametrical_leaf, DualTree};
use mopdom_core::generators::{enumerate_canonical, enumerate_triangulations, family, random_mop, Family};
use mopdom_core::solvers::{exact_2dd, exact_gamma, greedy_2dd, is_2dd_set, is_dominating_set};
use mopdom_core::{bound, Mop};

fn fan(n: usize) -> Mop {
    family(Family::Fan, n)
}

#[test]
fn snowflake_has_three_degree_two_vertices() {
    let m = Mop::new(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
    let d = common::distances(&m);
    let by_degree = (0..6).filter(|&v| d[v].iter().filter(|&&x| x == 1).count() == 2).count();
    assert_eq!(m.degree_two_count(), by_degree);
    assert_eq!(by_degree, 3);
    assert_eq!(m.internal_triangle_count(), 1);
}

#[test]
fn fan_distance_through_hub() {
    let m = fan(7);
    assert_eq!(m.distance(1, 6).unwrap(), 2);
    assert_eq!(common::distances(&m)[1][6], 2);
}

#[test]
fn contracting_fan_five() {
    let c = fan(5).contract_outer_edge((1, 2)).unwrap();
    assert_eq!(c.mop.n(), 4);
    assert_eq!(c.mop.diagonals(), &[(0, 2)]);
    assert!(c.mop.validate().is_valid());
}

#[test]
fn deleting_an_ear_of_the_six_serpentine() {
    let m = Mop::new(6, [(0, 2), (2, 5), (2, 4)]).unwrap();
    let d = m.delete_vertices(&[1]).unwrap();
    assert_eq!(d.mop.n(), 5);
    assert!(d.mop.validate().is_valid());
}

#[test]
fn fan_partition_diagonals() {
    for n in [6, 7] {
        let p = fan(n).find_partition_diagonal().unwrap();
        assert_eq!(p.diagonal, (0, 4));
        assert_eq!(p.side_outer_edges, 4);
    }
}

#[test]
fn fan_seven_values() {
    let m = fan(7);
    assert_eq!(exact_2dd(&m).unwrap().size, common::brute_2dd(&m));
    assert_eq!(exact_2dd(&m).unwrap().size, 1);
    assert_eq!(greedy_2dd(&m), vec![0]);
    let t = construct_bounded_2dd(&m).unwrap();
    assert_eq!(t.bound, 2);
    assert!(t.final_set.len() <= 2);
}

#[test]
fn every_heptagon_construction_is_at_most_two() {
    for m in enumerate_triangulations(7) {
        let s = construct_small(&m).unwrap();
        assert!(s.len() <= 2);
        assert!(common::covers_2dd(&common::distances(&m), &s));
        assert!(s.len() >= common::brute_2dd(&m));
    }
}

#[test]
fn spaced_triples_cover_every_twelve_vertex_mop() {
    for m in enumerate_triangulations(12) {
        assert!(is_2dd_set(&m, &[0, 4, 8]));
    }
}

#[test]
fn spaced_pairs_on_eight_vertices() {
    for m in enumerate_triangulations(8) {
        assert!((0..8).any(|i| is_2dd_set(&m, &[i, (i + 4) % 8])));
        assert!(2 <= bound(8, m.degree_two_count()));
    }
}

#[test]
fn dominating_sets_are_disjunctive() {
    for seed in 0..50 {
        let m = random_mop(14, seed);
        let g = exact_gamma(&m).unwrap();
        assert!(is_dominating_set(&m, &g.witness));
        assert!(is_2dd_set(&m, &g.witness));
        assert_eq!(g.size, common::brute_gamma(&m));
    }
}

#[test]
fn dual_branch_nodes_are_internal_triangles() {
    for seed in 0..50 {
        let m = random_mop(30, seed);
        let t = build_dual(&m);
        assert_eq!(t.len(), m.n() - 2);
        assert_eq!(t.edges.len(), m.n() - 3);
        let branch = (0..t.len()).filter(|&v| t.degree(v) == 3).count();
        assert_eq!(branch, m.internal_triangle_count());
    }
}

#[test]
fn snowflake_cherry_is_the_first_pattern() {
    let m = Mop::new(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
    let rooted = root_at_diametrical_leaf(build_dual(&m));
    assert_eq!(match_maximal_subtree(&rooted).unwrap(), (1, 1));
}

#[test]
fn serpentine_eight_dual_is_a_path() {
    let t = build_dual(&family(Family::Serpentine, 8));
    assert_eq!(t.len(), 6);
    assert_eq!(t.leaves().len(), 2);
    assert!((0..t.len()).all(|v| t.degree(v) <= 2));
}

/// Distance in the dual from each leaf to its nearest branch node.
fn leaf_branch_distances(t: &DualTree) -> Vec<usize> {
    t.leaves()
        .into_iter()
        .map(|l| {
            let mut dist = vec![usize::MAX; t.len()];
            let mut queue = VecDeque::from([l]);
            dist[l] = 0;
            while let Some(x) = queue.pop_front() {
                if t.degree(x) == 3 {
                    return dist[x];
                }
                for &y in &t.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            usize::MAX
        })
        .collect()
}

// Once no leaf rule applies, every leaf sits 1, 2, 5 or 6 steps from a
// branch node, and then some catalogued subtree must occur.
#[test]
fn reduced_duals_contain_a_pattern() {
    let mut checked = 0;
    for n in 13..=15 {
        for m in enumerate_canonical(n) {
            let t = build_dual(&m);
            if m.internal_triangle_count() == 0 || !leaf_branch_distances(&t).iter().all(|d| [1, 2, 5, 6].contains(d)) {
                continue;
            }
            checked += 1;
            let rooted = root_at_diametrical_leaf(t);
            assert!(match_maximal_subtree(&rooted).is_ok(), "n = {n}: {:?}", m.diagonals());
        }
    }
    assert!(checked > 0);
}

#[test]
fn fan_thirteen_has_a_reduction() {
    let step = find_applicable_reduction(&fan(13)).unwrap();
    assert!(step.reduced.validate().is_valid());
    assert_eq!(step.reduced.n(), step.n_after);
}

#[test]
fn canonical_class_counts() {
    let expected = [(6, 3), (7, 4), (8, 12), (9, 27), (10, 82), (11, 228), (12, 733), (13, 2282)];
    for (n, count) in expected {
        assert_eq!(enumerate_canonical(n).len(), count, "n = {n}");
    }
}

#[test]
fn tree1_lifts_follow_the_cherry_rule() {
    let mut seen = 0;
    for seed in 0..300 {
        let m = random_mop(40, seed);
        let t = construct_bounded_2dd(&m).unwrap();
        for a in t.steps.iter().filter(|a| a.step.rule_id == "TREE1") {
            let s = &a.step;
            assert_eq!(s.deleted.len(), 3);
            assert!(s.contracted.is_some());
            let lift = a.lift.as_ref().unwrap();
            assert!(is_2dd_set(&s.graph, &lift.set));
            let adds = if lift.merged_in { &s.merged_options } else { &s.other_options };
            if lift.repair.is_none() {
                assert_eq!(adds[lift.option].add.len(), if lift.merged_in { 2 } else { 1 });
            }
            seen += 1;
        }
    }
    assert!(seen > 0);
}
