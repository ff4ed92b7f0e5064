//! The reduction catalogue.
//!
//! Leaf rules name vertices by their walk index `u_i` (see
//! [`LeafWalk`](crate::dual::LeafWalk)); subtree rules name them relative to
//! the matched node: the two ends of its parent diagonal and its apex.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    /// The walk ends at a branch node `t_k`.
    BranchAt(usize),
    /// `t_1 .. t_{k-1}` all have degree at most 2 apart from the leaf.
    AtLeast(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct LeafRule {
    pub length: Length,
    /// Required faces `(i, F_i)` as sorted walk indices.
    pub faces: &'static [(usize, [usize; 3])],
    pub delete: &'static [usize],
    pub contract: Option<(usize, usize)>,
    pub merged: &'static [usize],
    pub other: &'static [usize],
    /// Sets tried on the whole graph when the reduced graph is too small.
    pub direct: &'static [&'static [usize]],
}

/// Named vertices of a matched subtree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Apex,
    /// Smaller-labelled end of the parent diagonal.
    End1,
    End2,
}

#[derive(Debug, Clone, Copy)]
pub struct SymOption {
    pub drop: &'static [Sym],
    pub add: &'static [Sym],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Catalogued pattern, 1-based.
    Pattern(usize),
    /// Leaf child plus 2-path child.
    TPrime,
    /// Two 2-path children.
    TDouble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Any,
    /// The 2-path's inner diagonal meets the apex.
    TowardApex,
    /// Both 2-paths have their inner diagonal at the apex.
    BothTowardApex,
    /// Exactly one does.
    OneTowardApex,
    /// The parent triangle has no outer edge.
    ParentInternal,
    /// The parent triangle has an outer edge and a parent of its own.
    ParentOuter,
    /// The whole graph has at most this many vertices.
    SmallOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildShape {
    TPrime,
    StemTPrime,
    Path5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    AllInterior,
    InteriorExceptApex,
    /// Keep the apex and the apex of the child with this shape.
    KeepApexAnd(ChildShape),
    /// Only the interior of the child with this shape.
    ChildInterior(ChildShape),
    /// All interior vertices plus the parent-diagonal end on the parent's outer edge.
    InteriorAndOuterEnd,
    /// Nothing is removed; the rule resolves the graph directly.
    Nothing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contract {
    No,
    ParentDiagonal,
    /// The surviving parent-diagonal end with the parent's apex.
    EndToParentApex,
}

#[derive(Debug, Clone, Copy)]
pub struct SubtreeRule {
    pub shape: Shape,
    pub geometry: Geometry,
    pub removal: Removal,
    pub contract: Contract,
    pub merged: &'static [SymOption],
    pub other: &'static [SymOption],
}

#[derive(Debug, Clone, Copy)]
pub enum RuleKind {
    Leaf(LeafRule),
    Subtree(SubtreeRule),
}

#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub budget: usize,
    /// Claimed decrease of `n` and worst-case decrease of `k`.
    pub n_drop: usize,
    pub k_drop: usize,
    pub kind: RuleKind,
}

const fn leaf(id: &'static str, budget: usize, n_drop: usize, k_drop: usize, rule: LeafRule) -> Rule {
    Rule { id, budget, n_drop, k_drop, kind: RuleKind::Leaf(rule) }
}

const fn sub(id: &'static str, budget: usize, n_drop: usize, k_drop: usize, rule: SubtreeRule) -> Rule {
    Rule { id, budget, n_drop, k_drop, kind: RuleKind::Subtree(rule) }
}

const fn plain(shape: Shape, geometry: Geometry, removal: Removal, contract: Contract) -> SubtreeRule {
    SubtreeRule { shape, geometry, removal, contract, merged: &[], other: &[] }
}

const F4_UP: (usize, [usize; 3]) = (4, [4, 5, 6]);
const F4_BACK: (usize, [usize; 3]) = (4, [2, 5, 6]);

const fn seven(
    f8: [usize; 3],
    a: usize,
    delete: &'static [usize],
    merged: &'static [usize],
    other: &'static [usize],
    direct: &'static [&'static [usize]],
) -> LeafRule {
    LeafRule {
        length: Length::BranchAt(8),
        faces: match f8[0] {
            5 => &[F4_UP, (8, [5, 9, 10])],
            8 => &[F4_UP, (8, [8, 9, 10])],
            7 => &[F4_UP, (8, [7, 9, 10])],
            _ => &[F4_UP, (8, [4, 9, 10])],
        },
        delete,
        contract: Some((a, 9)),
        merged,
        other,
        direct,
    }
}

const fn case(b: usize, delete: &'static [usize], merged: &'static [usize], other: &'static [usize]) -> LeafRule {
    LeafRule {
        length: Length::AtLeast(9),
        faces: match b {
            5 => &[F4_UP, (9, [5, 10, 11])],
            9 => &[F4_UP, (9, [9, 10, 11])],
            8 => &[F4_UP, (9, [8, 10, 11])],
            7 => &[F4_UP, (9, [7, 10, 11])],
            _ => &[F4_UP, (9, [4, 10, 11])],
        },
        delete,
        contract: Some((b, 10)),
        merged,
        other,
        direct: &[],
    }
}

use Contract as C;
use Geometry as G;
use Removal as R;
use Shape::{Pattern as P, TDouble, TPrime};
use Sym::{Apex, End1, End2};

const APEX: &[SymOption] = &[SymOption { drop: &[], add: &[Apex] }];

pub static CATALOGUE: &[Rule] = &[
    leaf(
        "LEM1-3DIST-A",
        1,
        4,
        1,
        LeafRule {
            length: Length::BranchAt(4),
            faces: &[F4_BACK],
            delete: &[1, 3, 4],
            contract: Some((2, 5)),
            merged: &[2, 5],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-3DIST-B",
        1,
        4,
        1,
        LeafRule {
            length: Length::BranchAt(4),
            faces: &[F4_UP],
            delete: &[1, 2, 3],
            contract: Some((4, 5)),
            merged: &[4, 5],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-NOTF4-A",
        1,
        5,
        0,
        LeafRule {
            length: Length::AtLeast(5),
            faces: &[F4_BACK, (5, [2, 6, 7])],
            delete: &[1, 3, 4, 5],
            contract: Some((2, 6)),
            merged: &[2, 6],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-NOTF4-B",
        1,
        5,
        0,
        LeafRule {
            length: Length::AtLeast(5),
            faces: &[F4_BACK, (5, [5, 6, 7])],
            delete: &[1, 2, 3, 4],
            contract: Some((5, 6)),
            merged: &[5, 6],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-4DIST-A",
        1,
        4,
        1,
        LeafRule {
            length: Length::BranchAt(5),
            faces: &[F4_UP, (5, [4, 6, 7])],
            delete: &[1, 2, 3, 5],
            contract: None,
            merged: &[],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-4DIST-B",
        1,
        4,
        1,
        LeafRule {
            length: Length::BranchAt(5),
            faces: &[F4_UP, (5, [5, 6, 7])],
            delete: &[1, 2, 3, 4],
            contract: None,
            merged: &[],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-5DIST",
        1,
        5,
        0,
        LeafRule {
            length: Length::AtLeast(6),
            faces: &[F4_UP, (6, [6, 7, 8])],
            delete: &[1, 2, 3, 4, 5],
            contract: None,
            merged: &[],
            other: &[2],
            direct: &[],
        },
    ),
    leaf(
        "LEM1-7DIST-A",
        2,
        8,
        1,
        seven([5, 9, 10], 5, &[1, 2, 3, 4, 6, 7, 8], &[2, 5, 9], &[2, 5], &[&[2, 5, 10], &[2, 9, 10]]),
    ),
    leaf(
        "LEM1-7DIST-B",
        2,
        8,
        1,
        seven([8, 9, 10], 8, &[1, 2, 3, 4, 5, 6, 7], &[2, 8, 9], &[2, 8], &[&[2, 8, 10], &[2, 9, 10]]),
    ),
    leaf(
        "LEM1-7DIST-C",
        2,
        8,
        1,
        seven([7, 9, 10], 7, &[1, 2, 3, 4, 5, 6, 8], &[2, 7, 9], &[2, 7], &[&[2, 7, 10], &[2, 9, 10]]),
    ),
    leaf(
        "LEM1-7DIST-D",
        2,
        8,
        1,
        seven([4, 9, 10], 4, &[1, 2, 3, 5, 6, 7, 8], &[2, 4, 9], &[2, 4], &[&[2, 4, 10], &[2, 9, 10]]),
    ),
    leaf("LEM1-CASE1", 2, 9, 0, case(5, &[1, 2, 3, 4, 6, 7, 8, 9], &[2, 5, 10], &[2, 5])),
    leaf("LEM1-CASE2", 2, 9, 0, case(9, &[1, 2, 3, 4, 5, 6, 7, 8], &[2, 9, 10], &[2, 9])),
    leaf("LEM1-CASE3", 2, 9, 0, case(8, &[1, 2, 3, 4, 5, 6, 7, 9], &[2, 8, 10], &[2, 8])),
    leaf("LEM1-CASE4", 2, 9, 0, case(7, &[1, 2, 3, 4, 5, 6, 8, 9], &[2, 7, 10], &[2, 7])),
    leaf("LEM1-CASE5", 2, 9, 0, case(4, &[1, 2, 3, 5, 6, 7, 8, 9], &[2, 4, 10], &[2, 4])),
    sub("CL3TO10-H9", 1, 4, 1, SubtreeRule { other: APEX, ..plain(TPrime, G::TowardApex, R::AllInterior, C::No) }),
    sub(
        "CL10TO21-H11",
        1,
        4,
        1,
        SubtreeRule { other: APEX, ..plain(TDouble, G::BothTowardApex, R::InteriorExceptApex, C::No) },
    ),
    sub(
        "CL10TO21-H12",
        1,
        4,
        1,
        SubtreeRule {
            other: &[
                SymOption { drop: &[Apex], add: &[End1, End2] },
                SymOption { drop: &[], add: &[Apex] },
                SymOption { drop: &[], add: &[End2] },
                SymOption { drop: &[], add: &[End1] },
            ],
            ..plain(TDouble, G::OneTowardApex, R::InteriorExceptApex, C::No)
        },
    ),
    sub(
        "TREE1",
        1,
        4,
        1,
        SubtreeRule {
            merged: &[SymOption { drop: &[], add: &[End1, End2] }],
            other: APEX,
            ..plain(P(1), G::Any, R::AllInterior, C::ParentDiagonal)
        },
    ),
    sub("TREE2", 1, 4, 1, plain(P(2), G::Any, R::KeepApexAnd(ChildShape::TPrime), C::No)),
    sub("TREE3", 2, 7, 2, plain(P(3), G::Any, R::AllInterior, C::No)),
    sub("TREE4", 2, 8, 3, plain(P(4), G::Any, R::InteriorExceptApex, C::No)),
    sub("TREE5", 2, 7, 2, plain(P(5), G::Any, R::AllInterior, C::No)),
    sub("TREE6", 2, 8, 2, plain(P(6), G::Any, R::AllInterior, C::No)),
    sub("TREE7", 2, 8, 3, plain(P(7), G::Any, R::KeepApexAnd(ChildShape::StemTPrime), C::No)),
    sub("TREE8", 3, 11, 3, plain(P(8), G::Any, R::AllInterior, C::No)),
    sub("TREE9-INTERNAL", 2, 7, 2, plain(P(9), G::ParentInternal, R::AllInterior, C::ParentDiagonal)),
    sub("TREE9-OUTER", 2, 8, 1, plain(P(9), G::ParentOuter, R::InteriorAndOuterEnd, C::EndToParentApex)),
    sub("TREE10", 2, 7, 2, plain(P(10), G::Any, R::AllInterior, C::No)),
    sub("TREE11", 2, 7, 2, plain(P(11), G::Any, R::InteriorExceptApex, C::No)),
    sub("TREE12", 2, 9, 3, plain(P(12), G::Any, R::InteriorExceptApex, C::No)),
    sub("TREE13", 3, 11, 3, plain(P(13), G::Any, R::AllInterior, C::No)),
    sub("TREE14", 3, 11, 3, plain(P(14), G::Any, R::AllInterior, C::No)),
    sub("TREE15-INTERNAL", 2, 7, 2, plain(P(15), G::ParentInternal, R::AllInterior, C::ParentDiagonal)),
    sub("TREE15-OUTER", 2, 8, 1, plain(P(15), G::ParentOuter, R::InteriorAndOuterEnd, C::EndToParentApex)),
    sub("TREE16", 2, 8, 1, plain(P(16), G::Any, R::AllInterior, C::ParentDiagonal)),
    sub("TREE17", 2, 8, 1, plain(P(17), G::Any, R::AllInterior, C::No)),
    sub("TREE18", 1, 5, 1, plain(P(18), G::Any, R::ChildInterior(ChildShape::Path5), C::No)),
    sub("TREE19", 3, 12, 2, plain(P(19), G::Any, R::AllInterior, C::ParentDiagonal)),
    sub("TREE20", 3, 12, 2, plain(P(20), G::Any, R::AllInterior, C::ParentDiagonal)),
    sub("TREE21-SMALL", 3, 0, 0, plain(P(21), G::SmallOrder(14), R::Nothing, C::No)),
    sub("TREE21-INTERNAL", 3, 12, 2, plain(P(21), G::ParentInternal, R::AllInterior, C::ParentDiagonal)),
    sub("TREE21-OUTER", 3, 13, 1, plain(P(21), G::ParentOuter, R::InteriorAndOuterEnd, C::EndToParentApex)),
    sub("TREE22", 2, 8, 1, plain(P(22), G::Any, R::AllInterior, C::No)),
    sub("TREE23", 2, 8, 1, plain(P(23), G::Any, R::InteriorExceptApex, C::No)),
    sub("TREE24", 3, 12, 2, plain(P(24), G::Any, R::AllInterior, C::ParentDiagonal)),
    sub("TREE25", 3, 12, 2, plain(P(25), G::Any, R::AllInterior, C::No)),
    sub("TREE26", 3, 12, 2, plain(P(26), G::Any, R::AllInterior, C::No)),
    sub("TREE27", 3, 13, 1, plain(P(27), G::Any, R::AllInterior, C::ParentDiagonal)),
    sub("TREE28", 3, 13, 1, plain(P(28), G::Any, R::AllInterior, C::No)),
];

/// Number of triangles in each catalogued pattern, 1-based index.
pub fn pattern_size(p: usize) -> usize {
    const SIZES: [usize; 28] =
        [3, 6, 7, 9, 7, 8, 10, 11, 6, 7, 8, 10, 11, 11, 6, 7, 8, 10, 11, 11, 11, 8, 9, 11, 12, 12, 12, 13];
    SIZES[p - 1]
}

/// Vertex decrease implied by a subtree rule's removal and contraction.
pub fn structural_n_drop(rule: &SubtreeRule) -> usize {
    let size = match rule.shape {
        Shape::Pattern(p) => pattern_size(p),
        Shape::TPrime => 4,
        Shape::TDouble => 5,
    };
    let removed = match rule.removal {
        Removal::AllInterior => size,
        Removal::InteriorExceptApex => size - 1,
        Removal::KeepApexAnd(_) => size - 2,
        Removal::ChildInterior(ChildShape::Path5) => 5,
        Removal::ChildInterior(ChildShape::TPrime) => 4,
        Removal::ChildInterior(ChildShape::StemTPrime) => 5,
        Removal::InteriorAndOuterEnd => size + 1,
        Removal::Nothing => 0,
    };
    removed + usize::from(rule.contract != Contract::No)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::subtree_patterns;

    #[test]
    fn catalogue_is_large_and_ids_unique() {
        assert!(CATALOGUE.len() >= 40);
        let ids: std::collections::HashSet<_> = CATALOGUE.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), CATALOGUE.len());
    }

    #[test]
    fn budgets_are_paid_for() {
        for r in CATALOGUE {
            if r.n_drop == 0 {
                continue;
            }
            assert!(2 * (r.n_drop + r.k_drop) >= 9 * r.budget, "{}", r.id);
        }
    }

    #[test]
    fn claimed_drops_match_structure() {
        for r in CATALOGUE {
            match &r.kind {
                RuleKind::Subtree(s) if s.removal != Removal::Nothing => {
                    assert_eq!(structural_n_drop(s), r.n_drop, "{}", r.id);
                }
                RuleKind::Leaf(l) => {
                    let c = usize::from(l.contract.is_some());
                    assert_eq!(l.delete.len() + c, r.n_drop, "{}", r.id);
                }
                _ => {}
            }
        }
    }

    #[test]
    fn pattern_sizes_match_encodings() {
        for (i, enc) in subtree_patterns().iter().enumerate() {
            assert_eq!(enc.len() / 2, pattern_size(i + 1), "pattern {}", i + 1);
        }
    }
}
