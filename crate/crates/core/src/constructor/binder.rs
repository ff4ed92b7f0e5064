//! Finding catalogue matches and turning them into concrete reduction steps.

use std::collections::BTreeSet;

use crate::bound;
use crate::dual::{build_dual, root_at_diametrical_leaf, shape, subtree_patterns, LeafWalk, RootedDual};
use crate::mop::Mop;
use crate::solvers::DistanceProfile;

use super::catalogue::{
    ChildShape, Contract, Geometry, Length, Removal, Rule, RuleKind, Shape, SubtreeRule, Sym, SymOption, CATALOGUE,
};
use super::{LiftOption, ReductionStep};

/// Below this order a reduced graph is finished off directly.
pub const SMALL_REDUCED: usize = 7;
/// Cap on searched lift options per case.
const MAX_OPTIONS: usize = 40;

pub(crate) struct Context {
    pub rooted: RootedDual,
    enc: Vec<Option<String>>,
    walks: Vec<LeafWalk>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate {
    pub rule: usize,
    /// Leaf node for leaf rules, matched node for subtree rules.
    pub anchor: usize,
}

/// Why a matched rule could not be turned into a step.
#[derive(Debug, Clone)]
pub(crate) enum Skip {
    Structure(String),
    Arithmetic { reduced: usize, budget: usize, limit: usize },
    SmallCase,
}

impl std::fmt::Display for Skip {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Skip::Structure(why) => write!(f, "structure: {why}"),
            Skip::Arithmetic { reduced, budget, limit } => {
                write!(f, "bound check failed: {reduced} + {budget} > {limit}")
            }
            Skip::SmallCase => write!(f, "no small-order set verified"),
        }
    }
}

impl Context {
    pub fn new(m: &Mop) -> Context {
        let rooted = root_at_diametrical_leaf(build_dual(m));
        let enc = rooted.encodings();
        let walks = rooted.tree.leaves().into_iter().map(|l| LeafWalk::new(&rooted.tree, l, 9)).collect();
        Context { rooted, enc, walks }
    }
}

fn shape_encoding(s: Shape) -> String {
    match s {
        Shape::Pattern(p) => subtree_patterns()[p - 1].clone(),
        Shape::TPrime => shape::t1(),
        Shape::TDouble => shape::t2(),
    }
}

fn child_encoding(c: ChildShape) -> String {
    match c {
        ChildShape::TPrime => shape::t1(),
        ChildShape::StemTPrime => shape::stem(&shape::t1()),
        ChildShape::Path5 => shape::path(5),
    }
}

fn leaf_matches(rule: &super::catalogue::LeafRule, walk: &LeafWalk, ctx: &Context) -> bool {
    let t = &ctx.rooted.tree;
    let len = walk.path.len();
    let ok_len = match rule.length {
        Length::BranchAt(k) => len == k && t.degree(walk.path[k - 1]) == 3,
        Length::AtLeast(k) => len >= k,
    };
    ok_len && rule.faces.iter().all(|&(i, f)| walk.face(i) == Some(f))
}

/// Whether the 2-path child `c` of `w` has its inner diagonal at `apex`.
fn toward_apex(ctx: &Context, c: usize, apex: usize) -> bool {
    let leaf = ctx.rooted.children[c][0];
    LeafWalk::new(&ctx.rooted.tree, leaf, 3).vertex(2) == apex
}

fn apex(ctx: &Context, w: usize) -> usize {
    ctx.rooted.apex_from(w, ctx.rooted.parent[w].unwrap())
}

fn geometry_holds(m: &Mop, ctx: &Context, rule: &SubtreeRule, w: usize) -> bool {
    let r = &ctx.rooted;
    let Some(v) = r.parent[w] else { return false };
    let a = apex(ctx, w);
    let two_paths: Vec<usize> = r.children[w].iter().copied().filter(|&c| r.size[c] == 2).collect();
    match rule.geometry {
        Geometry::Any => true,
        Geometry::TowardApex => two_paths.len() == 1 && toward_apex(ctx, two_paths[0], a),
        Geometry::BothTowardApex => two_paths.len() == 2 && two_paths.iter().all(|&c| toward_apex(ctx, c, a)),
        Geometry::OneTowardApex => {
            two_paths.len() == 2 && two_paths.iter().filter(|&&c| toward_apex(ctx, c, a)).count() == 1
        }
        Geometry::ParentInternal => m.is_internal_triangle(r.tree.nodes[v]).unwrap_or(false),
        Geometry::ParentOuter => !m.is_internal_triangle(r.tree.nodes[v]).unwrap_or(true) && r.parent[v].is_some(),
        Geometry::SmallOrder(s) => m.n() <= s,
    }
}

/// All catalogue matches, in catalogue order, then by anchor.
pub(crate) fn candidates(m: &Mop, ctx: &Context) -> Vec<Candidate> {
    let mut out = Vec::new();
    let r = &ctx.rooted;
    let mut by_depth: Vec<usize> = (0..r.tree.len()).filter(|&v| r.parent[v].is_some()).collect();
    by_depth.sort_by_key(|&v| (std::cmp::Reverse(r.depth[v]), v));
    for (idx, rule) in CATALOGUE.iter().enumerate() {
        match &rule.kind {
            RuleKind::Leaf(l) => {
                for walk in &ctx.walks {
                    if leaf_matches(l, walk, ctx) {
                        out.push(Candidate { rule: idx, anchor: walk.path[0] });
                    }
                }
            }
            RuleKind::Subtree(s) => {
                let want = shape_encoding(s.shape);
                for &w in &by_depth {
                    if ctx.enc[w].as_deref() == Some(want.as_str()) && geometry_holds(m, ctx, s, w) {
                        out.push(Candidate { rule: idx, anchor: w });
                    }
                }
            }
        }
    }
    out
}

/// Concrete vertices of a match before any graph surgery.
struct Plan {
    deleted: Vec<usize>,
    contract: Option<(usize, usize)>,
    merged: Vec<LiftOption>,
    other: Vec<LiftOption>,
    direct: Vec<Vec<usize>>,
    /// Extra vertices offered to the option search.
    pool_extra: Vec<usize>,
}

fn sym_options(opts: &[SymOption], end1: usize, end2: usize, apex: usize) -> Vec<LiftOption> {
    let f = |s: &Sym| match s {
        Sym::Apex => apex,
        Sym::End1 => end1,
        Sym::End2 => end2,
    };
    opts.iter()
        .map(|o| LiftOption { drop: o.drop.iter().map(f).collect(), add: o.add.iter().map(f).collect() })
        .collect()
}

fn plan_leaf(rule: &super::catalogue::LeafRule, walk: &LeafWalk) -> Plan {
    let u = |i: &usize| walk.vertex(*i);
    let plain = |s: &[usize]| LiftOption { drop: Vec::new(), add: s.iter().map(u).collect() };
    Plan {
        deleted: rule.delete.iter().map(u).collect(),
        contract: rule.contract.map(|(a, b)| (walk.vertex(a), walk.vertex(b))),
        merged: if rule.merged.is_empty() { Vec::new() } else { vec![plain(rule.merged)] },
        other: vec![plain(rule.other)],
        direct: rule.direct.iter().map(|s| s.iter().map(u).collect()).collect(),
        pool_extra: Vec::new(),
    }
}

fn plan_subtree(m: &Mop, ctx: &Context, rule: &SubtreeRule, w: usize) -> Result<Plan, Skip> {
    let r = &ctx.rooted;
    let (p, q) = r.parent_diagonal(w).unwrap();
    let a = apex(ctx, w);
    let child = |c: ChildShape| {
        let want = child_encoding(c);
        r.children[w].iter().copied().find(|&x| ctx.enc[x].as_deref() == Some(want.as_str()))
    };
    let missing = || Skip::Structure("child shape not found".into());
    let interior = r.interior_vertices(w);
    let mut contract = match rule.contract {
        Contract::No => None,
        Contract::ParentDiagonal => Some((p, q)),
        Contract::EndToParentApex => None,
    };
    let mut pool_extra = Vec::new();
    let deleted: Vec<usize> = match rule.removal {
        Removal::AllInterior => interior,
        Removal::InteriorExceptApex => interior.into_iter().filter(|&x| x != a).collect(),
        Removal::KeepApexAnd(c) => {
            let c = child(c).ok_or_else(missing)?;
            let ca = r.apex_from(c, w);
            interior.into_iter().filter(|&x| x != a && x != ca).collect()
        }
        Removal::ChildInterior(c) => r.interior_vertices(child(c).ok_or_else(missing)?),
        Removal::InteriorAndOuterEnd => {
            let v = r.parent[w].unwrap();
            let top = r.apex_from(v, w);
            pool_extra.push(top);
            let (s, t) = if m.is_outer_edge(p, top) { (p, q) } else { (q, p) };
            contract = Some((t, top));
            let mut d = interior;
            d.push(s);
            d
        }
        Removal::Nothing => {
            let v = r.parent[w].unwrap();
            pool_extra.extend(interior);
            pool_extra.extend([p, q, r.apex_from(v, w)]);
            Vec::new()
        }
    };
    Ok(Plan {
        deleted,
        contract,
        merged: sym_options(rule.merged, p.min(q), p.max(q), a),
        other: sym_options(rule.other, p.min(q), p.max(q), a),
        direct: Vec::new(),
        pool_extra,
    })
}

/// Candidate augmentation sets from the neighbourhood of the deleted region,
/// best first: sets that alone dominate every deleted vertex, then smaller, then lexicographic.
fn searched_options(
    prof: &DistanceProfile,
    pool: &[usize],
    deleted: &[usize],
    required: &[usize],
    max_extra: usize,
    cap: usize,
) -> Vec<LiftOption> {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    fn rec(pool: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let free: Vec<usize> = pool.iter().copied().filter(|v| !required.contains(v)).collect();
    rec(&free, 0, max_extra, &mut cur, &mut sets);
    if !required.is_empty() {
        sets.push(Vec::new());
    }
    let mut scored: Vec<(bool, usize, usize, Vec<usize>)> = sets
        .into_iter()
        .map(|mut s| {
            s.extend_from_slice(required);
            s.sort_unstable();
            let open = prof.undominated(&s);
            let missed = deleted.iter().filter(|d| open.contains(d)).count();
            (missed > 0, s.len(), missed, s)
        })
        .collect();
    scored.sort();
    scored.truncate(cap);
    scored.into_iter().map(|(_, _, _, s)| LiftOption { drop: Vec::new(), add: s }).collect()
}

fn push_unique(list: &mut Vec<LiftOption>, extra: Vec<LiftOption>) {
    for o in extra {
        if !list.iter().any(|x| x.add == o.add && x.drop == o.drop) {
            list.push(o);
        }
    }
}

pub(crate) fn instantiate(m: &Mop, ctx: &Context, cand: Candidate) -> Result<ReductionStep, Skip> {
    let rule: &Rule = &CATALOGUE[cand.rule];
    let mut plan = match &rule.kind {
        RuleKind::Leaf(l) => {
            let walk = ctx.walks.iter().find(|w| w.path[0] == cand.anchor).unwrap();
            plan_leaf(l, walk)
        }
        RuleKind::Subtree(s) => plan_subtree(m, ctx, s, cand.anchor)?,
    };
    let n = m.n();
    let k = m.degree_two_count();
    let limit = bound(n, k);
    let prof = DistanceProfile::new(m);

    let deletion = m.delete_vertices(&plan.deleted).map_err(|e| Skip::Structure(e.to_string()))?;
    let h = &deletion.mop;
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (old, new) in deletion.map.iter().enumerate() {
        if let Some(x) = new {
            back[*x].push(old);
        }
    }
    let reduced = match plan.contract {
        None => h.clone(),
        Some((a, b)) => {
            let (x, y) = (deletion.map[a], deletion.map[b]);
            let (Some(x), Some(y)) = (x, y) else {
                return Err(Skip::Structure("contracted vertex was deleted".into()));
            };
            let c = h.contract_outer_edge((x, y)).map_err(|e| Skip::Structure(e.to_string()))?;
            let mut nb = vec![Vec::new(); c.mop.n()];
            for (old, &new) in c.map.iter().enumerate() {
                nb[new].extend(back[old].iter().copied());
            }
            back = nb;
            c.mop
        }
    };

    // option pool: deleted vertices, their surviving neighbours, contracted ends
    let mut pool: BTreeSet<usize> = plan.deleted.iter().copied().collect();
    for &d in &plan.deleted {
        pool.extend(m.neighbors(d).iter().copied());
    }
    pool.extend(plan.pool_extra.iter().copied());
    if let Some((a, b)) = plan.contract {
        pool.insert(a);
        pool.insert(b);
    }
    let pool: Vec<usize> = pool.into_iter().collect();
    let other = searched_options(&prof, &pool, &plan.deleted, &[], rule.budget, MAX_OPTIONS);
    push_unique(&mut plan.other, other);
    if let Some((a, b)) = plan.contract {
        let mut req = vec![a, b];
        req.sort_unstable();
        let merged = searched_options(&prof, &pool, &plan.deleted, &req, rule.budget.saturating_sub(1), MAX_OPTIONS);
        push_unique(&mut plan.merged, merged);
    }

    let mut step = ReductionStep {
        rule_id: rule.id,
        deleted: plan.deleted.clone(),
        contracted: plan.contract,
        budget: rule.budget,
        n_before: n,
        k_before: k,
        n_after: reduced.n(),
        k_after: reduced.degree_two_count(),
        graph: m.clone(),
        reduced,
        back,
        merged_options: plan.merged,
        other_options: plan.other,
        direct: None,
    };
    step.deleted.sort_unstable();

    let direct_case = matches!(&rule.kind, RuleKind::Subtree(s) if s.removal == Removal::Nothing);
    if direct_case || step.n_after < SMALL_REDUCED {
        let mut tries: Vec<Vec<usize>> = plan.direct.clone();
        if direct_case {
            tries.extend(
                searched_options(&prof, &pool, &pool, &[], limit.min(rule.budget), usize::MAX)
                    .into_iter()
                    .map(|o| o.add),
            );
        } else {
            for base in small_bases(h) {
                let lifted: Vec<usize> = base.iter().map(|&x| deletion_back(&deletion.map, x)).collect();
                for o in &step.other_options {
                    let mut s = lifted.clone();
                    s.extend(o.add.iter().copied());
                    s.sort_unstable();
                    s.dedup();
                    tries.push(s);
                }
            }
        }
        for mut s in tries {
            s.sort_unstable();
            s.dedup();
            if s.len() <= limit && prof.is_2dd_set(&s) {
                step.direct = Some(s);
                return Ok(step);
            }
        }
        return Err(Skip::SmallCase);
    }

    let reduced_bound = bound(step.n_after, step.k_after);
    if reduced_bound + rule.budget > limit {
        return Err(Skip::Arithmetic { reduced: reduced_bound, budget: rule.budget, limit });
    }
    Ok(step)
}

fn deletion_back(map: &[Option<usize>], x: usize) -> usize {
    map.iter().position(|&y| y == Some(x)).unwrap()
}

/// Two-vertex sets `{w_i, w_{i+4}}` for orders 5 to 8, single vertices below.
fn small_bases(h: &Mop) -> Vec<Vec<usize>> {
    let n = h.n();
    if (5..=8).contains(&n) {
        (0..n).map(|i| vec![i, (i + 4) % n]).collect()
    } else {
        (0..n).map(|i| vec![i]).collect()
    }
}
