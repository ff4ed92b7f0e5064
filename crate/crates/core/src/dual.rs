//! Weak dual trees, leaf walks and catalogued subtree shapes.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::mop::{Diagonal, Mop, Triangle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("node {0} is not a leaf")]
    NotALeaf(usize),
    #[error("node {0} out of range")]
    NoSuchNode(usize),
    #[error("the dual tree has no node of degree 3")]
    NoBranch,
    #[error("no catalogued subtree shape occurs")]
    NoPattern,
}

/// Triangles as nodes (sorted by vertex triple), diagonals as edges.
#[derive(Debug, Clone)]
pub struct DualTree {
    pub nodes: Vec<Triangle>,
    pub adj: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

pub fn build_dual(m: &Mop) -> DualTree {
    let nodes = m.triangles();
    let mut by_edge: HashMap<Diagonal, Vec<usize>> = HashMap::new();
    for (i, &[a, b, c]) in nodes.iter().enumerate() {
        for e in [(a, b), (a, c), (b, c)] {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); nodes.len()];
    let mut edges = Vec::new();
    for &d in m.diagonals() {
        if let Some(ts) = by_edge.get(&d) {
            if let [x, y] = ts[..] {
                adj[x].push(y);
                adj[y].push(x);
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    edges.sort_unstable();
    DualTree { nodes, adj, edges }
}

impl DualTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// The diagonal shared by two adjacent nodes.
    pub fn shared_edge(&self, x: usize, y: usize) -> Diagonal {
        let [a, b, c] = self.nodes[x];
        let t = &self.nodes[y];
        let common: Vec<usize> = [a, b, c].into_iter().filter(|v| t.contains(v)).collect();
        (common[0], common[1])
    }

    fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut q = VecDeque::from([s]);
        dist[s] = 0;
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }
}

/// A dual tree rooted at a leaf that ends a longest path.
#[derive(Debug, Clone)]
pub struct RootedDual {
    pub tree: DualTree,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    pub size: Vec<usize>,
}

/// Roots at the smallest-id leaf whose eccentricity equals the diameter.
pub fn root_at_diametrical_leaf(tree: DualTree) -> RootedDual {
    let n = tree.len();
    let root = if n <= 1 {
        0
    } else {
        let farthest = |d: &[usize]| (0..n).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap();
        let a = farthest(&tree.bfs(0));
        let da = tree.bfs(a);
        let b = farthest(&da);
        let db = tree.bfs(b);
        let diameter = da[b];
        (0..n).find(|&v| tree.degree(v) <= 1 && da[v].max(db[v]) == diameter).unwrap_or(a)
    };
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut order = Vec::with_capacity(n);
    if n > 0 {
        let mut seen = vec![false; n];
        let mut q = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in &tree.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    children[u].push(w);
                    q.push_back(w);
                }
            }
        }
    }
    let mut size = vec![1; n];
    for &u in order.iter().rev() {
        if let Some(p) = parent[u] {
            size[p] += size[u];
        }
    }
    RootedDual { tree, root, parent, children, depth, size }
}

impl RootedDual {
    /// Diagonal between `v` and its parent.
    pub fn parent_diagonal(&self, v: usize) -> Option<Diagonal> {
        self.parent[v].map(|p| self.tree.shared_edge(v, p))
    }

    /// Vertex of `v` opposite the edge to `toward`.
    pub fn apex_from(&self, v: usize, toward: usize) -> usize {
        let (a, b) = self.tree.shared_edge(v, toward);
        self.tree.nodes[v].into_iter().find(|&x| x != a && x != b).unwrap()
    }

    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children[out[i]].iter().copied());
            i += 1;
        }
        out
    }

    /// Vertices of the triangles in `T_v`, minus the endpoints of the parent diagonal.
    pub fn interior_vertices(&self, v: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.subtree(v).into_iter().flat_map(|x| self.tree.nodes[x]).collect();
        vs.sort_unstable();
        vs.dedup();
        if let Some((a, b)) = self.parent_diagonal(v) {
            vs.retain(|&x| x != a && x != b);
        }
        vs
    }
}

/// Walk from a leaf triangle along degree-2 triangles.
///
/// `u[i]` is the vertex introduced by the walk at step `i` (1-based,
/// `u[0]` unused): `F1 = {u1,u2,u3}`, `F2 = {u2,u3,u4}` with `u2` the vertex
/// of `F1 ∩ F2` that survives into `F3`, and each later `F_i` adds `u_{i+2}`.
#[derive(Debug, Clone)]
pub struct LeafWalk {
    pub path: Vec<usize>,
    pub u: Vec<usize>,
    /// `faces[i]` holds the sorted u-indices of `F_{i+1}`.
    pub faces: Vec<[usize; 3]>,
}

impl LeafWalk {
    /// Follows the path until a node of degree other than 2, or `max_len` nodes.
    pub fn new(t: &DualTree, leaf: usize, max_len: usize) -> LeafWalk {
        let mut path = vec![leaf];
        let mut prev = usize::MAX;
        let mut cur = leaf;
        while path.len() < max_len {
            let next = t.adj[cur].iter().copied().find(|&w| w != prev);
            let Some(next) = next else { break };
            if path.len() > 1 && t.degree(cur) != 2 {
                break;
            }
            path.push(next);
            prev = cur;
            cur = next;
            if t.degree(cur) != 2 {
                break;
            }
        }
        let tri = |i: usize| t.nodes[path[i]];
        let mut u = vec![usize::MAX];
        if path.len() >= 2 {
            let (a, b) = t.shared_edge(path[0], path[1]);
            let tip = tri(0).into_iter().find(|&x| x != a && x != b).unwrap();
            let (u2, u3) = if path.len() >= 3 && tri(2).contains(&b) && !tri(2).contains(&a) { (b, a) } else { (a, b) };
            let u4 = tri(1).into_iter().find(|&x| x != a && x != b).unwrap();
            u.extend([tip, u2, u3, u4]);
            for i in 2..path.len() {
                let new = tri(i).into_iter().find(|x| !tri(i - 1).contains(x)).unwrap();
                u.push(new);
            }
        }
        let index = |v: usize| u.iter().position(|&x| x == v).unwrap();
        let faces = (0..path.len())
            .map(|i| {
                if u.len() < 4 {
                    return [0, 0, 0];
                }
                let mut f = tri(i).map(index);
                f.sort_unstable();
                f
            })
            .collect();
        LeafWalk { path, u, faces }
    }

    /// Sorted u-indices of `F_i` (1-based), if the walk reaches it.
    pub fn face(&self, i: usize) -> Option<[usize; 3]> {
        self.faces.get(i - 1).copied()
    }

    pub fn vertex(&self, i: usize) -> usize {
        self.u[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionShape {
    H1,
    H2,
    H5,
    H6,
    H7,
    H8,
    H9,
    H10,
    H11,
    H12,
    H13,
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeafContext {
    pub leaf: usize,
    pub nearest_branch: usize,
    pub dist: usize,
    pub path: Vec<usize>,
    pub shape: RegionShape,
}

/// Whether the 2-path ending at `leaf` and entering its branch node has its
/// inner diagonal at the branch node's `apex`.
fn two_path_toward_apex(t: &DualTree, leaf: usize, apex: usize) -> bool {
    let w = LeafWalk::new(t, leaf, 3);
    w.vertex(2) == apex
}

pub fn leaf_context(m: &Mop, t: &DualTree, leaf: usize) -> Result<LeafContext, DualError> {
    let _ = m;
    if leaf >= t.len() {
        return Err(DualError::NoSuchNode(leaf));
    }
    if t.degree(leaf) != 1 {
        return Err(DualError::NotALeaf(leaf));
    }
    let walk = LeafWalk::new(t, leaf, usize::MAX);
    let last = *walk.path.last().unwrap();
    if t.degree(last) != 3 {
        return Err(DualError::NoBranch);
    }
    let dist = walk.path.len() - 1;
    let shape = region_shape(t, &walk, dist);
    Ok(LeafContext { leaf, nearest_branch: last, dist, path: walk.path, shape })
}

fn region_shape(t: &DualTree, w: &LeafWalk, dist: usize) -> RegionShape {
    let f = |i: usize| w.face(i);
    match dist {
        2 => {
            let y = w.path[2];
            let prev = w.path[1];
            let others: Vec<usize> = t.adj[y].iter().copied().filter(|&x| x != prev).collect();
            let ear = others.iter().copied().find(|&x| t.degree(x) == 1);
            let apex_with = |s: usize| {
                let (a, b) = t.shared_edge(y, prev);
                let (c, d) = t.shared_edge(y, s);
                [a, b].into_iter().find(|&x| x == c || x == d).unwrap()
            };
            if let Some(e) = ear {
                let apex = apex_with(e);
                return if w.vertex(2) == apex { RegionShape::H9 } else { RegionShape::H10 };
            }
            for &s in &others {
                let tip = t.adj[s].iter().copied().find(|&x| x != y);
                if t.degree(s) == 2 && tip.is_some_and(|x| t.degree(x) == 1) {
                    let apex = apex_with(s);
                    let mine = w.vertex(2) == apex;
                    let theirs = two_path_toward_apex(t, tip.unwrap(), apex);
                    return match (mine, theirs) {
                        (true, true) => RegionShape::H11,
                        (false, false) => RegionShape::H13,
                        _ => RegionShape::H12,
                    };
                }
            }
            RegionShape::None
        }
        5 | 6 if f(4) == Some([4, 5, 6]) => {
            let h1 = f(5) == Some([5, 6, 7]) && f(6) == Some([5, 7, 8]);
            let h2 = f(5) == Some([4, 6, 7]) && f(6) == Some([4, 7, 8]);
            match (dist, h1, h2) {
                (5, true, _) => RegionShape::H1,
                (5, _, true) => RegionShape::H2,
                (6, true, _) if f(7) == Some([5, 8, 9]) => RegionShape::H5,
                (6, true, _) if f(7) == Some([7, 8, 9]) => RegionShape::H6,
                (6, _, true) if f(7) == Some([4, 8, 9]) => RegionShape::H7,
                (6, _, true) if f(7) == Some([7, 8, 9]) => RegionShape::H8,
                _ => RegionShape::None,
            }
        }
        _ => RegionShape::None,
    }
}

/// Rooted shapes used by the subtree catalogue.
pub mod shape {
    pub fn path(k: usize) -> String {
        "(".repeat(k) + &")".repeat(k)
    }

    pub fn branch(x: &str, y: &str) -> String {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        format!("({a}{b})")
    }

    pub fn stem(x: &str) -> String {
        format!("({x})")
    }

    /// A node with a leaf child and a 2-path child.
    pub fn t1() -> String {
        branch(&path(1), &path(2))
    }

    /// A node with two 2-path children.
    pub fn t2() -> String {
        branch(&path(2), &path(2))
    }
}

/// The 28 subtree patterns, as canonical bracket strings.
pub fn subtree_patterns() -> Vec<String> {
    use shape::*;
    let (l1, l2, l5, l6) = (path(1), path(2), path(5), path(6));
    let tp = t1();
    let st = stem(&tp);
    let tpp = t2();
    vec![
        branch(&l1, &l1),
        branch(&l1, &tp),
        branch(&l2, &tp),
        branch(&tp, &tp),
        branch(&l1, &st),
        branch(&l2, &st),
        branch(&tp, &st),
        branch(&st, &st),
        stem(&st),
        branch(&l1, &tpp),
        branch(&l2, &tpp),
        branch(&tp, &tpp),
        branch(&st, &tpp),
        branch(&tpp, &tpp),
        stem(&tpp),
        branch(&l1, &l5),
        branch(&l2, &l5),
        branch(&tp, &l5),
        branch(&st, &l5),
        branch(&tpp, &l5),
        branch(&l5, &l5),
        branch(&l1, &l6),
        branch(&l2, &l6),
        branch(&tp, &l6),
        branch(&st, &l6),
        branch(&tpp, &l6),
        branch(&l5, &l6),
        branch(&l6, &l6),
    ]
}

const MAX_PATTERN_NODES: usize = 13;

impl RootedDual {
    /// Canonical bracket encodings of every subtree small enough to be a pattern.
    pub fn encodings(&self) -> Vec<Option<String>> {
        let n = self.tree.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.depth[v]));
        let mut enc: Vec<Option<String>> = vec![None; n];
        for v in order {
            if self.size[v] > MAX_PATTERN_NODES {
                continue;
            }
            let mut parts: Vec<String> = self.children[v].iter().map(|&c| enc[c].clone().unwrap()).collect();
            parts.sort();
            enc[v] = Some(format!("({})", parts.concat()));
        }
        enc
    }

    /// Every `(pattern, node)` with `T_node` isomorphic to a catalogued
    /// pattern, ordered by pattern number, then deepest, then smallest id.
    /// Pattern numbers are 1-based.
    pub fn pattern_matches(&self) -> Vec<(usize, usize)> {
        let table: HashMap<String, usize> =
            subtree_patterns().into_iter().enumerate().map(|(i, s)| (s, i + 1)).collect();
        let enc = self.encodings();
        let mut out: Vec<(usize, usize)> = (0..self.tree.len())
            .filter(|&v| self.parent[v].is_some())
            .filter_map(|v| enc[v].as_ref().and_then(|e| table.get(e)).map(|&p| (p, v)))
            .collect();
        out.sort_by_key(|&(p, v)| (p, std::cmp::Reverse(self.depth[v]), v));
        out
    }
}

/// The deepest node (smallest id on ties) whose subtree matches a catalogued pattern.
pub fn match_maximal_subtree(t: &RootedDual) -> Result<(usize, usize), DualError> {
    t.pattern_matches()
        .into_iter()
        .min_by_key(|&(p, v)| (std::cmp::Reverse(t.depth[v]), v, p))
        .ok_or(DualError::NoPattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{family, Family};

    #[test]
    fn fan_dual_is_a_path() {
        let t = build_dual(&family(Family::Fan, 7));
        assert_eq!(t.len(), 5);
        assert_eq!(t.edges.len(), 4);
        assert_eq!(t.leaves(), vec![0, 4]);
        let r = root_at_diametrical_leaf(t);
        assert_eq!(r.root, 0);
        assert_eq!(r.depth[4], 4);
    }

    #[test]
    fn star_rooted_at_smallest_leaf() {
        let m = Mop::new(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
        let t = build_dual(&m);
        assert_eq!(t.nodes, vec![[0, 1, 2], [0, 2, 4], [0, 4, 5], [2, 3, 4]]);
        assert_eq!(t.degree(1), 3);
        let r = root_at_diametrical_leaf(t);
        assert_eq!(r.root, 0);
        assert_eq!(r.parent_diagonal(1), Some((0, 2)));
        assert_eq!(r.apex_from(1, 0), 4);
        assert_eq!(r.interior_vertices(1), vec![3, 4, 5]);
    }

    #[test]
    fn leaf_walk_labels() {
        // leaf {0,1,2}, then {0,2,3}, {0,3,4}: a fan strip
        let m = family(Family::Fan, 7);
        let t = build_dual(&m);
        let w = LeafWalk::new(&t, 0, 10);
        assert_eq!(w.path, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.u, vec![usize::MAX, 1, 0, 2, 3, 4, 5, 6]);
        assert_eq!(w.face(3), Some([2, 4, 5]));
    }

    #[test]
    fn leaf_context_requires_branch() {
        let m = family(Family::Fan, 7);
        let t = build_dual(&m);
        assert_eq!(leaf_context(&m, &t, 0).unwrap_err(), DualError::NoBranch);
        assert_eq!(leaf_context(&m, &t, 2).unwrap_err(), DualError::NotALeaf(2));
    }

    #[test]
    fn patterns_are_distinct() {
        let p = subtree_patterns();
        let set: std::collections::HashSet<_> = p.iter().collect();
        assert_eq!(set.len(), 28);
        assert_eq!(p[0], "(()())");
    }
}
