//! Maximal outerplanar graphs in their canonical convex embedding.
//!
//! Vertices `0..n` sit on the outer cycle in counterclockwise order; the
//! graph is the cycle plus a set of non-crossing chords.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Diagonal = (usize, usize);
pub type Triangle = [usize; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MopError {
    #[error("vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("{0:?} is not an outer edge")]
    NotOuterEdge(Diagonal),
    #[error("{0:?} is not a triangle of the mop")]
    NotATriangle(Triangle),
    #[error("deleting the given vertices does not leave a mop")]
    NonMopRemainder,
    #[error("no diagonal cuts off a side with 4, 5 or 6 outer edges")]
    NoPartitionDiagonal,
    #[error("operation needs n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("invalid mop: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewVertices { n: usize },
    EndpointOutOfRange { diagonal: Diagonal },
    LoopOrOuterEdge { diagonal: Diagonal },
    Duplicate { diagonal: Diagonal },
    WrongDiagonalCount { expected: usize, found: usize },
    Crossing { first: Diagonal, second: Diagonal },
    NonTriangularFace { face: Vec<usize> },
    TooFewDegreeTwo { found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { n } => write!(f, "n = {n} is below 3"),
            Violation::EndpointOutOfRange { diagonal: (a, b) } => {
                write!(f, "diagonal {a} {b} has an endpoint out of range")
            }
            Violation::LoopOrOuterEdge { diagonal: (a, b) } => {
                write!(f, "{a} {b} is a loop or an outer edge, not a diagonal")
            }
            Violation::Duplicate { diagonal: (a, b) } => write!(f, "diagonal {a} {b} repeated"),
            Violation::WrongDiagonalCount { expected, found } => {
                write!(f, "expected {expected} diagonals, found {found}")
            }
            Violation::Crossing { first, second } => {
                write!(f, "diagonals {} {} and {} {} cross", first.0, first.1, second.0, second.1)
            }
            Violation::NonTriangularFace { face } => write!(f, "inner face {face:?} is not a triangle"),
            Violation::TooFewDegreeTwo { found } => {
                write!(f, "only {found} vertices of degree 2")
            }
        }
    }
}

/// Every violation found by [`Mop::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Result of contracting an outer edge.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub mop: Mop,
    /// Old label to new label; both endpoints map to `merged`.
    pub map: Vec<usize>,
    pub merged: usize,
}

/// Result of deleting a vertex set.
#[derive(Debug, Clone)]
pub struct Deletion {
    pub mop: Mop,
    /// Old label to new label, `None` for deleted vertices.
    pub map: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionDiagonal {
    pub diagonal: Diagonal,
    /// Number of outer edges of the qualifying side.
    pub side_outer_edges: usize,
    /// Whether the qualifying side is the arc `a, a+1, ..., b` (otherwise the
    /// arc `b, b+1, ..., a` wrapping through `n-1`).
    pub inner_side: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mop {
    n: usize,
    diagonals: Vec<Diagonal>,
    adj: Vec<Vec<usize>>,
}

fn norm(a: usize, b: usize) -> Diagonal {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Mop {
    /// Builds the graph without checking it. Pairs are normalised to `a <= b`
    /// and sorted, but duplicates and bad entries are kept for [`validate`](Self::validate).
    pub fn from_raw(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Mop {
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().map(|(a, b)| norm(a, b)).collect();
        diagonals.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        if n >= 2 {
            for i in 0..n {
                let j = (i + 1) % n;
                if i != j && !adj[i].contains(&j) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        for &(a, b) in &diagonals {
            if a < n && b < n && a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Mop { n, diagonals, adj }
    }

    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Mop, MopError> {
        let m = Mop::from_raw(n, diagonals);
        let report = m.validate();
        if report.is_valid() {
            Ok(m)
        } else {
            Err(MopError::Invalid(report))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn is_outer_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && a != b && ((a + 1) % self.n == b || (b + 1) % self.n == a)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check(&self, v: usize) -> Result<(), MopError> {
        if v < self.n {
            Ok(())
        } else {
            Err(MopError::IndexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut out = Vec::new();
        if n < 3 {
            out.push(Violation::TooFewVertices { n });
            return ValidationReport { violations: out };
        }
        let mut good = Vec::new();
        for (i, &d) in self.diagonals.iter().enumerate() {
            let (a, b) = d;
            if b >= n {
                out.push(Violation::EndpointOutOfRange { diagonal: d });
            } else if a == b || self.is_outer_edge(a, b) {
                out.push(Violation::LoopOrOuterEdge { diagonal: d });
            } else if i > 0 && self.diagonals[i - 1] == d {
                out.push(Violation::Duplicate { diagonal: d });
            } else {
                good.push(d);
            }
        }
        if self.diagonals.len() != n - 3 {
            out.push(Violation::WrongDiagonalCount { expected: n - 3, found: self.diagonals.len() });
        }
        let mut crossing = false;
        for (i, &(a, b)) in good.iter().enumerate() {
            for &(c, d) in &good[i + 1..] {
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in && c != a && c != b && d != a && d != b {
                    out.push(Violation::Crossing { first: (a, b), second: (c, d) });
                    crossing = true;
                }
            }
        }
        if !crossing && out.is_empty() {
            for face in self.inner_faces() {
                if face.len() != 3 {
                    out.push(Violation::NonTriangularFace { face });
                }
            }
            if n >= 4 {
                let twos = (0..n).filter(|&v| self.adj[v].len() == 2).count();
                if twos < 2 {
                    out.push(Violation::TooFewDegreeTwo { found: twos });
                }
            }
        }
        ValidationReport { violations: out }
    }

    /// Traces the bounded faces of the convex embedding.
    fn inner_faces(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let offset = |from: usize, to: usize| (to + n - from) % n;
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        let mut starts: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for &(a, b) in &self.diagonals {
            starts.push((a, b));
            starts.push((b, a));
        }
        for start in starts {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = start;
            loop {
                seen.insert((u, v));
                face.push(u);
                let back = offset(v, u);
                let w = self.adj[v].iter().copied().filter(|&w| offset(v, w) < back).max_by_key(|&w| offset(v, w));
                let Some(w) = w else { break };
                u = v;
                v = w;
                if (u, v) == start || face.len() > n {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    pub fn degree(&self, v: usize) -> Result<usize, MopError> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    /// Number of degree-2 vertices, the parameter `k`.
    pub fn degree_two_count(&self) -> usize {
        self.adj.iter().filter(|l| l.len() == 2).count()
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize, MopError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.bfs(u)[v])
    }

    /// Hop distances from `s`; the graph is connected so every entry is finite.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([s]);
        dist[s] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All triangles, each sorted, in lexicographic order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(2));
        for a in 0..self.n {
            for &b in self.adj[a].iter().filter(|&&b| b > a) {
                for &c in self.adj[b].iter().filter(|&&c| c > b) {
                    if self.has_edge(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn is_internal_triangle(&self, t: Triangle) -> Result<bool, MopError> {
        for &v in &t {
            self.check(v)?;
        }
        let [a, b, c] = t;
        if a == b || b == c || a == c || !self.has_edge(a, b) || !self.has_edge(b, c) || !self.has_edge(a, c) {
            return Err(MopError::NotATriangle(t));
        }
        Ok(!self.is_outer_edge(a, b) && !self.is_outer_edge(b, c) && !self.is_outer_edge(a, c))
    }

    pub fn internal_triangle_count(&self) -> usize {
        self.triangles().into_iter().filter(|&t| self.is_internal_triangle(t).unwrap_or(false)).count()
    }

    /// Merges the endpoints of an outer edge into the lower label and
    /// compacts the remaining labels.
    pub fn contract_outer_edge(&self, e: Diagonal) -> Result<Contraction, MopError> {
        let (a, b) = norm(e.0, e.1);
        self.check(b)?;
        if !self.is_outer_edge(a, b) {
            return Err(MopError::NotOuterEdge((a, b)));
        }
        if self.n < 4 {
            return Err(MopError::TooSmall { n: self.n, min: 4 });
        }
        // for the wrap edge {0, n-1} the higher label is n-1
        let (keep, gone) = (a, b);
        let map: Vec<usize> = (0..self.n)
            .map(|v| match v.cmp(&gone) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let m = self.n - 1;
        let mut diags: Vec<Diagonal> = self
            .diagonals
            .iter()
            .map(|&(x, y)| norm(map[x], map[y]))
            .filter(|&(x, y)| x != y && !((x + 1) % m == y || (y + 1) % m == x))
            .collect();
        diags.sort_unstable();
        diags.dedup();
        let mop = Mop::from_raw(m, diags);
        debug_assert!(mop.validate().is_valid());
        let merged = map[keep];
        Ok(Contraction { mop, map, merged })
    }

    /// Deletes `set` and relabels the survivors in order. Fails unless the
    /// survivors, read around the cycle, are consecutively adjacent.
    pub fn delete_vertices(&self, set: &[usize]) -> Result<Deletion, MopError> {
        let mut gone = vec![false; self.n];
        for &v in set {
            self.check(v)?;
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        if keep.len() < 3 {
            return Err(MopError::NonMopRemainder);
        }
        for i in 0..keep.len() {
            if !self.has_edge(keep[i], keep[(i + 1) % keep.len()]) {
                return Err(MopError::NonMopRemainder);
            }
        }
        let mut map = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let m = keep.len();
        let mut diags = Vec::new();
        for &a in &keep {
            for &b in self.adj[a].iter().filter(|&&b| b > a && !gone[b]) {
                let (x, y) = (map[a].unwrap(), map[b].unwrap());
                if !((x + 1) % m == y || (y + 1) % m == x) {
                    diags.push((x, y));
                }
            }
        }
        let mop = Mop::from_raw(m, diags);
        if !mop.validate().is_valid() {
            return Err(MopError::NonMopRemainder);
        }
        Ok(Deletion { mop, map })
    }

    /// A diagonal splitting off a side with 4, 5 or 6 outer edges. Diagonals
    /// are scanned in lexicographic order, first by their own arc `a..b`, then
    /// by the complementary arc.
    pub fn find_partition_diagonal(&self) -> Result<PartitionDiagonal, MopError> {
        if self.n < 6 {
            return Err(MopError::TooSmall { n: self.n, min: 6 });
        }
        let ok = |s: usize| (4..=6).contains(&s);
        for inner_side in [true, false] {
            for &(a, b) in &self.diagonals {
                let s = if inner_side { b - a } else { self.n - (b - a) };
                if ok(s) {
                    return Ok(PartitionDiagonal { diagonal: (a, b), side_outer_edges: s, inner_side });
                }
            }
        }
        Err(MopError::NoPartitionDiagonal)
    }

    /// Applies a vertex relabelling `v -> perm[v]`, which must be a dihedral
    /// symmetry of the cycle for the result to stay in the canonical embedding.
    pub fn relabel(&self, perm: &[usize]) -> Mop {
        Mop::from_raw(self.n, self.diagonals.iter().map(|&(a, b)| (perm[a], perm[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(n: usize) -> Mop {
        Mop::new(n, (2..n - 1).map(|j| (0, j))).unwrap()
    }

    #[test]
    fn fan_seven_is_valid_with_two_degree_two_vertices() {
        let m = fan(7);
        assert!(m.validate().is_valid());
        assert_eq!(m.degree_two_count(), 2);
        assert_eq!(m.edge_count(), 11);
        assert_eq!(m.triangles().len(), 5);
    }

    #[test]
    fn crossing_chords_rejected() {
        let m = Mop::from_raw(6, [(0, 2), (1, 3), (0, 3)]);
        let r = m.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Crossing { first: (0, 2), second: (1, 3) })));
    }

    #[test]
    fn wrong_count_and_bad_entries_reported() {
        let r = Mop::from_raw(5, [(0, 2)]).validate();
        assert!(r.violations.contains(&Violation::WrongDiagonalCount { expected: 2, found: 1 }));
        let r = Mop::from_raw(5, [(0, 1), (0, 9)]).validate();
        assert!(r.violations.contains(&Violation::LoopOrOuterEdge { diagonal: (0, 1) }));
        assert!(r.violations.contains(&Violation::EndpointOutOfRange { diagonal: (0, 9) }));
        let r = Mop::from_raw(5, [(0, 2), (0, 2)]).validate();
        assert!(r.violations.contains(&Violation::Duplicate { diagonal: (0, 2) }));
    }

    #[test]
    fn triangle_and_small_cases() {
        assert!(Mop::new(3, []).is_ok());
        assert!(Mop::new(4, [(1, 3)]).is_ok());
        assert!(!Mop::from_raw(2, []).validate().is_valid());
    }

    #[test]
    fn distances_on_fan() {
        let m = fan(7);
        assert_eq!(m.distance(1, 6).unwrap(), 2);
        assert_eq!(m.distance(0, 4).unwrap(), 1);
        assert_eq!(m.distance(2, 2).unwrap(), 0);
        assert_eq!(m.distance(0, 7), Err(MopError::IndexOutOfRange { vertex: 7, n: 7 }));
        assert!(m.degree(9).is_err());
    }

    #[test]
    fn contraction_of_fan_edge() {
        let m = fan(7);
        let c = m.contract_outer_edge((1, 2)).unwrap();
        assert_eq!(c.mop.n(), 6);
        assert!(c.mop.validate().is_valid());
        assert_eq!(c.merged, 1);
        assert_eq!(c.map, vec![0, 1, 1, 2, 3, 4, 5]);
        assert!(m.contract_outer_edge((0, 3)).is_err());
        let w = m.contract_outer_edge((6, 0)).unwrap();
        assert_eq!(w.merged, 0);
        assert!(w.mop.validate().is_valid());
    }

    #[test]
    fn deletions() {
        assert_eq!(fan(5).delete_vertices(&[2]).unwrap_err(), MopError::NonMopRemainder);
        let m = Mop::new(6, [(0, 2), (2, 5), (2, 4)]).unwrap();
        let d = m.delete_vertices(&[1]).unwrap();
        assert_eq!(d.mop.n(), 5);
        assert!(d.mop.validate().is_valid());
        assert_eq!(d.map[1], None);
        assert_eq!(d.map[2], Some(1));
    }

    #[test]
    fn partition_diagonals_on_fans() {
        let p = fan(7).find_partition_diagonal().unwrap();
        assert_eq!((p.diagonal, p.side_outer_edges), ((0, 4), 4));
        let p = fan(6).find_partition_diagonal().unwrap();
        assert_eq!((p.diagonal, p.side_outer_edges), ((0, 4), 4));
        // fan around vertex 3: only complementary arcs qualify
        let m = Mop::new(7, [(1, 3), (0, 3), (3, 5), (3, 6)]).unwrap();
        let p = m.find_partition_diagonal().unwrap();
        assert_eq!((p.diagonal, p.side_outer_edges, p.inner_side), ((0, 3), 4, false));
        assert!(fan(5).find_partition_diagonal().is_err());
    }

    #[test]
    fn internal_triangles() {
        let m = Mop::new(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
        assert!(m.is_internal_triangle([0, 2, 4]).unwrap());
        assert!(!m.is_internal_triangle([0, 1, 2]).unwrap());
        assert_eq!(m.is_internal_triangle([0, 1, 3]), Err(MopError::NotATriangle([0, 1, 3])));
        assert_eq!(m.internal_triangle_count(), 1);
        assert_eq!(m.degree_two_count(), 3);
    }
}
