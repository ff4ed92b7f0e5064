//! Exact and greedy solvers for disjunctive and ordinary domination.
//!
//! A set `S` disjunctively dominates `G` when every vertex outside `S` has a
//! neighbour in `S` or at least two members of `S` at distance exactly 2.

use serde::Serialize;
use thiserror::Error;

use crate::mop::Mop;

/// Largest order the exact solvers accept without `force`.
pub const SOFT_LIMIT: usize = 20;
/// Hard ceiling from the bitmask width.
pub const HARD_LIMIT: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("n = {n} exceeds the exact-solver limit of {limit} (use force)")]
    TooLarge { n: usize, limit: usize },
    #[error("no solution with at most {cap} vertices")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// Neighbourhoods and exact-distance-2 neighbourhoods of every vertex.
#[derive(Debug, Clone)]
pub struct DistanceProfile {
    pub neighbors: Vec<Vec<usize>>,
    pub at_two: Vec<Vec<usize>>,
}

impl DistanceProfile {
    pub fn new(m: &Mop) -> Self {
        let n = m.n();
        let mut mark = vec![usize::MAX; n];
        let mut at_two = Vec::with_capacity(n);
        for v in 0..n {
            mark[v] = v;
            for &u in m.neighbors(v) {
                mark[u] = v;
            }
            let mut two = Vec::new();
            for &u in m.neighbors(v) {
                for &w in m.neighbors(u) {
                    if mark[w] != v {
                        mark[w] = v;
                        two.push(w);
                    }
                }
            }
            two.sort_unstable();
            at_two.push(two);
        }
        let neighbors = (0..n).map(|v| m.neighbors(v).to_vec()).collect();
        DistanceProfile { neighbors, at_two }
    }

    /// Vertices left undominated by `set`.
    pub fn undominated(&self, set: &[usize]) -> Vec<usize> {
        let n = self.neighbors.len();
        let mut inside = vec![false; n];
        for &v in set {
            inside[v] = true;
        }
        (0..n)
            .filter(|&w| {
                !inside[w]
                    && !self.neighbors[w].iter().any(|&u| inside[u])
                    && self.at_two[w].iter().filter(|&&u| inside[u]).count() < 2
            })
            .collect()
    }

    pub fn is_2dd_set(&self, set: &[usize]) -> bool {
        set.iter().all(|&v| v < self.neighbors.len()) && self.undominated(set).is_empty()
    }
}

pub fn is_2dd_set(m: &Mop, set: &[usize]) -> bool {
    DistanceProfile::new(m).is_2dd_set(set)
}

pub fn is_dominating_set(m: &Mop, set: &[usize]) -> bool {
    let mut covered = vec![false; m.n()];
    for &v in set {
        if v >= m.n() {
            return false;
        }
        covered[v] = true;
        for &u in m.neighbors(v) {
            covered[u] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSolver {
    /// Give up once sizes above `cap` would be needed.
    pub cap: Option<usize>,
    /// Allow orders above [`SOFT_LIMIT`].
    pub force: bool,
}

struct Masks {
    full: u128,
    closed: Vec<u128>,
    two: Vec<u128>,
    reach: u32,
}

impl Masks {
    fn new(m: &Mop) -> Masks {
        let p = DistanceProfile::new(m);
        let n = m.n();
        let bits = |l: &[usize]| l.iter().fold(0u128, |acc, &v| acc | (1u128 << v));
        let closed: Vec<u128> = (0..n).map(|v| bits(&p.neighbors[v]) | (1u128 << v)).collect();
        let two: Vec<u128> = (0..n).map(|v| bits(&p.at_two[v])).collect();
        let reach = (0..n).map(|v| (closed[v] | two[v]).count_ones()).max().unwrap_or(0);
        let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        Masks { full, closed, two, reach }
    }
}

impl ExactSolver {
    fn admit(&self, m: &Mop) -> Result<(), SolverError> {
        let limit = if self.force { HARD_LIMIT } else { SOFT_LIMIT };
        if m.n() > limit {
            return Err(SolverError::TooLarge { n: m.n(), limit });
        }
        Ok(())
    }

    /// Minimum disjunctive dominating set; the witness is the
    /// lexicographically least among minimum sets.
    pub fn solve_2dd(&self, m: &Mop) -> Result<Solution, SolverError> {
        self.admit(m)?;
        let masks = Masks::new(m);
        let n = m.n();
        let top = self.cap.map_or(n, |c| c.min(n));
        for r in 1..=top {
            let mut chosen = Vec::with_capacity(r);
            if search_2dd(&masks, n, r, 0, 0, 0, 0, &mut chosen) {
                return Ok(Solution { size: r, witness: chosen });
            }
        }
        Err(SolverError::CapExceeded { cap: top })
    }

    /// Minimum dominating set, lexicographically least witness.
    pub fn solve_gamma(&self, m: &Mop) -> Result<Solution, SolverError> {
        self.admit(m)?;
        let masks = Masks::new(m);
        let n = m.n();
        let top = self.cap.map_or(n, |c| c.min(n));
        for r in 1..=top {
            let mut chosen = Vec::with_capacity(r);
            if search_gamma(&masks, n, r, 0, 0, &mut chosen) {
                return Ok(Solution { size: r, witness: chosen });
            }
        }
        Err(SolverError::CapExceeded { cap: top })
    }
}

#[allow(clippy::too_many_arguments)]
fn search_2dd(
    k: &Masks,
    n: usize,
    r: usize,
    start: usize,
    near: u128,
    once: u128,
    twice: u128,
    chosen: &mut Vec<usize>,
) -> bool {
    let covered = near | twice;
    if chosen.len() == r {
        return covered == k.full;
    }
    let left = (r - chosen.len()) as u32;
    let open = k.full & !covered;
    // sizes are tried in increasing order, so a full cover here is never minimal
    if open == 0 || open.count_ones() > left * k.reach {
        return false;
    }
    let low = open.trailing_zeros() as usize;
    if start >= n || (k.closed[low] | k.two[low]) >> start == 0 {
        return false;
    }
    for v in start..=n - (r - chosen.len()) {
        chosen.push(v);
        let t = twice | (once & k.two[v]);
        if search_2dd(k, n, r, v + 1, near | k.closed[v], once | k.two[v], t, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn search_gamma(k: &Masks, n: usize, r: usize, start: usize, covered: u128, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == r {
        return covered == k.full;
    }
    // the lowest uncovered vertex needs a dominator among the remaining labels
    let open = k.full & !covered;
    let low = open.trailing_zeros() as usize;
    if open == 0 || start >= n || k.closed[low] >> start == 0 {
        return false;
    }
    for v in start..=n - (r - chosen.len()) {
        chosen.push(v);
        if search_gamma(k, n, r, v + 1, covered | k.closed[v], chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn exact_2dd(m: &Mop) -> Result<Solution, SolverError> {
    ExactSolver::default().solve_2dd(m)
}

pub fn exact_gamma(m: &Mop) -> Result<Solution, SolverError> {
    ExactSolver::default().solve_gamma(m)
}

/// Adds the vertex that newly disjunctively dominates the most vertices,
/// smallest label on ties, until everything is dominated.
pub fn greedy_2dd(m: &Mop) -> Vec<usize> {
    let p = DistanceProfile::new(m);
    let n = m.n();
    let mut inside = vec![false; n];
    let mut near = vec![false; n];
    let mut hits = vec![0usize; n];
    let covered = |w: usize, near: &[bool], hits: &[usize]| near[w] || hits[w] >= 2;
    let mut set = Vec::new();
    loop {
        let open = (0..n).filter(|&w| !covered(w, &near, &hits)).count();
        if open == 0 {
            break;
        }
        let mut best = (0usize, usize::MAX);
        for v in (0..n).filter(|&v| !inside[v]) {
            let mut gain = usize::from(!covered(v, &near, &hits));
            gain += p.neighbors[v].iter().filter(|&&w| !covered(w, &near, &hits)).count();
            gain += p.at_two[v].iter().filter(|&&w| !covered(w, &near, &hits) && hits[w] + 1 >= 2).count();
            if gain > best.0 {
                best = (gain, v);
            }
        }
        let v = best.1;
        inside[v] = true;
        near[v] = true;
        for &w in &p.neighbors[v] {
            near[w] = true;
        }
        for &w in &p.at_two[v] {
            hits[w] += 1;
        }
        set.push(v);
    }
    set.sort_unstable();
    set
}
