//! Direct constructions for orders 7 to 12.

use crate::mop::Mop;
use crate::solvers::DistanceProfile;

use super::ConstructorError;

/// The vertex of the 5-vertex arc `s..s+4` adjacent to the other four.
fn universal(m: &Mop, s: usize) -> Option<usize> {
    let n = m.n();
    let arc: Vec<usize> = (0..5).map(|i| (s + i) % n).collect();
    arc.iter().copied().find(|&x| arc.iter().all(|&y| y == x || m.has_edge(x, y)))
}

/// Starts `s` of arcs `s..s+len` closed off by a diagonal `{s, s+len}`.
fn arcs(m: &Mop, len: usize) -> Vec<usize> {
    let n = m.n();
    (0..n).filter(|&s| m.has_edge(s, (s + len) % n) && !m.is_outer_edge(s, (s + len) % n)).collect()
}

fn candidates(m: &Mop) -> Vec<Vec<usize>> {
    let n = m.n();
    let at = |i: usize| i % n;
    match n {
        7 | 8 => vec![vec![0, 4]],
        9 => (0..n).filter(|&v| m.neighbors(v).len() == 2).map(|v| vec![at(v + n - 1), at(v + 4)]).collect(),
        10 => {
            let mut out = Vec::new();
            for s in arcs(m, 4) {
                if let Some(u) = universal(m, s) {
                    out.push(vec![u, at(s + 7)]);
                }
            }
            for s in arcs(m, 5) {
                out.push(vec![s, at(s + 5)]);
            }
            out
        }
        11 if m.internal_triangle_count() > 0 => vec![vec![0, 4, 8]],
        11 => {
            let mut out = Vec::new();
            let regions: Vec<(usize, usize)> =
                arcs(m, 4).into_iter().filter_map(|s| universal(m, s).map(|u| (s, u))).collect();
            for &(s, u) in &regions {
                if u == s {
                    out.push(vec![u, at(s + 7)]);
                } else if u == at(s + 4) {
                    out.push(vec![u, at(s + 8)]);
                } else {
                    // pair with the hub of a pentagon on the far side
                    for &(s2, w) in &regions {
                        let off = (s2 + n - s) % n;
                        if (4..=7).contains(&off) {
                            out.push(vec![u, w]);
                        }
                    }
                }
            }
            out
        }
        12 => vec![vec![0, 4, 8]],
        _ => Vec::new(),
    }
}

/// A disjunctive dominating set of size at most `floor(2(n+k)/9)` for `7 <= n <= 12`.
pub fn construct_small(m: &Mop) -> Result<Vec<usize>, ConstructorError> {
    let n = m.n();
    if !(7..=12).contains(&n) {
        return Err(ConstructorError::OutOfRange { n, range: "7..=12" });
    }
    let prof = DistanceProfile::new(m);
    let limit = crate::bound(n, m.degree_two_count());
    for mut s in candidates(m) {
        s.sort_unstable();
        s.dedup();
        if s.len() <= limit && prof.is_2dd_set(&s) {
            return Ok(s);
        }
    }
    Err(ConstructorError::SmallCase { n })
}
