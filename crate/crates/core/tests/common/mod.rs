//! Brute-force reference computations built only from the edge list.

#![allow(dead_code)]

use mopdom_core::Mop;

/// All-pairs distances by Floyd-Warshall over the cycle plus diagonals.
pub fn distances(m: &Mop) -> Vec<Vec<usize>> {
    let n = m.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend(m.diagonals().iter().copied());
    for (a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn covers_2dd(d: &[Vec<usize>], set: &[usize]) -> bool {
    (0..d.len()).all(|v| set.iter().any(|&s| d[v][s] <= 1) || set.iter().filter(|&&s| d[v][s] == 2).count() >= 2)
}

pub fn covers(d: &[Vec<usize>], set: &[usize]) -> bool {
    (0..d.len()).all(|v| set.iter().any(|&s| d[v][s] <= 1))
}

fn min_subset(n: usize, ok: impl Fn(&[usize]) -> bool) -> usize {
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if ok(&set) {
            best = size;
        }
    }
    best
}

pub fn brute_2dd(m: &Mop) -> usize {
    let d = distances(m);
    min_subset(m.n(), |s| covers_2dd(&d, s))
}

pub fn brute_gamma(m: &Mop) -> usize {
    let d = distances(m);
    min_subset(m.n(), |s| covers(&d, s))
}

/// Triangles counted as vertex triples with all three edges present.
pub fn brute_internal_triangles(m: &Mop) -> usize {
    let n = m.n();
    let d = distances(m);
    let outer = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if d[a][b] == 1 && d[b][c] == 1 && d[a][c] == 1 && !outer(a, b) && !outer(b, c) && !outer(a, c) {
                    count += 1;
                }
            }
        }
    }
    count
}
