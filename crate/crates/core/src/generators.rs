//! Exhaustive enumeration, canonical forms, uniform sampling and named families.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::mop::{Diagonal, Mop};

pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// Triangulations of the polygon `0..=len`, stored flat with `len - 2`
/// diagonals each.
struct Table {
    stride: usize,
    data: Vec<u8>,
}

impl Table {
    fn count(&self) -> usize {
        if self.stride == 0 {
            1
        } else {
            self.data.len() / (2 * self.stride)
        }
    }

    fn get(&self, i: usize) -> &[u8] {
        &self.data[2 * self.stride * i..2 * self.stride * (i + 1)]
    }
}

fn build_tables(max_len: usize) -> Vec<Table> {
    let mut tables: Vec<Table> = vec![Table { stride: 0, data: Vec::new() }, Table { stride: 0, data: Vec::new() }];
    for len in 2..=max_len {
        let stride = len - 2;
        let mut data = Vec::new();
        for j in 1..len {
            let (left, right) = (&tables[j], &tables[len - j]);
            for li in 0..left.count() {
                for ri in 0..right.count() {
                    if j >= 2 {
                        data.extend([0, j as u8]);
                    }
                    if len - j >= 2 {
                        data.extend([j as u8, len as u8]);
                    }
                    data.extend_from_slice(left.get(li));
                    data.extend(right.get(ri).iter().map(|&x| x + j as u8));
                }
            }
        }
        tables.push(Table { stride, data });
    }
    tables
}

/// Streams every labelled mop on `n` vertices: `Catalan(n-2)` of them.
pub struct Triangulations {
    n: usize,
    tables: Vec<Table>,
    apex: usize,
    last_apex: usize,
    left: usize,
    right: usize,
}

impl Triangulations {
    fn with_range(n: usize, first: usize, last: usize) -> Self {
        assert!(n <= 200, "enumeration is limited to n <= 200");
        let tables = if n >= 3 { build_tables(n - 2) } else { Vec::new() };
        Triangulations { n, tables, apex: first, last_apex: last, left: 0, right: 0 }
    }

    /// Mops whose triangle on the edge `{0, n-1}` has the given apex, a
    /// disjoint shard of the full enumeration.
    pub fn with_apex(n: usize, apex: usize) -> Self {
        Triangulations::with_range(n, apex, apex)
    }
}

impl Iterator for Triangulations {
    type Item = Mop;

    fn next(&mut self) -> Option<Mop> {
        let n = self.n;
        if n < 3 || self.apex == 0 || self.apex > self.last_apex || self.apex > n - 2 {
            return None;
        }
        let j = self.apex;
        let top = n - 1;
        let (lt, rt) = (&self.tables[j], &self.tables[top - j]);
        let mut diags: Vec<Diagonal> = Vec::with_capacity(n - 3);
        if j >= 2 {
            diags.push((0, j));
        }
        if top - j >= 2 {
            diags.push((j, top));
        }
        for pair in lt.get(self.left).chunks(2) {
            diags.push((pair[0] as usize, pair[1] as usize));
        }
        for pair in rt.get(self.right).chunks(2) {
            diags.push((pair[0] as usize + j, pair[1] as usize + j));
        }
        self.right += 1;
        if self.right == rt.count() {
            self.right = 0;
            self.left += 1;
            if self.left == lt.count() {
                self.left = 0;
                self.apex += 1;
            }
        }
        Some(Mop::from_raw(n, diags))
    }
}

pub fn enumerate_triangulations(n: usize) -> Triangulations {
    Triangulations::with_range(n, 1, n.saturating_sub(2))
}

/// Minimum of the sorted diagonal list over all `2n` rotations and reflections.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode {
    pub n: usize,
    pub diagonals: Vec<Diagonal>,
}

impl CanonicalCode {
    pub fn to_mop(&self) -> Mop {
        Mop::from_raw(self.n, self.diagonals.iter().copied())
    }
}

impl fmt::Display for CanonicalCode {
    /// Hex id: the order, then every endpoint, two digits each (four when n > 255).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.n > 255 { 4 } else { 2 };
        write!(f, "{:0w$x}", self.n)?;
        for &(a, b) in &self.diagonals {
            write!(f, "{a:0w$x}{b:0w$x}")?;
        }
        Ok(())
    }
}

pub fn canonical_form(m: &Mop) -> CanonicalCode {
    let n = m.n();
    let mut best: Option<Vec<Diagonal>> = None;
    let mut buf = Vec::with_capacity(m.diagonals().len());
    for reflect in [false, true] {
        for r in 0..n.max(1) {
            buf.clear();
            for &(a, b) in m.diagonals() {
                let f = |v: usize| if reflect { (r + n - v) % n } else { (v + r) % n };
                let (x, y) = (f(a), f(b));
                buf.push(if x < y { (x, y) } else { (y, x) });
            }
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    CanonicalCode { n, diagonals: best.unwrap_or_default() }
}

/// One representative per dihedral class, sorted by canonical code.
pub fn enumerate_canonical(n: usize) -> Vec<Mop> {
    let mut seen = HashSet::new();
    for m in enumerate_triangulations(n) {
        seen.insert(canonical_form(&m));
    }
    let mut codes: Vec<CanonicalCode> = seen.into_iter().collect();
    codes.sort();
    codes.iter().map(CanonicalCode::to_mop).collect()
}

/// Uniform sampler over labelled mops of a fixed order.
pub struct RandomMops {
    n: usize,
    /// `cumulative[len][j-1]`: triangulations of `0..=len` whose apex on
    /// `{0, len}` is at most `j`.
    cumulative: Vec<Vec<BigUint>>,
    rng: ChaCha8Rng,
}

impl RandomMops {
    pub fn new(n: usize, seed: u64) -> Self {
        assert!(n >= 3, "mops need n >= 3");
        let cat: Vec<BigUint> = (0..n).map(catalan).collect();
        let mut cumulative = vec![Vec::new(); n];
        for (len, slot) in cumulative.iter_mut().enumerate().skip(2) {
            let mut acc = BigUint::zero();
            for j in 1..len {
                acc += &cat[j - 1] * &cat[len - j - 1];
                slot.push(acc.clone());
            }
        }
        RandomMops { n, cumulative, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self) -> Mop {
        let mut diags = Vec::with_capacity(self.n - 3);
        let mut stack = vec![(0usize, self.n - 1)];
        while let Some((lo, len)) = stack.pop() {
            if len < 2 {
                continue;
            }
            let cum = &self.cumulative[len];
            let draw = self.rng.gen_biguint_below(cum.last().unwrap());
            let j = 1 + cum.partition_point(|c| *c <= draw);
            if j >= 2 {
                diags.push((lo, lo + j));
            }
            if len - j >= 2 {
                diags.push((lo + j, lo + len));
            }
            stack.push((lo, j));
            stack.push((lo + j, len - j));
        }
        Mop::from_raw(self.n, diags)
    }
}

pub fn random_mop(n: usize, seed: u64) -> Mop {
    RandomMops::new(n, seed).sample()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Every diagonal from vertex 0.
    Fan,
    /// Zig-zag strip whose dual tree is a path and whose degrees are at most 4.
    Serpentine,
}

pub fn family(f: Family, n: usize) -> Mop {
    assert!(n >= 3, "mops need n >= 3");
    match f {
        Family::Fan => Mop::from_raw(n, (2..n - 1).map(|j| (0, j))),
        Family::Serpentine => {
            let mut diags = Vec::new();
            let (mut l, mut h) = (1, n - 1);
            let mut lower_high = true;
            while diags.len() < n - 3 {
                if !diags.is_empty() {
                    if lower_high {
                        h -= 1;
                    } else {
                        l += 1;
                    }
                    lower_high = !lower_high;
                }
                diags.push((l, h));
            }
            Mop::from_raw(n, diags)
        }
    }
}
