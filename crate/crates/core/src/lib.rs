//! Disjunctive domination in maximal outerplanar graphs.

pub mod constructor;
pub mod dual;
pub mod format;
pub mod generators;
pub mod mop;
pub mod solvers;

pub use mop::{Mop, MopError};

/// `floor(2(n + k) / 9)`.
pub fn bound(n: usize, k: usize) -> usize {
    2 * (n + k) / 9
}
