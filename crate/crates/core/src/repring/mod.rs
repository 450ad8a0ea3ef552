//! The representation ring side: `RO(C_n)`, fixed-point dimensions and the
//! combinatorial functions of a grading that the closed-form answers consume.

mod group;
mod parse;
mod rep;

use serde::{Deserialize, Serialize};

pub use group::{GroupSpec, PrimeSet};
pub use parse::{parse_grading, MAX_LITERAL};
pub use rep::{fold_exponent, FixedDims, VirtualRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("n = {0} is not a positive odd squarefree integer")]
    InvalidOrder(u64),
    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),
    #[error("fixed dimensions do not share one parity")]
    MixedParity,
    #[error("no fixed dimension given for divisor {0}")]
    MissingDivisor(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Which fixed dimensions of a grading vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroPattern {
    NonZero,
    MostlyNonZero,
    ManyZeros,
}

/// The squarefree integer `m(α)`: for even `α` the product of the primes
/// with `|α^{C_p}| ≤ 0`, for odd `α` those with `|α^{C_p}| > 1`.
pub fn m_alpha(fd: &FixedDims) -> u64 {
    let g = fd.group();
    let even = fd.is_even();
    (0..g.k())
        .filter(|&i| {
            let v = fd.at_prime(i);
            if even {
                v <= 0
            } else {
                v > 1
            }
        })
        .map(|i| g.primes()[i])
        .product()
}

/// `J(α)`: bit `i` set iff `|α^{C_{p_i}}| > 0`.
pub fn j_vector(fd: &FixedDims) -> PrimeSet {
    PrimeSet::from_indices(&(0..fd.group().k()).filter(|&i| fd.at_prime(i) > 0).collect::<Vec<_>>())
}

pub fn classify(fd: &FixedDims) -> ZeroPattern {
    let g = fd.group();
    let all = g.all();
    let mut any_zero = false;
    for s in all.subsets() {
        if fd.at(s) != 0 {
            continue;
        }
        any_zero = true;
        for i in all.minus(s).indices() {
            if fd.at(s.with(i)) == 0 {
                return ZeroPattern::ManyZeros;
            }
        }
    }
    if any_zero {
        ZeroPattern::MostlyNonZero
    } else {
        ZeroPattern::NonZero
    }
}

/// `ζ_α(I) = { i ∉ I : |α^{C_{I·p_i}}| = 0 }`.
pub fn zeta(fd: &FixedDims, s: PrimeSet) -> PrimeSet {
    let all = fd.group().all();
    PrimeSet::from_indices(&all.minus(s).indices().filter(|&i| fd.at(s.with(i)) == 0).collect::<Vec<_>>())
}

/// `ν_{p_i}^{I,J}(α)`: the number of `S ⊆ I` with `i ∉ S`, `|α^{C_S}| > 0`
/// and `|α^{C_{S p_i}}| ≤ 0` (when `i ∈ J`) or `< 0` (when `i ∉ J`).
pub fn nu(fd: &FixedDims, i: usize, burnside: PrimeSet) -> usize {
    let in_j = !burnside.contains(i);
    burnside
        .without(i)
        .subsets()
        .filter(|&s| {
            let above = fd.at(s.with(i));
            fd.at(s) > 0 && if in_j { above <= 0 } else { above < 0 }
        })
        .count()
}
