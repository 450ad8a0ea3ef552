use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;
use super::snf::smith_diagonal;
use super::AbelianError;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`
/// with `d_1 | d_2 | … | d_t` and every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/m`; `m = 0` gives `Z` and `m = 1` gives the zero group.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => FgAbelianGroup { free_rank: 0, torsion: vec![m] },
        }
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders of 0 count
    /// as copies of `Z`, orders of 1 vanish.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let diag: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        Self::from_diagonal(&diag).expect("u64 orders stay within u64 after normalization")
    }

    /// Normalizes a diagonal presentation `⊕ Z/d_i` (entries may be 0).
    pub fn from_diagonal(diag: &[BigInt]) -> Result<Self, AbelianError> {
        let free = diag.iter().filter(|d| d.is_zero()).count();
        let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Ok(Self::free(free));
        }
        let sorted_chain = nonzero.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        let invariants = if sorted_chain {
            nonzero.into_iter().map(|d| num_traits::Signed::abs(&d)).collect()
        } else {
            smith_diagonal(&IntegerMatrix::diagonal(&nonzero))
        };
        Self::from_invariants(free, &invariants)
    }

    /// Builds the group from a free rank and an already divisibility-ordered
    /// list of positive invariants (units are dropped).
    pub fn from_invariants(free: usize, invariants: &[BigInt]) -> Result<Self, AbelianError> {
        let mut torsion = Vec::new();
        for d in invariants {
            let v = d.to_u64().ok_or_else(|| AbelianError::Overflow(d.to_string()))?;
            if v > 1 {
                torsion.push(v);
            }
        }
        Ok(FgAbelianGroup { free_rank: free, torsion })
    }

    /// Cokernel of an integer matrix viewed as a presentation: generators
    /// are rows, relations are columns.
    pub fn presented_by(generators: usize, relations: &IntegerMatrix) -> Result<Self, AbelianError> {
        assert_eq!(relations.rows(), generators);
        let diag = smith_diagonal(relations);
        let free = generators - diag.len();
        Self::from_invariants(free, &diag)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group; `None` when there is a free part.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::from(1), |acc, &d| acc * d))
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn exponent(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    /// Number of generators in the invariant-factor decomposition.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Rank of the `p`-primary part, i.e. the number of invariants divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders: Vec<u64> = vec![0; self.free_rank + other.free_rank];
        orders.extend(self.torsion.iter().chain(&other.torsion));
        Self::from_cyclic_orders(&orders)
    }

    pub fn power(&self, k: usize) -> FgAbelianGroup {
        (0..k).fold(Self::zero(), |acc, _| acc.direct_sum(self))
    }
}

/// Tensor product over `Z`, in normal form.
pub fn tensor(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders: Vec<u64> = vec![0; a.free_rank * b.free_rank];
    for &d in &a.torsion {
        orders.extend(std::iter::repeat_n(d, b.free_rank));
    }
    for &e in &b.torsion {
        orders.extend(std::iter::repeat_n(e, a.free_rank));
    }
    for &d in &a.torsion {
        for &e in &b.torsion {
            orders.push(d.gcd(&e));
        }
    }
    FgAbelianGroup::from_cyclic_orders(&orders)
}

/// True iff the two groups have the same normal form.
pub fn iso_check(a: &FgAbelianGroup, b: &FgAbelianGroup) -> bool {
    a == b
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}
