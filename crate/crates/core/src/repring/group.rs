use std::fmt;

use serde::{Deserialize, Serialize};

use super::RepError;

/// A subset of the primes of `n`, as a bitmask over their sorted positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct PrimeSet(pub u32);

impl PrimeSet {
    pub const EMPTY: PrimeSet = PrimeSet(0);

    pub fn full(k: usize) -> Self {
        PrimeSet(((1u64 << k) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        PrimeSet(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        PrimeSet(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        PrimeSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        PrimeSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: PrimeSet) -> Self {
        PrimeSet(self.0 | other.0)
    }

    pub fn intersect(self, other: PrimeSet) -> Self {
        PrimeSet(self.0 & other.0)
    }

    pub fn minus(self, other: PrimeSet) -> Self {
        PrimeSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: PrimeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn complement(self, k: usize) -> Self {
        PrimeSet(!self.0 & Self::full(k).0)
    }

    /// Indices of the members, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m & (1 << i) != 0)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = PrimeSet> {
        let m = self.0;
        (0..=m).filter(move |s| s & !m == 0).map(PrimeSet)
    }
}

/// The cyclic group `C_n` with `n` odd and squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct GroupSpec {
    n: u64,
    primes: Vec<u64>,
}

impl TryFrom<u64> for GroupSpec {
    type Error = RepError;

    fn try_from(n: u64) -> Result<Self, RepError> {
        GroupSpec::new(n)
    }
}

impl From<GroupSpec> for u64 {
    fn from(g: GroupSpec) -> u64 {
        g.n
    }
}

impl GroupSpec {
    /// Validates `n` (odd, squarefree, at most 31 prime factors).
    pub fn new(n: u64) -> Result<Self, RepError> {
        if n == 0 || n % 2 == 0 {
            return Err(RepError::InvalidOrder(n));
        }
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 3;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return Err(RepError::InvalidOrder(n));
                }
                primes.push(p);
            }
            p += 2;
        }
        if m > 1 {
            primes.push(m);
        }
        if primes.len() > 31 {
            return Err(RepError::InvalidOrder(n));
        }
        Ok(GroupSpec { n, primes })
    }

    /// The group of order `Π primes`; the primes must be distinct and odd.
    pub fn from_primes(primes: &[u64]) -> Self {
        let n = primes.iter().product();
        GroupSpec::new(n).expect("product of distinct odd primes")
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn k(&self) -> usize {
        self.primes.len()
    }

    pub fn all(&self) -> PrimeSet {
        PrimeSet::full(self.k())
    }

    /// Number of subgroups, i.e. `2^k`.
    pub fn num_divisors(&self) -> usize {
        1 << self.k()
    }

    pub fn divisor(&self, s: PrimeSet) -> u64 {
        s.indices().map(|i| self.primes[i]).product()
    }

    /// Prime set of a divisor; `None` if `d ∤ n`.
    pub fn mask_of(&self, d: u64) -> Option<PrimeSet> {
        if d == 0 || self.n % d != 0 {
            return None;
        }
        Some(PrimeSet::from_indices(
            &(0..self.k()).filter(|&i| d % self.primes[i] == 0).collect::<Vec<_>>(),
        ))
    }

    pub fn index_of_prime(&self, p: u64) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut ds: Vec<u64> = self.all().subsets().map(|s| self.divisor(s)).collect();
        ds.sort_unstable();
        ds
    }

    /// All prime subsets, ordered by the divisor they represent.
    pub fn masks_by_divisor(&self) -> Vec<PrimeSet> {
        let mut ms: Vec<PrimeSet> = self.all().subsets().collect();
        ms.sort_by_key(|&s| self.divisor(s));
        ms
    }

    /// The group whose primes are the members of `s` (a subgroup `C_{|s|}`
    /// or, read differently, the quotient by the complementary subgroup).
    pub fn sub(&self, s: PrimeSet) -> GroupSpec {
        let primes: Vec<u64> = s.indices().map(|i| self.primes[i]).collect();
        GroupSpec { n: primes.iter().product(), primes }
    }

    /// Re-indexes a prime set of `self.sub(selection)` into this group.
    pub fn embed(&self, selection: PrimeSet, inner: PrimeSet) -> PrimeSet {
        let idx: Vec<usize> = selection.indices().collect();
        PrimeSet::from_indices(&inner.indices().map(|j| idx[j]).collect::<Vec<_>>())
    }

    /// Inverse of [`GroupSpec::embed`]: the part of `s` inside `selection`,
    /// indexed as a prime set of `self.sub(selection)`.
    pub fn project(&self, selection: PrimeSet, s: PrimeSet) -> PrimeSet {
        let idx: Vec<usize> = selection.indices().collect();
        PrimeSet::from_indices(
            &idx.iter().enumerate().filter(|(_, &i)| s.contains(i)).map(|(j, _)| j).collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}", self.n)
    }
}
