use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{tensor, FgAbelianGroup};
use crate::repring::{GroupSpec, PrimeSet};

use super::MackeyError;

/// A Mackey functor for `C_p`, used as one tensor factor of an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Factor {
    /// Constant `Z`: restriction 1, transfer `p`.
    ConstZ,
    /// Dual `Z*`: restriction `p`, transfer 1.
    DualZ,
    /// `⟨Z/c⟩` concentrated at the top level; `c = 0` means `⟨Z⟩`.
    Bracket(u64),
    /// The Burnside functor `A`.
    Burnside,
}

impl Factor {
    /// Value at the top (`top = true`) or bottom level.
    pub fn value(self, top: bool) -> FgAbelianGroup {
        match (self, top) {
            (Factor::ConstZ | Factor::DualZ, _) => FgAbelianGroup::free(1),
            (Factor::Burnside, true) => FgAbelianGroup::free(2),
            (Factor::Burnside, false) => FgAbelianGroup::free(1),
            (Factor::Bracket(c), true) => FgAbelianGroup::cyclic(c),
            (Factor::Bracket(_), false) => FgAbelianGroup::zero(),
        }
    }

    fn token(self) -> String {
        match self {
            Factor::ConstZ => "Z".into(),
            Factor::DualZ => "Z*".into(),
            Factor::Bracket(0) => "<Z>".into(),
            Factor::Bracket(c) => format!("<Z/{c}>"),
            Factor::Burnside => "A".into(),
        }
    }
}

/// A box product with one factor per prime of `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MackeyAtom {
    factors: Vec<Factor>,
}

impl MackeyAtom {
    /// Checks the arity against the group and the bracket restriction.
    pub fn boxed(group: &GroupSpec, factors: Vec<Factor>) -> Result<Self, MackeyError> {
        if factors.len() != group.k() {
            return Err(MackeyError::Arity { expected: group.k(), got: factors.len() });
        }
        for (i, f) in factors.iter().enumerate() {
            if let Factor::Bracket(c) = f {
                if *c != 0 && *c != group.primes()[i] {
                    return Err(MackeyError::BadBracket { prime: group.primes()[i], order: *c });
                }
            }
        }
        Ok(MackeyAtom { factors })
    }

    pub fn uniform(group: &GroupSpec, f: Factor) -> Self {
        MackeyAtom { factors: vec![f; group.k()] }
    }

    /// `𝒦_i⟨Z/p_i⟩`.
    pub fn k_torsion(group: &GroupSpec, i: usize) -> Self {
        let mut factors = vec![Factor::ConstZ; group.k()];
        factors[i] = Factor::Bracket(group.primes()[i]);
        MackeyAtom { factors }
    }

    /// `Z^J`: dual factors on `j`, constant elsewhere.
    pub fn z_j(group: &GroupSpec, j: PrimeSet) -> Self {
        MackeyAtom {
            factors: (0..group.k()).map(|i| if j.contains(i) { Factor::DualZ } else { Factor::ConstZ }).collect(),
        }
    }

    /// `A_I ⊠ Z_J` with `I = burnside`.
    pub fn burnside_split(group: &GroupSpec, burnside: PrimeSet) -> Self {
        MackeyAtom {
            factors: (0..group.k())
                .map(|i| if burnside.contains(i) { Factor::Burnside } else { Factor::ConstZ })
                .collect(),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Value at the level given by a prime subset.
    pub fn value_at(&self, level: PrimeSet) -> FgAbelianGroup {
        self.factors
            .iter()
            .enumerate()
            .fold(FgAbelianGroup::free(1), |acc, (i, f)| tensor(&acc, &f.value(level.contains(i))))
    }

    /// Places this atom (over `group.sub(selection)`) into `group`, filling
    /// the other primes with `fill`.
    pub fn embed(&self, group: &GroupSpec, selection: PrimeSet, fill: Factor) -> Self {
        let mut factors = vec![fill; group.k()];
        for (j, i) in selection.indices().enumerate() {
            factors[i] = self.factors[j];
        }
        MackeyAtom { factors }
    }

    /// Index of the torsion prime when the atom is `𝒦_i⟨Z/p_i⟩`.
    pub fn as_k_torsion(&self) -> Option<usize> {
        let mut hit = None;
        for (i, f) in self.factors.iter().enumerate() {
            match f {
                Factor::ConstZ => {}
                Factor::Bracket(c) if *c != 0 && hit.is_none() => hit = Some(i),
                _ => return None,
            }
        }
        hit
    }

    pub fn label(&self, primes: &[u64]) -> String {
        let all = |f: Factor| self.factors.iter().all(|&x| x == f);
        if all(Factor::ConstZ) {
            return "const Z".into();
        }
        if all(Factor::DualZ) {
            return "Z*".into();
        }
        if all(Factor::Burnside) {
            return "A".into();
        }
        if let Some(i) = self.as_k_torsion() {
            return format!("K[{p}]<Z/{p}>", p = primes[i]);
        }
        let parts: Vec<String> =
            self.factors.iter().zip(primes).map(|(f, p)| format!("{}@{}", f.token(), p)).collect();
        format!("box({})", parts.join(", "))
    }
}

/// A formal direct sum of atoms, kept in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MackeyExpr {
    group: GroupSpec,
    atoms: Vec<MackeyAtom>,
}

impl MackeyExpr {
    pub fn zero(group: &GroupSpec) -> Self {
        MackeyExpr { group: group.clone(), atoms: Vec::new() }
    }

    pub fn atom(group: &GroupSpec, atom: MackeyAtom) -> Self {
        assert_eq!(atom.factors.len(), group.k(), "atom arity");
        MackeyExpr { group: group.clone(), atoms: vec![atom] }.canonical_form()
    }

    pub fn from_atoms(group: &GroupSpec, atoms: Vec<MackeyAtom>) -> Self {
        assert!(atoms.iter().all(|a| a.factors.len() == group.k()), "atom arity");
        MackeyExpr { group: group.clone(), atoms }.canonical_form()
    }

    /// The constant functor `Z`.
    pub fn constant(group: &GroupSpec) -> Self {
        Self::atom(group, MackeyAtom::uniform(group, Factor::ConstZ))
    }

    pub fn burnside(group: &GroupSpec) -> Self {
        Self::atom(group, MackeyAtom::uniform(group, Factor::Burnside))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn atoms(&self) -> &[MackeyAtom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Drops vanishing atoms, rewrites `Z*` factors next to a `⟨Z/p⟩` factor
    /// as `Z` (the two boxes are isomorphic because the index is a unit mod
    /// `p`), and sorts with the `𝒦_i⟨Z/p_i⟩` summands first, by prime.
    pub fn canonical_form(mut self) -> Self {
        self.atoms.retain(|a| !a.is_zero_everywhere());
        for a in &mut self.atoms {
            if a.factors.iter().any(|f| matches!(f, Factor::Bracket(c) if *c != 0)) {
                for f in &mut a.factors {
                    if *f == Factor::DualZ {
                        *f = Factor::ConstZ;
                    }
                }
            }
        }
        self.atoms.sort_by_cached_key(|a| (a.as_k_torsion().unwrap_or(usize::MAX), a.clone()));
        self
    }

    pub fn sum(&self, other: &MackeyExpr) -> MackeyExpr {
        assert_eq!(self.group, other.group, "sum over different groups");
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        MackeyExpr { group: self.group.clone(), atoms }.canonical_form()
    }

    /// Places this expression (over `group.sub(selection)`) into `group`.
    pub fn embed(&self, group: &GroupSpec, selection: PrimeSet, fill: Factor) -> MackeyExpr {
        let atoms = self.atoms.iter().map(|a| a.embed(group, selection, fill)).collect();
        MackeyExpr { group: group.clone(), atoms }.canonical_form()
    }

    /// `𝒦_{n,I}(self)` for an expression over `C_{|I|}`.
    pub fn k_induce(&self, group: &GroupSpec, selection: PrimeSet) -> MackeyExpr {
        self.embed(group, selection, Factor::ConstZ)
    }

    /// `𝒞_{n,I}(self)` for an expression over `C_{|I|}`.
    pub fn c_induce(&self, group: &GroupSpec, selection: PrimeSet) -> MackeyExpr {
        self.embed(group, selection, Factor::DualZ)
    }

    /// Drops the `𝒦_i⟨Z/p_i⟩` summands for every `i ∈ strip`.
    pub fn strip_k_torsion(&self, strip: PrimeSet) -> MackeyExpr {
        let atoms = self
            .atoms
            .iter()
            .filter(|a| a.as_k_torsion().is_none_or(|i| !strip.contains(i)))
            .cloned()
            .collect();
        MackeyExpr { group: self.group.clone(), atoms }
    }

    /// Levelwise value without building a table.
    pub fn value_at(&self, level: PrimeSet) -> FgAbelianGroup {
        self.atoms.iter().fold(FgAbelianGroup::zero(), |acc, a| acc.direct_sum(&a.value_at(level)))
    }

    /// Value at the top level `G/G`.
    pub fn top_value(&self) -> FgAbelianGroup {
        self.value_at(self.group.all())
    }
}

impl MackeyAtom {
    /// True when the atom has two brackets with coprime orders, or otherwise
    /// vanishes at every level.
    pub fn is_zero_everywhere(&self) -> bool {
        let mut orders: Vec<u64> = Vec::new();
        for f in &self.factors {
            if let Factor::Bracket(c) = f {
                orders.push(*c);
            }
        }
        let torsion: Vec<u64> = orders.iter().copied().filter(|&c| c != 0).collect();
        torsion.len() >= 2 && {
            let g = torsion.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
            g == 1
        }
    }
}

impl fmt::Display for MackeyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.label(self.group.primes())).collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}
