//! Cohomology of a point with Burnside coefficients, and more generally with
//! the box products `A_I ⊠ Z_J` that interpolate between `Z` and `A`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::mackey::{Factor, MackeyAtom, MackeyExpr};
use crate::repring::{nu, zeta, FixedDims, GroupSpec, PrimeSet, RepError, VirtualRep, ZeroPattern};
use crate::zcoeff::z_mackey;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AcoeffError {
    #[error("{0} is not a box of constant and Burnside factors")]
    UnsupportedCoefficient(String),
    #[error("{0} is not a prime of n")]
    NotAPrime(u64),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// The coefficient system `A_I ⊠ Z_J`, stored by its Burnside set `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffSystem {
    group: GroupSpec,
    burnside: PrimeSet,
}

impl CoeffSystem {
    pub fn new(group: &GroupSpec, burnside: PrimeSet) -> Self {
        CoeffSystem { group: group.clone(), burnside: burnside.intersect(group.all()) }
    }

    pub fn constant(group: &GroupSpec) -> Self {
        Self::new(group, PrimeSet::EMPTY)
    }

    pub fn full_burnside(group: &GroupSpec) -> Self {
        Self::new(group, group.all())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `I`.
    pub fn burnside(&self) -> PrimeSet {
        self.burnside
    }

    /// `J`, the complement of `I`.
    pub fn constant_part(&self) -> PrimeSet {
        self.group.all().minus(self.burnside)
    }

    pub fn atom(&self) -> MackeyAtom {
        MackeyAtom::burnside_split(&self.group, self.burnside)
    }

    /// Reads the system back from an atom of `Z` and `A` factors.
    pub fn from_atom(group: &GroupSpec, atom: &MackeyAtom) -> Option<Self> {
        let mut burnside = PrimeSet::EMPTY;
        for (i, f) in atom.factors().iter().enumerate() {
            match f {
                Factor::ConstZ => {}
                Factor::Burnside => burnside = burnside.with(i),
                _ => return None,
            }
        }
        Some(Self::new(group, burnside))
    }

    /// The restriction to the subgroup on the primes in `s`.
    pub fn restrict(&self, s: PrimeSet) -> CoeffSystem {
        let h = self.group.sub(s);
        CoeffSystem::new(&h, self.group.project(s, self.burnside))
    }
}

impl fmt::Display for CoeffSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.burnside.is_empty() {
            write!(f, "Z")
        } else if self.burnside == self.group.all() {
            write!(f, "A")
        } else {
            let ps: Vec<String> = self.burnside.indices().map(|i| self.group.primes()[i].to_string()).collect();
            write!(f, "A[{}]", ps.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MackeyValue {
    Known(MackeyExpr),
    /// The functor is not determined by the fixed dimensions.
    RepresentationDependent,
}

impl MackeyValue {
    pub fn known(&self) -> Option<&MackeyExpr> {
        match self {
            MackeyValue::Known(e) => Some(e),
            MackeyValue::RepresentationDependent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACohomologyAnswer {
    pub grading: VirtualRep,
    pub fixed_dims: FixedDims,
    pub coeff: CoeffSystem,
    pub group_at_top: FgAbelianGroup,
    pub mackey: MackeyValue,
    pub case: ZeroPattern,
}

/// The zero pattern of `α` over the subgroups `C_S` with `S ⊆ I`.
pub fn classify_over(fd: &FixedDims, burnside: PrimeSet) -> ZeroPattern {
    let mut any_zero = false;
    for s in burnside.subsets() {
        if fd.at(s) != 0 {
            continue;
        }
        any_zero = true;
        if burnside.minus(s).indices().any(|i| fd.at(s.with(i)) == 0) {
            return ZeroPattern::ManyZeros;
        }
    }
    if any_zero {
        ZeroPattern::MostlyNonZero
    } else {
        ZeroPattern::NonZero
    }
}

/// `H^α_G(S⁰; A_I ⊠ Z_J)` at `G/G` from the fixed dimensions.
pub fn a_group(fd: &FixedDims, burnside: PrimeSet) -> FgAbelianGroup {
    let g = fd.group();
    let mut orders = Vec::new();
    if fd.is_even() {
        let rank = burnside.subsets().filter(|&s| fd.at(s) == 0).count();
        for i in 0..g.k() {
            orders.extend(std::iter::repeat(g.primes()[i]).take(nu(fd, i, burnside)));
        }
        FgAbelianGroup::free(rank).direct_sum(&FgAbelianGroup::from_cyclic_orders(&orders))
    } else {
        for i in 0..g.k() {
            let count = burnside
                .without(i)
                .subsets()
                .filter(|&s| fd.at(s) < 0 && fd.at(s.with(i)) > 1)
                .count();
            orders.extend(std::iter::repeat(g.primes()[i]).take(count));
        }
        FgAbelianGroup::from_cyclic_orders(&orders)
    }
}

/// The value at level `G/C_m` (`m` given by its prime set): the answer for
/// the restricted grading and coefficients over `C_m`.
pub fn a_level_value(fd: &FixedDims, burnside: PrimeSet, level: PrimeSet) -> FgAbelianGroup {
    let g = fd.group();
    a_group(&fd.restrict(level), g.project(level, burnside.intersect(level)))
}

/// The Mackey functor, when the fixed dimensions determine it.
pub fn a_mackey(fd: &FixedDims, burnside: PrimeSet) -> (MackeyValue, ZeroPattern) {
    let g = fd.group();
    let case = classify_over(fd, burnside);
    if case == ZeroPattern::ManyZeros {
        return (MackeyValue::RepresentationDependent, case);
    }
    let mut total = MackeyExpr::zero(g);
    for s in burnside.subsets() {
        let rest = s.complement(g.k());
        let mut inner = z_mackey(&fd.quotient(s));
        if case == ZeroPattern::MostlyNonZero {
            let strip = zeta(fd, s).intersect(burnside);
            inner = inner.strip_k_torsion(g.project(rest, strip));
        }
        total = total.sum(&inner.embed(g, rest, Factor::Bracket(0)));
    }
    (MackeyValue::Known(total), case)
}

pub fn cohomology_a_group(alpha: &VirtualRep, coeff: &CoeffSystem) -> FgAbelianGroup {
    a_group(&alpha.fixed_dims(), coeff.burnside())
}

pub fn cohomology_a_mackey(alpha: &VirtualRep, coeff: &CoeffSystem) -> ACohomologyAnswer {
    let fd = alpha.fixed_dims();
    let (mackey, case) = a_mackey(&fd, coeff.burnside());
    ACohomologyAnswer {
        grading: alpha.clone(),
        group_at_top: a_group(&fd, coeff.burnside()),
        fixed_dims: fd,
        coeff: coeff.clone(),
        mackey,
        case,
    }
}

/// `H^α_G(S⁰; ⟨Z⟩_p ⊠ M) ≅ H^{α^{C_p}}_{C_{n/p}}(S⁰; M) ⊠ ⟨Z⟩_p` for `M` a
/// box of constant and Burnside factors over `C_{n/p}`.
pub fn bz_reduction(alpha: &VirtualRep, p: u64, inner: &MackeyExpr) -> Result<MackeyValue, AcoeffError> {
    let g = alpha.group();
    let i = g.index_of_prime(p).ok_or(AcoeffError::NotAPrime(p))?;
    let rest = PrimeSet::singleton(i).complement(g.k());
    let q = g.sub(rest);
    let unsupported = || AcoeffError::UnsupportedCoefficient(inner.to_string());
    if inner.group() != &q || inner.atoms().len() != 1 {
        return Err(unsupported());
    }
    let coeff = CoeffSystem::from_atom(&q, &inner.atoms()[0]).ok_or_else(unsupported)?;
    let quotient = alpha.quotient_fixed(p)?;
    Ok(match cohomology_a_mackey(&quotient, &coeff).mackey {
        MackeyValue::Known(e) => MackeyValue::Known(e.embed(g, rest, Factor::Bracket(0))),
        MackeyValue::RepresentationDependent => MackeyValue::RepresentationDependent,
    })
}
