//! Cohomology of a point with constant `Z` coefficients in every grading,
//! as a group at `G/G` and as a Mackey functor.

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::acoeff::{cohomology_a_mackey, CoeffSystem, MackeyValue};
use crate::mackey::{MackeyAtom, MackeyExpr};
use crate::repring::{j_vector, m_alpha, FixedDims, PrimeSet, RepError, VirtualRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZcoeffError {
    #[error("{0} is not an actual representation")]
    NotActual(String),
    #[error("the splitting needs a proper divisor, got {0}")]
    NotProper(u64),
    #[error("the inner answer over C_{0} depends on the representation")]
    RepresentationDependent(u64),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyAnswer {
    pub grading: VirtualRep,
    pub fixed_dims: FixedDims,
    pub group_at_top: FgAbelianGroup,
    pub mackey: MackeyExpr,
}

/// Primes `i` whose torsion summand `𝒦_i⟨Z/p_i⟩` appears.
fn torsion_primes(fd: &FixedDims) -> Option<PrimeSet> {
    let g = fd.group();
    let total = fd.total();
    let pick = |f: &dyn Fn(i64) -> bool| {
        PrimeSet::from_indices(&(0..g.k()).filter(|&i| f(fd.at_prime(i))).collect::<Vec<_>>())
    };
    if total > 0 && total % 2 == 0 {
        Some(pick(&|v| v <= 0))
    } else if total < 0 && total.rem_euclid(2) == 1 {
        Some(pick(&|v| v > 1))
    } else {
        None
    }
}

/// The Mackey functor `H^α_G(S⁰; Z)` from the fixed dimensions alone.
pub fn z_mackey(fd: &FixedDims) -> MackeyExpr {
    let g = fd.group();
    if fd.total() == 0 {
        return MackeyExpr::atom(g, MackeyAtom::z_j(g, j_vector(fd)));
    }
    match torsion_primes(fd) {
        Some(t) => MackeyExpr::from_atoms(g, t.indices().map(|i| MackeyAtom::k_torsion(g, i)).collect()),
        None => MackeyExpr::zero(g),
    }
}

/// The group `H^α_G(S⁰; Z)`: `Z`, `Z/m(α)` or `0`.
pub fn z_group(fd: &FixedDims) -> FgAbelianGroup {
    if fd.total() == 0 {
        return FgAbelianGroup::free(1);
    }
    match torsion_primes(fd) {
        Some(_) => FgAbelianGroup::cyclic(m_alpha(fd)),
        None => FgAbelianGroup::zero(),
    }
}

pub fn cohomology_z(alpha: &VirtualRep) -> CohomologyAnswer {
    let fd = alpha.fixed_dims();
    CohomologyAnswer { grading: alpha.clone(), group_at_top: z_group(&fd), mackey: z_mackey(&fd), fixed_dims: fd }
}

/// `H̃_m(S^V; Z)`, which is the cohomology of a point in grading `V - m`.
pub fn homology_of_rep_sphere(v: &VirtualRep, m: i64) -> Result<CohomologyAnswer, ZcoeffError> {
    if !v.is_actual() {
        return Err(ZcoeffError::NotActual(v.to_string()));
    }
    Ok(cohomology_z(&(v - &VirtualRep::trivial(v.group(), m))))
}

/// `3 - ξ - α`.
pub fn duality_partner(alpha: &VirtualRep) -> VirtualRep {
    let g = alpha.group();
    let shift = VirtualRep::from_terms(g, 3, &[(1, -1)]);
    &shift - alpha
}

/// The two summands of `H^α_G(S(ξ^d)_+)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    /// `𝒞_{n,d}(H^{α-1}_{C_d})`.
    pub c_part: MackeyExpr,
    /// `𝒦_{n,d}(H^α_{C_d})`.
    pub k_part: MackeyExpr,
}

impl Splitting {
    pub fn total(&self) -> MackeyExpr {
        self.c_part.sum(&self.k_part)
    }
}

/// Splits the cohomology of the unit sphere `S(ξ^d)_+` into the parts
/// induced from the cohomology of `C_d` in gradings `α - 1` and `α`.
pub fn sphere_boundary_splitting(
    alpha: &VirtualRep,
    d: u64,
    coeff: &CoeffSystem,
) -> Result<Splitting, ZcoeffError> {
    let g = alpha.group();
    let dmask = g.mask_of(d).ok_or(RepError::NotADivisor(d, g.n()))?;
    if d == g.n() {
        return Err(ZcoeffError::NotProper(d));
    }
    let inner_group = g.sub(dmask);
    let inner_coeff = CoeffSystem::new(&inner_group, g.project(dmask, coeff.burnside()));
    let restricted = alpha.restrict(d)?;
    let lowered = &restricted - &VirtualRep::trivial(&inner_group, 1);
    let inner = |a: &VirtualRep| -> Result<MackeyExpr, ZcoeffError> {
        match cohomology_a_mackey(a, &inner_coeff).mackey {
            MackeyValue::Known(e) => Ok(e),
            MackeyValue::RepresentationDependent => Err(ZcoeffError::RepresentationDependent(d)),
        }
    };
    Ok(Splitting {
        c_part: inner(&lowered)?.c_induce(g, dmask),
        k_part: inner(&restricted)?.k_induce(g, dmask),
    })
}
