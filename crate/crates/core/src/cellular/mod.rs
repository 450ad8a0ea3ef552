//! A brute-force oracle: equivariant cellular chains of representation
//! spheres `S^V`, evaluated in any Mackey functor coefficients and reduced
//! by Smith normal form, with no input from the closed-form engines.
//!
//! `S^{ξ^r}` has one fixed `0`-cell and orbits `G/C_d` of `1`- and `2`-cells,
//! `d = gcd(r, n)`, with boundaries the projection and `ρ^t - 1`. Sums of
//! representations become tensor products with the diagonal action.

mod assemble;
mod complex;
mod evaluate;

pub use assemble::mackey_assemble;
pub use complex::{locate_pair, Entries, EquivChainComplex, GMapCombo, ProductOrigin};
pub use evaluate::{EvaluatedComplex, Variance};

use crate::abelian::{AbelianError, FgAbelianGroup};
use crate::mackey::{MackeyError, MackeyTable};
use crate::repring::{GroupSpec, VirtualRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellularError {
    #[error("exponent {0} is not in 1..n")]
    InvalidExponent(u64),
    #[error("{0} is not an actual representation")]
    NotActual(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("coefficients with nontrivial conjugation are not supported")]
    ConjugationNontrivial,
    #[error("the Weyl group acts nontrivially on homology at level {0}")]
    WeylActionNontrivial(u64),
    #[error("differentials do not compose to zero at level {0}")]
    NotAComplex(u64),
    #[error("assembled table violates the Mackey axioms: {0}")]
    AxiomFailure(String),
    #[error("{0} does not divide n")]
    NotADivisor(u64),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
}

/// The reduced complex of `S^V`, `V = ξ^{r_1} ⊕ … ⊕ ξ^{r_m}`, reduced by
/// cancelling invertible boundary entries.
pub fn sphere_complex(group: &GroupSpec, exponents: &[u64]) -> Result<EquivChainComplex, CellularError> {
    let mut c = EquivChainComplex::orbit(group, group.n());
    for &r in exponents {
        c = c.tensor(&EquivChainComplex::circle(group, r)?).reduced();
    }
    Ok(c)
}

/// The same without any cancellation.
pub fn sphere_complex_unreduced(group: &GroupSpec, exponents: &[u64]) -> Result<EquivChainComplex, CellularError> {
    let mut c = EquivChainComplex::orbit(group, group.n());
    for &r in exponents {
        c = c.tensor(&EquivChainComplex::circle(group, r)?);
    }
    Ok(c)
}

/// Exponent list of an actual representation (each `ξ^r` repeated by its
/// multiplicity) and its trivial part.
pub fn exponents_of(v: &VirtualRep) -> Result<(Vec<u64>, usize), CellularError> {
    if !v.is_actual() {
        return Err(CellularError::NotActual(v.to_string()));
    }
    let mut out = Vec::new();
    for (&r, &c) in v.coeffs() {
        out.extend(std::iter::repeat(r).take(c as usize));
    }
    Ok((out, v.trivial_part() as usize))
}

/// The reduced complex of `S^V` for an actual representation.
pub fn sphere_complex_of(v: &VirtualRep) -> Result<EquivChainComplex, CellularError> {
    let (exps, shift) = exponents_of(v)?;
    Ok(sphere_complex(v.group(), &exps)?.shifted(shift))
}

/// The complex of `S^V × G/C_m`, reduced again, evaluated in `coeff`.
pub fn evaluate(
    complex: &EquivChainComplex,
    coeff: &MackeyTable,
    level: u64,
    variance: Variance,
) -> Result<EvaluatedComplex, CellularError> {
    let g = complex.group();
    if g.n() % level != 0 {
        return Err(CellularError::NotADivisor(level));
    }
    let at_level = complex.tensor(&EquivChainComplex::orbit(g, level)).reduced();
    evaluate::evaluate_top(&at_level, coeff, level, variance)
}

/// (Co)homology in every degree `0..=top + 1` at one level.
pub fn homology_all(
    complex: &EquivChainComplex,
    coeff: &MackeyTable,
    level: u64,
    variance: Variance,
) -> Result<Vec<FgAbelianGroup>, CellularError> {
    let ev = evaluate(complex, coeff, level, variance)?;
    let mut out = Vec::new();
    for q in 0..=complex.top_degree() + 1 {
        out.push(ev.group(q)?);
    }
    Ok(out)
}

/// `H̃_k(S^V ∧ G/C_m₊; M)`.
pub fn bredon_homology(v: &VirtualRep, k: usize, coeff: &MackeyTable, m: u64) -> Result<FgAbelianGroup, CellularError> {
    evaluate(&sphere_complex_of(v)?, coeff, m, Variance::Homology)?.group(k)
}

/// `H̃^k(S^V ∧ G/C_m₊; M)`.
pub fn bredon_cohomology(
    v: &VirtualRep,
    k: usize,
    coeff: &MackeyTable,
    m: u64,
) -> Result<FgAbelianGroup, CellularError> {
    evaluate(&sphere_complex_of(v)?, coeff, m, Variance::Cohomology)?.group(k)
}
