use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbelianGroup, IntegerMatrix};
use crate::repring::GroupSpec;

use super::expr::{MackeyAtom, MackeyExpr};
use super::fingerprint::tables_match;
use super::table::{concretize, covers, Level, MackeyTable};
use super::MackeyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub n: u64,
    /// `(divisor, cokernel of ι, value of the torsion sum)` per level.
    pub levels: Vec<(u64, FgAbelianGroup, FgAbelianGroup)>,
    pub failed_levels: Vec<u64>,
    /// Whether restrictions and transfers of the cokernel match as well.
    pub maps_match: bool,
}

impl ExactnessReport {
    pub fn is_ok(&self) -> bool {
        self.failed_levels.is_empty() && self.maps_match
    }
}

/// The cokernel of `ι: Z* → Z`, which is multiplication by `m` at level `m`.
pub fn iota_cokernel(group: &GroupSpec) -> Result<MackeyTable, MackeyError> {
    let one = |v: u64| IntegerMatrix::from_rows(&[vec![BigInt::from(v)]]);
    let mut levels = Vec::new();
    for m in 0..group.num_divisors() {
        let d = group.divisor(crate::repring::PrimeSet(m as u32));
        levels.push(Level::new(1, one(d))?);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (s, i) in covers(group) {
        res.insert((s, i), one(1));
        tr.insert((s, i), one(group.primes()[i]));
    }
    MackeyTable::new(group, levels, res, tr, BTreeMap::new())
}

/// Checks `0 → Z* → Z → ⊕_i 𝒦_i⟨Z/p_i⟩ → 0` levelwise and on maps.
pub fn exactness_witness(group: &GroupSpec) -> Result<ExactnessReport, MackeyError> {
    let coker = iota_cokernel(group)?;
    let sum = MackeyExpr::from_atoms(group, (0..group.k()).map(|i| MackeyAtom::k_torsion(group, i)).collect());
    let expected = concretize(&sum);
    let mut levels = Vec::new();
    let mut failed_levels = Vec::new();
    for s in group.masks_by_divisor() {
        let (a, b) = (coker.value(s).clone(), expected.value(s).clone());
        if a != b {
            failed_levels.push(group.divisor(s));
        }
        levels.push((group.divisor(s), a, b));
    }
    let maps_match = tables_match(&coker, &expected)?;
    Ok(ExactnessReport { n: group.n(), levels, failed_levels, maps_match })
}
