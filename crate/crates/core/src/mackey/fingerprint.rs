use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbelianGroup, IntegerMatrix, Subquotient};
use crate::repring::PrimeSet;

use super::table::MackeyTable;
use super::MackeyError;

/// Kernel and cokernel of one restriction or transfer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapInvariant {
    pub transfer: bool,
    pub upper: u64,
    pub lower: u64,
    pub kernel: FgAbelianGroup,
    pub cokernel: FgAbelianGroup,
}

/// Isomorphism invariants of a table: the levelwise groups together with
/// kernel and cokernel of every `res^a_b` and `tr^b_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFingerprint {
    pub values: Vec<(u64, FgAbelianGroup)>,
    pub maps: Vec<MapInvariant>,
}

/// Kernel and cokernel of the map given by `m` from level `from` to level `to`.
pub fn map_kernel_cokernel(
    t: &MackeyTable,
    m: &IntegerMatrix,
    from: PrimeSet,
    to: PrimeSet,
) -> Result<(FgAbelianGroup, FgAbelianGroup), MackeyError> {
    let (src, dst) = (t.level(from), t.level(to));
    if src.generators == 0 {
        return Ok((FgAbelianGroup::zero(), dst.group.clone()));
    }
    if dst.generators == 0 {
        return Ok((src.group.clone(), FgAbelianGroup::zero()));
    }
    let kernel = Subquotient::new(src.generators, Some((m, &dst.relations)), &src.relations)?.group().clone();
    let span = if dst.relations.cols() == 0 { m.clone() } else { m.hstack(&dst.relations) };
    let cokernel = FgAbelianGroup::presented_by(dst.generators, &span)?;
    Ok((kernel, cokernel))
}

pub fn fingerprint(t: &MackeyTable) -> Result<TableFingerprint, MackeyError> {
    let g = t.group();
    let mut maps = Vec::new();
    for a in g.masks_by_divisor() {
        for b in a.subsets().filter(|&b| b != a) {
            let (kernel, cokernel) = map_kernel_cokernel(t, &t.res(a, b), a, b)?;
            maps.push(MapInvariant { transfer: false, upper: g.divisor(a), lower: g.divisor(b), kernel, cokernel });
            let (kernel, cokernel) = map_kernel_cokernel(t, &t.tr(b, a), b, a)?;
            maps.push(MapInvariant { transfer: true, upper: g.divisor(a), lower: g.divisor(b), kernel, cokernel });
        }
    }
    Ok(TableFingerprint { values: t.values_by_divisor(), maps })
}

/// Compares two tables over the same group by their fingerprints.
pub fn tables_match(a: &MackeyTable, b: &MackeyTable) -> Result<bool, MackeyError> {
    if a.group() != b.group() {
        return Ok(false);
    }
    Ok(fingerprint(a)? == fingerprint(b)?)
}
