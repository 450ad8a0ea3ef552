//! Even-type cell structures: the order `W ≪ V` on representations, the
//! even-type check for an attachment order, and the cells of complex
//! projective spaces and Grassmannians of the complete universe.

use serde::{Deserialize, Serialize};

use crate::repring::{FixedDims, GroupSpec, PrimeSet, VirtualRep};

/// A cell `G ×_{C_d} D(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub isotropy: u64,
    pub rep: VirtualRep,
}

impl CellSpec {
    /// Actual with every fixed dimension even.
    pub fn is_even(&self) -> bool {
        self.rep.is_actual() && self.rep.fixed_dims().values().iter().all(|d| d % 2 == 0)
    }
}

/// `W ≪ V` on fixed dimensions: wherever `|W^S| < |V^S|`, every `T ⊇ S`
/// has `|W^T| ≤ |V^T|`.
pub fn ll_dims(w: &FixedDims, v: &FixedDims) -> bool {
    let all = w.group().all();
    all.subsets().filter(|&s| w.at(s) < v.at(s)).all(|s| {
        all.minus(s).subsets().all(|extra| {
            let t = s.union(extra);
            w.at(t) <= v.at(t)
        })
    })
}

pub fn ll_compare(w: &VirtualRep, v: &VirtualRep) -> bool {
    ll_dims(&w.fixed_dims(), &v.fixed_dims())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub grading: VirtualRep,
    pub isotropy: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenTypeReport {
    /// Cells that are not even.
    pub odd_cells: Vec<usize>,
    /// Pairs `(i, j)`, `i` attached before `j`, with `W_i ≪ W_j` failing.
    pub offending_pairs: Vec<(usize, usize)>,
    /// One free generator per cell, present when the check passes.
    pub basis: Vec<BasisElement>,
}

impl EvenTypeReport {
    pub fn passes(&self) -> bool {
        self.odd_cells.is_empty() && self.offending_pairs.is_empty()
    }

    pub fn first_offence(&self) -> Option<(usize, usize)> {
        self.offending_pairs.first().copied()
    }
}

/// Even-type check where the order is tested on the supplied fixed
/// dimensions instead of those of the cell representations.
pub fn check_even_type_with(cells: &[CellSpec], dims: &[FixedDims]) -> EvenTypeReport {
    assert_eq!(cells.len(), dims.len());
    let odd_cells = cells
        .iter()
        .zip(dims)
        .enumerate()
        .filter(|(_, (c, d))| !c.is_even() || d.values().iter().any(|x| x % 2 != 0))
        .map(|(i, _)| i)
        .collect();
    let mut offending_pairs = Vec::new();
    for i in 0..dims.len() {
        for j in i + 1..dims.len() {
            if !ll_dims(&dims[i], &dims[j]) {
                offending_pairs.push((i, j));
            }
        }
    }
    let mut report = EvenTypeReport { odd_cells, offending_pairs, basis: Vec::new() };
    if report.passes() {
        report.basis =
            cells.iter().map(|c| BasisElement { grading: c.rep.clone(), isotropy: c.isotropy }).collect();
    }
    report
}

pub fn check_even_type(cells: &[CellSpec]) -> EvenTypeReport {
    let dims: Vec<FixedDims> = cells.iter().map(|c| c.rep.fixed_dims()).collect();
    check_even_type_with(cells, &dims)
}

/// `2⌊r/|C_S|⌋` summed over the given parameters.
fn floor_dims(group: &GroupSpec, params: &[u64]) -> FixedDims {
    FixedDims::from_fn(group, |s: PrimeSet| params.iter().map(|&a| 2 * (a / group.divisor(s)) as i64).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpCell {
    pub r: u64,
    pub cell: CellSpec,
    pub dims_direct: FixedDims,
    pub dims_floor: FixedDims,
}

/// Cells of `CP(𝒰(m_top))`: `W_r = ξ^{-1} ⊕ … ⊕ ξ^{-r}` with isotropy `G`.
pub fn cp_cells(group: &GroupSpec, m_top: u64) -> Vec<CpCell> {
    (0..=m_top)
        .map(|r| {
            let mut rep = VirtualRep::zero(group);
            for t in 1..=r {
                rep.add_xi(-(t as i64), 1);
            }
            let dims_direct = rep.fixed_dims();
            CpCell { r, cell: CellSpec { isotropy: group.n(), rep }, dims_direct, dims_floor: floor_dims(group, &[r]) }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannCell {
    pub symbol: Vec<u64>,
    pub cell: CellSpec,
    pub dims_direct: FixedDims,
    pub dims_floor: FixedDims,
    pub mismatch: bool,
}

/// All symbols `0 ≤ a_1 ≤ … ≤ a_m ≤ l - m`, in lexicographic order.
pub fn schubert_symbols(l: u64, m: u64) -> Vec<Vec<u64>> {
    assert!(1 <= m && m <= l, "need 1 <= m <= l");
    let top = l - m;
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for s in &out {
            let lo = s.last().copied().unwrap_or(0);
            for a in lo..=top {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// `W_a = ⊕_i ⊕_{j} ξ^{j - (a_i + i)}` over `1 ≤ j ≤ a_i + i - 1`,
/// `j ∉ {a_1 + 1, …, a_{i-1} + i - 1}`.
pub fn schubert_rep(group: &GroupSpec, symbol: &[u64]) -> VirtualRep {
    let mut rep = VirtualRep::zero(group);
    for (idx, &a) in symbol.iter().enumerate() {
        let i = idx as u64 + 1;
        let excluded: Vec<u64> = symbol[..idx].iter().enumerate().map(|(l, &al)| al + l as u64 + 1).collect();
        for j in 1..a + i {
            if !excluded.contains(&j) {
                rep.add_xi(j as i64 - (a + i) as i64, 1);
            }
        }
    }
    rep
}

/// Cells of `Gr_m(𝒰(l))` in attachment order: by total dimension, then
/// lexicographically by symbol.
pub fn grassmann_cells(group: &GroupSpec, l: u64, m: u64) -> Vec<GrassmannCell> {
    let mut cells: Vec<GrassmannCell> = schubert_symbols(l, m)
        .into_iter()
        .map(|symbol| {
            let rep = schubert_rep(group, &symbol);
            let dims_direct = rep.fixed_dims();
            let dims_floor = floor_dims(group, &symbol);
            let mismatch = dims_direct != dims_floor;
            GrassmannCell { symbol, cell: CellSpec { isotropy: group.n(), rep }, dims_direct, dims_floor, mismatch }
        })
        .collect();
    cells.sort_by(|a, b| a.dims_floor.total().cmp(&b.dims_floor.total()).then_with(|| a.symbol.cmp(&b.symbol)));
    cells
}

/// Even-type check of the Grassmannian cells on the floor-formula dimensions.
pub fn check_grassmann(cells: &[GrassmannCell]) -> EvenTypeReport {
    let specs: Vec<CellSpec> = cells.iter().map(|c| c.cell.clone()).collect();
    let dims: Vec<FixedDims> = cells.iter().map(|c| c.dims_floor.clone()).collect();
    check_even_type_with(&specs, &dims)
}

pub fn check_cp(cells: &[CpCell]) -> EvenTypeReport {
    let specs: Vec<CellSpec> = cells.iter().map(|c| c.cell.clone()).collect();
    check_even_type(&specs)
}
