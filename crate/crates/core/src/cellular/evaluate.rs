use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbelianGroup, IntegerMatrix, Subquotient};
use crate::mackey::MackeyTable;
use crate::repring::PrimeSet;

use super::complex::EquivChainComplex;
use super::CellularError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    Homology,
    Cohomology,
}

/// A complex of presented abelian groups at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluatedComplex {
    pub level: u64,
    pub variance: Variance,
    /// Generators of the chain group in each degree.
    pub generators: Vec<usize>,
    /// Relations of the chain group in each degree (columns).
    pub relations: Vec<IntegerMatrix>,
    /// Homology: `differentials[q]: C_q → C_{q-1}`. Cohomology:
    /// `differentials[q]: C^{q-1} → C^q`. Entry 0 is the empty map.
    pub differentials: Vec<IntegerMatrix>,
}

/// Restriction and transfer matrices of a table, cached per pair of levels.
pub(crate) struct MapCache<'a> {
    table: &'a MackeyTable,
    res: HashMap<(u32, u32), IntegerMatrix>,
    tr: HashMap<(u32, u32), IntegerMatrix>,
}

impl<'a> MapCache<'a> {
    pub(crate) fn new(table: &'a MackeyTable) -> Self {
        MapCache { table, res: HashMap::new(), tr: HashMap::new() }
    }

    pub(crate) fn mask(&self, d: u64) -> PrimeSet {
        self.table.group().mask_of(d).expect("isotropy divides n")
    }

    /// `res^{upper}_{lower}` for divisors `lower | upper`.
    pub(crate) fn res(&mut self, upper: u64, lower: u64) -> &IntegerMatrix {
        let (a, b) = (self.mask(upper), self.mask(lower));
        let t = self.table;
        self.res.entry((a.0, b.0)).or_insert_with(|| t.res(a, b))
    }

    /// `tr^{upper}_{lower}`.
    pub(crate) fn tr(&mut self, lower: u64, upper: u64) -> &IntegerMatrix {
        let (a, b) = (self.mask(upper), self.mask(lower));
        let t = self.table;
        self.tr.entry((a.0, b.0)).or_insert_with(|| t.tr(b, a))
    }

    pub(crate) fn generators(&self, d: u64) -> usize {
        self.table.level(self.mask(d)).generators
    }

    pub(crate) fn relations(&self, d: u64) -> &IntegerMatrix {
        &self.table.level(self.mask(d)).relations
    }
}

pub(crate) fn offsets(cache: &MapCache<'_>, cells: &[u64]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(cells.len());
    let mut total = 0;
    for &d in cells {
        off.push(total);
        total += cache.generators(d);
    }
    (off, total)
}

pub(crate) fn block_add(target: &mut IntegerMatrix, r0: usize, c0: usize, block: &IntegerMatrix, k: i64) {
    if k == 0 {
        return;
    }
    let k = BigInt::from(k);
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !num_traits::Zero::is_zero(v) {
                target.add_to(r0 + r, c0 + c, &(v * &k));
            }
        }
    }
}

/// Evaluates a complex whose cells are already orbits of `X × G/C_m` by
/// sending `G/C_g` to `M(G/C_g)` and a `G`-map to a transfer (homology) or
/// restriction (cohomology).
pub(crate) fn evaluate_top(
    complex: &EquivChainComplex,
    coeff: &MackeyTable,
    level: u64,
    variance: Variance,
) -> Result<EvaluatedComplex, CellularError> {
    if !coeff.conjugation_trivial() {
        return Err(CellularError::ConjugationNontrivial);
    }
    let mut cache = MapCache::new(coeff);
    let top = complex.top_degree();
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut offs = Vec::new();
    for q in 0..=top {
        let cells = complex.cells(q);
        let (off, total) = offsets(&cache, cells);
        let mut rel = IntegerMatrix::zeros(total, 0);
        for (i, &d) in cells.iter().enumerate() {
            let r = cache.relations(d);
            if r.cols() > 0 {
                let mut block = IntegerMatrix::zeros(total, r.cols());
                block_add(&mut block, off[i], 0, r, 1);
                rel = rel.hstack(&block);
            }
        }
        generators.push(total);
        relations.push(rel);
        offs.push(off);
    }
    let mut differentials = vec![IntegerMatrix::zeros(0, generators[0])];
    for q in 1..=top {
        let (src, dst) = (complex.cells(q), complex.cells(q - 1));
        let mut d = match variance {
            Variance::Homology => IntegerMatrix::zeros(generators[q - 1], generators[q]),
            Variance::Cohomology => IntegerMatrix::zeros(generators[q], generators[q - 1]),
        };
        if let Some(entries) = complex.boundary(q) {
            for (&(y, x), combo) in entries {
                let k = combo.augmentation();
                if k == 0 {
                    continue;
                }
                match variance {
                    Variance::Homology => {
                        let m = cache.tr(src[x], dst[y]).clone();
                        block_add(&mut d, offs[q - 1][y], offs[q][x], &m, k);
                    }
                    Variance::Cohomology => {
                        let m = cache.res(dst[y], src[x]).clone();
                        block_add(&mut d, offs[q][x], offs[q - 1][y], &m, k);
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(EvaluatedComplex { level, variance, generators, relations, differentials })
}

impl EvaluatedComplex {
    pub fn top_degree(&self) -> usize {
        self.generators.len() - 1
    }

    fn empty_rel(rows: usize) -> IntegerMatrix {
        IntegerMatrix::zeros(rows, 0)
    }

    /// The subquotient computing (co)homology in degree `q`.
    pub fn subquotient(&self, q: usize) -> Result<Option<Subquotient>, CellularError> {
        if q > self.top_degree() {
            return Ok(None);
        }
        let g = self.generators[q];
        let (d_in, d_out, rel_out) = match self.variance {
            Variance::Homology => {
                let d_in = self.differentials.get(q + 1).cloned().unwrap_or_else(|| IntegerMatrix::zeros(g, 0));
                let (d_out, rel_out) = if q == 0 {
                    (IntegerMatrix::zeros(0, g), Self::empty_rel(0))
                } else {
                    (self.differentials[q].clone(), self.relations[q - 1].clone())
                };
                (d_in, d_out, rel_out)
            }
            Variance::Cohomology => {
                let d_in = if q == 0 { IntegerMatrix::zeros(g, 0) } else { self.differentials[q].clone() };
                let (d_out, rel_out) = match self.differentials.get(q + 1) {
                    Some(d) => (d.clone(), self.relations[q + 1].clone()),
                    None => (IntegerMatrix::zeros(0, g), Self::empty_rel(0)),
                };
                (d_in, d_out, rel_out)
            }
        };
        let composite = &d_out * &d_in;
        if !crate::abelian::columns_in_span(&composite, &rel_out) {
            return Err(CellularError::NotAComplex(self.level));
        }
        let rel_here = &self.relations[q];
        let boundaries = if rel_here.cols() == 0 { d_in } else { d_in.hstack(rel_here) };
        Ok(Some(Subquotient::new(g, Some((&d_out, &rel_out)), &boundaries)?))
    }

    pub fn group(&self, q: usize) -> Result<FgAbelianGroup, CellularError> {
        Ok(self.subquotient(q)?.map(|s| s.group().clone()).unwrap_or_else(FgAbelianGroup::zero))
    }

    /// Ranks of the chain groups after tensoring with `Q`.
    pub fn chain_ranks(&self) -> Vec<usize> {
        self.generators
            .iter()
            .zip(&self.relations)
            .map(|(&g, r)| g - crate::abelian::smith_decompose(r).rank())
            .collect()
    }
}
