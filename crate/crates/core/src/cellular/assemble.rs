use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::abelian::{IntegerMatrix, Subquotient};
use crate::mackey::{check_axioms, Level, MackeyTable};

use super::complex::{locate_pair, EquivChainComplex, ProductOrigin};
use super::evaluate::{block_add, evaluate_top, offsets, MapCache, Variance};
use super::CellularError;

struct LevelData {
    complex: EquivChainComplex,
    origins: Vec<Vec<ProductOrigin>>,
    sub: Option<Subquotient>,
}

/// Chain map in degree `k` induced by the projection
/// `X × G/C_m → X × G/C_{m'}`: transfer-type (`lower → upper`) or
/// restriction-type (`upper → lower`). With `shift` the target is the same
/// level translated by the Weyl generator instead.
fn cover_chain_map(
    cache: &mut MapCache<'_>,
    base: &EquivChainComplex,
    lower: &LevelData,
    upper: &LevelData,
    m_upper: u64,
    k: usize,
    shift: u64,
    transfer: bool,
) -> IntegerMatrix {
    let n = base.group().n();
    let (lo_cells, hi_cells) = (lower.complex.cells(k), upper.complex.cells(k));
    let (lo_off, lo_total) = offsets(cache, lo_cells);
    let (hi_off, hi_total) = offsets(cache, hi_cells);
    let index: BTreeMap<(usize, u64), usize> =
        upper.origins[k].iter().enumerate().map(|(pos, o)| ((o.left, o.orbit), pos)).collect();
    let mut out =
        if transfer { IntegerMatrix::zeros(hi_total, lo_total) } else { IntegerMatrix::zeros(lo_total, hi_total) };
    for (pos, o) in lower.origins[k].iter().enumerate() {
        let g = lo_cells[pos];
        let a = base.cells(k)[o.left];
        let (s2, _) = locate_pair(n, a, m_upper, o.orbit, shift);
        let target = index[&(o.left, s2)];
        let g2 = hi_cells[target];
        if transfer {
            let m = cache.tr(g, g2).clone();
            block_add(&mut out, hi_off[target], lo_off[pos], &m, 1);
        } else {
            let m = cache.res(g2, g).clone();
            block_add(&mut out, lo_off[pos], hi_off[target], &m, 1);
        }
    }
    out
}

/// The map on (co)homology induced by a chain map, in generator coordinates.
fn induced(chain: &IntegerMatrix, from: Option<&Subquotient>, to: Option<&Subquotient>) -> Result<IntegerMatrix, CellularError> {
    let rows = to.map_or(0, Subquotient::num_generators);
    let cols = from.map_or(0, Subquotient::num_generators);
    let mut out = IntegerMatrix::zeros(rows, cols);
    let (Some(from), Some(to)) = (from, to) else { return Ok(out) };
    for c in 0..cols {
        let image = chain.mul_vec(&from.generator(c));
        for (r, v) in to.coords(&image)?.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// The Mackey functor `m ↦ H̃_k(X ∧ G/C_m₊; M)` (or cohomology), with
/// restrictions and transfers induced by the projections `G/C_m → G/C_{m'}`.
/// Fails when the Weyl action is nontrivial or the result violates the
/// Mackey axioms.
pub fn mackey_assemble(
    complex: &EquivChainComplex,
    k: usize,
    coeff: &MackeyTable,
    variance: Variance,
) -> Result<MackeyTable, CellularError> {
    let g = complex.group().clone();
    let mut cache = MapCache::new(coeff);
    let mut data: Vec<LevelData> = Vec::with_capacity(g.num_divisors());
    for s in g.all().subsets() {
        let m = g.divisor(s);
        let (c, origins) = complex.tensor_with_origins(&EquivChainComplex::orbit(&g, m));
        let sub = evaluate_top(&c, coeff, m, variance)?.subquotient(k)?;
        data.push(LevelData { complex: c, origins, sub });
    }
    let mut levels = Vec::with_capacity(data.len());
    let conj = BTreeMap::new();
    for s in g.all().subsets() {
        let m = g.divisor(s);
        let d = &data[s.0 as usize];
        if k <= d.complex.top_degree() {
            let w = cover_chain_map(&mut cache, complex, d, d, m, k, 1, true);
            let action = induced(&w, d.sub.as_ref(), d.sub.as_ref())?;
            let orders = d.sub.as_ref().map(Subquotient::orders).unwrap_or_default();
            let identity = (0..orders.len()).all(|c| {
                (0..orders.len()).all(|r| {
                    let want = BigInt::from(u8::from(r == c));
                    let diff = action.get(r, c) - want;
                    if orders[r] == BigInt::from(0) {
                        diff == BigInt::from(0)
                    } else {
                        diff.mod_floor(&orders[r]) == BigInt::from(0)
                    }
                })
            });
            if !identity {
                return Err(CellularError::WeylActionNontrivial(m));
            }
        }
        let orders = d.sub.as_ref().map(Subquotient::orders).unwrap_or_default();
        let torsion: Vec<BigInt> = orders.iter().filter(|o| **o != BigInt::from(0)).cloned().collect();
        let free = orders.len() - torsion.len();
        let mut rel = IntegerMatrix::zeros(orders.len(), torsion.len());
        for (j, o) in torsion.iter().enumerate() {
            rel.set(free + j, j, o.clone());
        }
        levels.push(Level::new(orders.len(), rel)?);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (s, i) in crate::mackey::covers(&g) {
        let hi = s.with(i);
        let m_hi = g.divisor(hi);
        let (lo_d, hi_d) = (&data[s.0 as usize], &data[hi.0 as usize]);
        if k > lo_d.complex.top_degree() {
            res.insert((s, i), IntegerMatrix::zeros(levels[s.0 as usize].generators, levels[hi.0 as usize].generators));
            tr.insert((s, i), IntegerMatrix::zeros(levels[hi.0 as usize].generators, levels[s.0 as usize].generators));
            continue;
        }
        let t_chain = cover_chain_map(&mut cache, complex, lo_d, hi_d, m_hi, k, 0, true);
        let r_chain = cover_chain_map(&mut cache, complex, lo_d, hi_d, m_hi, k, 0, false);
        tr.insert((s, i), induced(&t_chain, lo_d.sub.as_ref(), hi_d.sub.as_ref())?);
        res.insert((s, i), induced(&r_chain, hi_d.sub.as_ref(), lo_d.sub.as_ref())?);
    }
    let table = MackeyTable::new(&g, levels, res, tr, conj)?;
    let report = check_axioms(&table, false);
    if !report.is_ok() {
        return Err(CellularError::AxiomFailure(format!("{:?}", report.violations)));
    }
    Ok(table)
}
